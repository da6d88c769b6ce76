// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "defisect/analytics.hpp"
#include "defisect/error.hpp"
#include "defisect/incident.hpp"

using namespace defisect;

namespace {

IncidentRecord base_record(std::string id, const char* date, ProtocolType type,
                           std::int64_t loss_cents) {
    IncidentRecord r;
    r.id = std::move(id);
    r.chain = Chain::Ethereum;
    r.date = parse_date(date);
    r.taxonomy = {{Layer::SC, "Untrusted or unsafe calls", "Reentrancy"}};
    r.protocol_type = type;
    r.loss_cents = loss_cents;
    r.audit_status = AuditStatus::NotAudited;
    return r;
}

IncidentRecord timed_record(std::string id, std::uint64_t deploy_ts, std::uint64_t first_ts,
                            std::uint64_t last_ts) {
    auto r = base_record(std::move(id), "2021-05-01", ProtocolType::other, 0);
    r.deploy_tx = "d";
    r.first_malicious_tx = "f";
    r.last_malicious_tx = "l";
    r.tx_timestamps = {{"d", deploy_ts}, {"f", first_ts}, {"l", last_ts}};
    return r;
}

}  // namespace

TEST_CASE("rounding helper") {
    CHECK(round2(4.085) == doctest::Approx(4.09));
    CHECK(round2(15.4929) == doctest::Approx(15.49));
    CHECK(round2(-0.005) == doctest::Approx(-0.01));
    CHECK(round2(2.0) == 2.0);
}

TEST_CASE("monthly aggregation") {
    std::vector<IncidentRecord> dataset{
        base_record("a", "2021-01-05", ProtocolType::yield, 10000),
        base_record("b", "2021-01-30", ProtocolType::dex, 5000),
        base_record("c", "2021-03-14", ProtocolType::yield, 2000),
    };

    const auto months = monthly_stats(dataset);
    REQUIRE(months.size() == 3);
    CHECK(months[0].year == 2021);
    CHECK(months[0].month == 1);
    CHECK(months[0].incident_count == 2);
    CHECK(months[0].total_loss_cents == 15000);
    CHECK(months[1].month == 2);  // zero-filled gap
    CHECK(months[1].incident_count == 0);
    CHECK(months[1].total_loss_cents == 0);
    CHECK(months[2].month == 3);
    CHECK(months[2].incident_count == 1);

    SUBCASE("gap spanning a year boundary") {
        dataset.push_back(base_record("d", "2020-11-20", ProtocolType::dao, 100));
        const auto spanned = monthly_stats(dataset);
        REQUIRE(spanned.size() == 5);  // 2020-11 .. 2021-03
        CHECK(spanned[0].year == 2020);
        CHECK(spanned[0].month == 11);
        CHECK(spanned[1].month == 12);
        CHECK(spanned[1].incident_count == 0);
        CHECK(spanned[2].year == 2021);
        CHECK(spanned[2].month == 1);

        std::size_t total = 0;
        for (const auto& m : spanned) total += m.incident_count;
        CHECK(total == dataset.size());
    }
    SUBCASE("empty dataset") {
        try {
            static_cast<void>(monthly_stats({}));
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == errc::empty_dataset);
        }
    }
}

TEST_CASE("protocol type breakdown") {
    auto multi = base_record("a", "2021-01-05", ProtocolType::yield, 500000);
    multi.taxonomy.push_back({Layer::PRO, "Unsafe dependency", "On-chain oracle manipulation"});
    const std::vector<IncidentRecord> dataset{
        multi,
        base_record("b", "2021-02-05", ProtocolType::yield, 300000),
        base_record("c", "2021-03-05", ProtocolType::lending, 200000),
        base_record("d", "2021-04-05", ProtocolType::dex, 0),
    };

    const auto stats = protocol_type_stats(dataset);
    REQUIRE(stats.size() == 10);  // every type has a row

    const auto& yield = stats[static_cast<int>(ProtocolType::yield)];
    CHECK(yield.count == 2);
    CHECK(yield.loss_cents == 800000);
    CHECK(yield.pct_loss == doctest::Approx(80.0));
    CHECK(yield.pct_count == doctest::Approx(50.0));
    CHECK(yield.layer_pct[static_cast<int>(Layer::SC)] == doctest::Approx(100.0));
    CHECK(yield.layer_pct[static_cast<int>(Layer::PRO)] == doctest::Approx(50.0));
    CHECK(yield.layer_pct[static_cast<int>(Layer::NET)] == 0.0);

    const auto& lending = stats[static_cast<int>(ProtocolType::lending)];
    CHECK(lending.pct_loss == doctest::Approx(20.0));
    CHECK(lending.pct_count == doctest::Approx(25.0));

    const auto& dex = stats[static_cast<int>(ProtocolType::dex)];
    CHECK(dex.count == 1);
    CHECK(dex.pct_loss == 0.0);

    const auto& insurance = stats[static_cast<int>(ProtocolType::insurance)];
    CHECK(insurance.count == 0);
    CHECK(insurance.pct_loss == 0.0);
    CHECK(insurance.pct_count == 0.0);

    double pct_sum = 0.0;
    for (const auto& s : stats) pct_sum += s.pct_count;
    CHECK(pct_sum == doctest::Approx(100.0));
}

TEST_CASE("audit effectiveness") {
    const auto r = audit_effectiveness(563, 23, 213, 33);
    CHECK(round2(r.audited_rate_pct) == doctest::Approx(4.09));
    CHECK(round2(r.unaudited_rate_pct) == doctest::Approx(15.49));
    REQUIRE(r.ratio.has_value());
    CHECK(*r.ratio == doctest::Approx(15.49295774647887 / 4.085257548845471).epsilon(1e-9));

    SUBCASE("zero audited attacks leave the ratio undefined") {
        const auto clean = audit_effectiveness(10, 0, 10, 5);
        CHECK(clean.audited_rate_pct == 0.0);
        CHECK_FALSE(clean.ratio.has_value());
    }
    SUBCASE("count validation") {
        CHECK_THROWS_AS(static_cast<void>(audit_effectiveness(0, 0, 10, 5)), Error);
        CHECK_THROWS_AS(static_cast<void>(audit_effectiveness(10, 11, 10, 5)), Error);
        CHECK_THROWS_AS(static_cast<void>(audit_effectiveness(10, 5, 10, 11)), Error);
        try {
            static_cast<void>(audit_effectiveness(10, 5, 0, 0));
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == errc::invalid_counts);
        }
    }
}

TEST_CASE("pause reaction buckets") {
    constexpr std::uint64_t kHour = 3600;
    std::vector<IncidentRecord> dataset;
    auto paused = [&](std::uint64_t delay) {
        auto r = base_record("p" + std::to_string(dataset.size()), "2021-05-01",
                             ProtocolType::other, 0);
        r.supports_pause = true;
        r.pause_delay_seconds = delay;
        dataset.push_back(r);
    };

    paused(0);
    paused(kHour);  // closed upper edge of the first bucket
    paused(kHour + 1);
    paused(6 * kHour);
    paused(6 * kHour + 1);
    paused(12 * kHour);
    paused(12 * kHour + 1);
    paused(24 * kHour);
    paused(24 * kHour + 1);
    paused(48 * kHour);
    paused(48 * kHour + 1);

    auto never = base_record("never", "2021-05-01", ProtocolType::other, 0);
    never.supports_pause = true;  // pause exists, never executed
    dataset.push_back(never);

    auto unpausable = base_record("nopause", "2021-05-01", ProtocolType::other, 0);
    unpausable.pause_delay_seconds = 10;  // ignored: cannot pause at all
    dataset.push_back(unpausable);

    const auto buckets = pause_buckets(dataset);
    CHECK(buckets.counts[0] == 2);
    CHECK(buckets.counts[1] == 2);
    CHECK(buckets.counts[2] == 2);
    CHECK(buckets.counts[3] == 2);
    CHECK(buckets.counts[4] == 2);
    CHECK(buckets.counts[5] == 2);  // 48h+1 and the never-executed record
    CHECK(buckets.paused_total() == 12);  // partition of pause-supporting records
}

TEST_CASE("incident time frames") {
    SUBCASE("deployed ahead of the attack") {
        const auto frames = time_frames(timed_record("r", 1000, 4600, 4600));
        CHECK_FALSE(frames.atomic);
        CHECK(frames.rescue_seconds == 3600);
        CHECK(frames.incident_seconds == 0);
    }
    SUBCASE("multi-transaction incident window") {
        const auto frames = time_frames(timed_record("r", 1000, 4600, 90000));
        CHECK(frames.incident_seconds == 85400);
    }
    SUBCASE("batched deploy and exploit is atomic") {
        auto r = timed_record("r", 500, 500, 600);
        r.deploy_tx = "f";  // same tx does both
        const auto frames = time_frames(r);
        CHECK(frames.atomic);
        CHECK(frames.rescue_seconds == 0);
        CHECK(frames.incident_seconds == 100);
    }
    SUBCASE("no deploy tx at all is atomic") {
        auto r = timed_record("r", 0, 700, 900);
        r.deploy_tx.reset();
        CHECK(time_frames(r).atomic);
    }
    SUBCASE("missing data") {
        auto no_first = timed_record("r", 1, 2, 3);
        no_first.first_malicious_tx.reset();
        try {
            static_cast<void>(time_frames(no_first));
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == errc::missing_timestamps);
        }

        auto no_ts = timed_record("r", 1, 2, 3);
        no_ts.tx_timestamps.erase("f");
        CHECK_THROWS_AS(static_cast<void>(time_frames(no_ts)), Error);
    }
    SUBCASE("ordering violations") {
        CHECK_THROWS_AS(static_cast<void>(time_frames(timed_record("r", 100, 50, 60))), Error);
        CHECK_THROWS_AS(static_cast<void>(time_frames(timed_record("r", 10, 50, 40))), Error);
    }
}

TEST_CASE("atomicity share") {
    std::vector<IncidentRecord> dataset;
    for (int i = 0; i < 103; ++i)
        dataset.push_back(timed_record("n" + std::to_string(i), 100, 200, 300));
    for (int i = 0; i < 71; ++i) {
        auto r = timed_record("a" + std::to_string(i), 100, 100, 100);
        r.deploy_tx = "f";
        dataset.push_back(r);
    }
    for (int i = 0; i < 10; ++i) {
        auto r = base_record("m" + std::to_string(i), "2021-05-01", ProtocolType::other, 0);
        dataset.push_back(r);  // no timestamps at all
    }
    REQUIRE(dataset.size() == 184);

    const auto summary = atomicity_summary(dataset);
    CHECK(summary.non_atomic_count == 103);
    CHECK(summary.non_atomic_pct == 56.0);  // 55.978... rounds to a whole percent

    CHECK(atomicity_summary({}).non_atomic_pct == 0.0);
}

TEST_CASE("sem feature preparation") {
    auto low = base_record("low", "2021-05-01", ProtocolType::other, 10000);  // $100
    low.tvl_cents = 100000;
    low.pause_delay_seconds = 0;
    low.car = -0.9;
    low.disclosed_within_20d = false;
    low.audit_status = AuditStatus::NotAudited;

    auto mid = base_record("mid", "2021-05-02", ProtocolType::other, 50000);
    mid.tvl_cents = 400000;
    mid.pause_delay_seconds = 3600;
    mid.car = -0.5;
    mid.disclosed_within_20d = true;
    mid.audit_status = AuditStatus::PartiallyAudited;
    mid.supports_pause = true;

    auto high = base_record("high", "2021-05-03", ProtocolType::other, 90000);  // $900
    high.tvl_cents = 900000;
    high.pause_delay_seconds = 7200;
    high.car = -0.1;
    high.disclosed_within_20d = true;
    high.audit_status = AuditStatus::Audited;

    const std::vector<IncidentRecord> dataset{low, mid, high};
    const auto extrema = sem_extrema(dataset);
    CHECK(extrema.delay_min == 0.0);
    CHECK(extrema.delay_max == 7200.0);
    CHECK(extrema.car_min == doctest::Approx(-0.9));
    CHECK(extrema.car_max == doctest::Approx(-0.1));
    CHECK(extrema.log_loss_min == doctest::Approx(std::log1p(100.0)));
    CHECK(extrema.log_loss_max == doctest::Approx(std::log1p(900.0)));
    CHECK(extrema.log_tvl_max == doctest::Approx(std::log1p(9000.0)));

    const auto f_low = prepare_sem_features(low, extrema);
    CHECK(f_low.PD1 == 0.0);
    CHECK(f_low.PD2 == 0.0);
    CHECK(f_low.A1 == doctest::Approx(0.0));
    CHECK(f_low.RD1 == doctest::Approx(0.0));
    CHECK(f_low.RD2 == 0.0);
    CHECK(f_low.H1 == doctest::Approx(0.0));
    CHECK(f_low.H2 == doctest::Approx(0.0));

    const auto f_mid = prepare_sem_features(mid, extrema);
    CHECK(f_mid.PD1 == 0.5);
    CHECK(f_mid.PD2 == 1.0);
    CHECK(f_mid.RD1 == doctest::Approx(0.5));
    CHECK(f_mid.RD2 == 1.0);
    CHECK(f_mid.H1 == doctest::Approx(0.5));
    CHECK(f_mid.A1 > 0.0);
    CHECK(f_mid.A1 < 1.0);

    const auto f_high = prepare_sem_features(high, extrema);
    CHECK(f_high.PD1 == 1.0);
    CHECK(f_high.A1 == doctest::Approx(1.0));
    CHECK(f_high.RD1 == doctest::Approx(1.0));
    CHECK(f_high.H1 == doctest::Approx(1.0));
    CHECK(f_high.H2 == doctest::Approx(1.0));

    SUBCASE("every scaled feature stays in the unit interval") {
        for (const auto& record : dataset) {
            const auto f = prepare_sem_features(record, extrema);
            for (double v : {f.PD1, f.PD2, f.A1, f.RD1, f.RD2, f.H1, f.H2}) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
    SUBCASE("missing observations are refused, not defaulted") {
        auto no_tvl = mid;
        no_tvl.tvl_cents.reset();
        auto no_delay = mid;
        no_delay.pause_delay_seconds.reset();
        auto no_car = mid;
        no_car.car.reset();
        auto no_disclosure = mid;
        no_disclosure.disclosed_within_20d.reset();
        for (const auto& broken : {no_tvl, no_delay, no_car, no_disclosure}) {
            try {
                static_cast<void>(prepare_sem_features(broken, extrema));
                FAIL("expected throw");
            } catch (const Error& e) {
                CHECK(e.code() == errc::missing_feature);
            }
        }
    }
    SUBCASE("degenerate extrema scale to zero") {
        const auto solo = sem_extrema({mid});
        const auto f = prepare_sem_features(mid, solo);
        CHECK(f.A1 == 0.0);
        CHECK(f.RD1 == 0.0);
        CHECK(f.H1 == 0.0);
        CHECK(f.H2 == 0.0);
        CHECK(f.PD1 == 0.5);  // ordinals are unaffected
    }
}
