// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: twelve numbered criteria, one PASS/FAIL line each.
// Tolerances and wall-clock bounds are pinned here, next to the check
// they guard. Exit status is zero only when every criterion passes.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "defisect/analytics.hpp"
#include "defisect/chain.hpp"
#include "defisect/clone.hpp"
#include "defisect/disasm.hpp"
#include "defisect/error.hpp"
#include "defisect/event_study.hpp"
#include "defisect/hex.hpp"
#include "defisect/incident.hpp"
#include "defisect/io_util.hpp"
#include "defisect/link.hpp"
#include "defisect/ngram.hpp"
#include "defisect/trace.hpp"
#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

class Criterion {
  public:
    Criterion(const char* id, const char* label, double bound_ms = 0.0)
        : id_(id), label_(label), bound_ms_(bound_ms), begin_(Clock::now()) {}

    void expect(bool condition, const std::string& problem) {
        if (!condition && problems_.size() < 3) problems_.push_back(problem);
        if (!condition) ++problem_count_;
    }

    void finish() {
        const double elapsed_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - begin_).count();
        if (bound_ms_ > 0.0 && elapsed_ms > bound_ms_)
            expect(false, "took " + std::to_string(elapsed_ms) + " ms, bound " +
                              std::to_string(bound_ms_) + " ms");
        const bool ok = problem_count_ == 0;
        if (!ok) ++g_failures;
        std::string note;
        if (bound_ms_ > 0.0) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " [%.0f ms, bound %.0f ms]", elapsed_ms, bound_ms_);
            note = buf;
        }
        std::printf("%s %s: %s%s\n", id_, ok ? "PASS" : "FAIL", label_, note.c_str());
        for (const auto& problem : problems_) std::printf("    - %s\n", problem.c_str());
        if (problem_count_ > problems_.size())
            std::printf("    - (%zu further problems suppressed)\n",
                        problem_count_ - problems_.size());
    }

  private:
    const char* id_;
    const char* label_;
    double bound_ms_;
    Clock::time_point begin_;
    std::vector<std::string> problems_;
    std::size_t problem_count_ = 0;
};

defisect::OpcodeStream random_stream(std::mt19937& rng, const std::string& id) {
    std::uniform_int_distribution<std::size_t> len_dist(0, 32);
    std::uniform_int_distribution<int> op_dist(0x01, 0x06);
    defisect::OpcodeStream stream;
    stream.source_id = id;
    const std::size_t len = len_dist(rng);
    for (std::size_t i = 0; i < len; ++i)
        stream.opcodes.push_back(static_cast<std::uint8_t>(op_dist(rng)));
    return stream;
}

// --- C1: clone-report arithmetic on engineered corpora ----------------------

void c1_clone_arithmetic() {
    Criterion c("C1", "clone report arithmetic on engineered corpora", 1000.0);

    const auto first = testing::replica_corpus({8, 8, 6, 6, 4, 3, 3}, 5, "a");
    const auto ra = defisect::report(defisect::cluster(first, 1.0));
    c.expect(ra.total_in_clusters == 38, "first corpus members: expected 38, got " +
                                             std::to_string(ra.total_in_clusters));
    c.expect(ra.cluster_count == 7,
             "first corpus clusters: expected 7, got " + std::to_string(ra.cluster_count));
    c.expect(ra.detectable() == 31,
             "first corpus detectable: expected 31, got " + std::to_string(ra.detectable()));

    const auto second = testing::replica_corpus({7, 6, 5, 4, 4, 3}, 4, "b");
    const auto rb = defisect::report(defisect::cluster(second, 1.0));
    c.expect(rb.total_in_clusters == 29, "second corpus members: expected 29, got " +
                                             std::to_string(rb.total_in_clusters));
    c.expect(rb.cluster_count == 6,
             "second corpus clusters: expected 6, got " + std::to_string(rb.cluster_count));
    c.expect(rb.detectable() == 23,
             "second corpus detectable: expected 23, got " + std::to_string(rb.detectable()));
    c.finish();
}

// --- C2: clustering equals a brute-force connected-components oracle --------

void c2_cluster_oracle() {
    Criterion c("C2", "threshold clustering matches brute-force components on 500 corpora",
                10'000.0);
    std::mt19937 rng(20260814u);
    const double thresholds[] = {0.3, 0.5, 0.8, 1.0};
    std::size_t agreed = 0;

    for (std::size_t round = 0; round < 500; ++round) {
        const auto corpus = testing::random_stream_corpus(rng, 40);
        std::vector<defisect::GramProfile> profiles;
        std::vector<std::pair<std::string, std::set<std::string>>> exact;
        for (const auto& stream : corpus) {
            profiles.push_back(defisect::build_profile(stream, 3));
            exact.emplace_back(stream.source_id, defisect::exact_grams(stream, 3));
        }
        const double threshold = thresholds[round % 4];
        std::vector<std::vector<std::string>> got;
        for (const auto& cl : defisect::cluster(profiles, threshold)) got.push_back(cl.members);
        if (got == testing::brute_clusters(exact, threshold))
            ++agreed;
        else
            c.expect(false, "round " + std::to_string(round) + " diverged at threshold " +
                                std::to_string(threshold));
    }
    c.expect(agreed == 500, std::to_string(agreed) + "/500 corpora agreed");
    c.finish();
}

// --- C3: Jaccard properties + threshold-monotone refinement -----------------

void c3_jaccard_properties() {
    Criterion c("C3", "jaccard symmetry/bounds/reflexivity and cluster refinement", 5000.0);
    std::mt19937 rng(7u);

    std::size_t asymmetric = 0, unbounded = 0, irreflexive = 0;
    for (std::size_t i = 0; i < 10'000; ++i) {
        const auto a = defisect::build_profile(random_stream(rng, "pa"), 5);
        const auto b = defisect::build_profile(random_stream(rng, "pb"), 5);
        const double ab = defisect::jaccard(a, b);
        const double ba = defisect::jaccard(b, a);
        if (ab != ba) ++asymmetric;
        if (!(ab >= 0.0 && ab <= 1.0)) ++unbounded;
        const double self = defisect::jaccard(a, a);
        if (self != (a.grams.empty() ? 0.0 : 1.0)) ++irreflexive;
    }
    c.expect(asymmetric == 0, std::to_string(asymmetric) + " asymmetric pairs");
    c.expect(unbounded == 0, std::to_string(unbounded) + " out-of-range similarities");
    c.expect(irreflexive == 0, std::to_string(irreflexive) + " reflexivity violations");

    // Raising the threshold may only split clusters, never merge them.
    std::size_t unrefined = 0;
    for (std::size_t round = 0; round < 200; ++round) {
        const auto corpus = testing::random_stream_corpus(rng, 24);
        std::vector<defisect::GramProfile> profiles;
        for (const auto& stream : corpus)
            profiles.push_back(defisect::build_profile(stream, 3));
        const auto low = defisect::cluster(profiles, 0.25);
        std::map<std::string, std::size_t> low_index;
        for (std::size_t i = 0; i < low.size(); ++i)
            for (const auto& member : low[i].members) low_index[member] = i;
        for (double t : {0.5, 0.9}) {
            for (const auto& high_cluster : defisect::cluster(profiles, t)) {
                std::set<std::size_t> homes;
                for (const auto& member : high_cluster.members) {
                    auto it = low_index.find(member);
                    if (it == low_index.end())
                        ++unrefined;  // connected at high t but singleton at low t
                    else
                        homes.insert(it->second);
                }
                if (homes.size() > 1) ++unrefined;
            }
        }
    }
    c.expect(unrefined == 0, std::to_string(unrefined) + " refinement violations");
    c.finish();
}

// --- C4: one-hop funding trace equals a linear-replay oracle ----------------

void c4_one_hop_oracle() {
    Criterion c("C4", "one-hop trace matches linear replay on 200 random chains", 30'000.0);

    // Deterministic drain-refund shape: the balance is non-monotone and the
    // wallet is empty again by the time it first sends.
    {
        defisect::FixtureChainBuilder builder;
        builder.allocate("funder", 50);
        builder.begin_block(1, 0);
        builder.tx("fund", "funder", {{"funder", "wallet", 9}});
        builder.begin_block(2, 0);
        builder.tx("spend", "wallet", {{"wallet", "other", 9}});
        builder.begin_block(3, 0);
        builder.tx("refund", "other", {{"other", "wallet", 5}});
        builder.begin_block(4, 0);
        builder.tx("spend2", "wallet", {{"wallet", "other", 5}});
        const auto chain = builder.build();
        const auto hop = defisect::one_hop_trace(chain, "wallet");
        c.expect(hop.has_value() && hop->funding_tx == "fund" && hop->from == "funder" &&
                     hop->block == 1 && hop->amount == 9,
                 "drain-refund fixture: expected hop fund/funder/1/9");
    }

    std::mt19937 rng(41u);
    std::size_t checked = 0, mismatched = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        const auto random = testing::random_chain(rng, 1000, 50);
        for (const auto& address : random.addresses) {
            const auto want = testing::oracle_one_hop(random.chain, address);
            using Outcome = testing::HopOracle::Outcome;
            bool ok = false;
            try {
                const auto got = defisect::one_hop_trace(random.chain, address);
                if (!got.has_value())
                    ok = want.outcome == Outcome::genesis;
                else
                    ok = want.outcome == Outcome::hop && got->funding_tx == want.funding_tx &&
                         got->from == want.from && got->block == want.block &&
                         got->amount == want.amount;
            } catch (const defisect::Error& e) {
                ok = (e.code() == defisect::errc::never_active &&
                      want.outcome == Outcome::never_active) ||
                     (e.code() == defisect::errc::active_at_genesis &&
                      want.outcome == Outcome::active_at_genesis) ||
                     (e.code() == defisect::errc::no_balance_before_activity &&
                      want.outcome == Outcome::no_balance);
            }
            ++checked;
            if (!ok) {
                ++mismatched;
                c.expect(false, "chain " + std::to_string(i) + " address " + address);
            }
        }
    }
    c.expect(mismatched == 0,
             std::to_string(mismatched) + "/" + std::to_string(checked) + " addresses diverged");
    c.expect(checked >= 800, "only " + std::to_string(checked) + " addresses exercised");
    c.finish();
}

// --- C5: mixer withdrawals hide the depositor only behind a relayer ---------

void c5_mixer_rule() {
    Criterion c("C5", "relayer-paid mixer withdrawal is terminal, self-paid is not");

    const auto relayed = testing::mixer_withdrawal_fixture(true);
    const auto hidden =
        defisect::trace_to_source(relayed.chain, relayed.registry, relayed.adversary, 10);
    c.expect(hidden.kind == defisect::SourceKind::mixer,
             "relayer-paid: expected mixer, got " +
                 std::string(defisect::source_kind_name(hidden.kind)));
    c.expect(hidden.entity == "SpinCycle", "relayer-paid: entity " + hidden.entity);
    c.expect(hidden.hops == 1, "relayer-paid: hops " + std::to_string(hidden.hops));

    const auto self_paid = testing::mixer_withdrawal_fixture(false);
    const auto exposed =
        defisect::trace_to_source(self_paid.chain, self_paid.registry, self_paid.adversary, 10);
    c.expect(exposed.kind != defisect::SourceKind::mixer,
             "self-paid withdrawal must not classify as mixer");
    c.expect(exposed.kind == defisect::SourceKind::unknown,
             "self-paid fee loop should dead-end as unknown, got " +
                 std::string(defisect::source_kind_name(exposed.kind)));
    c.finish();
}

// --- C6: linked-adversary clusters at k = 3 and k = 9 ------------------------

void c6_linked_adversaries() {
    Criterion c("C6", "shared-funder clusters recovered at k=3 and k=9");
    const auto fixture = testing::linked_funder_fixture();

    std::vector<std::pair<std::string, defisect::FundingSource>> sources;
    for (const auto& [incident, adversary] : fixture.traces) {
        sources.emplace_back(
            incident, defisect::trace_to_source(fixture.chain, fixture.registry, adversary, 12));
        c.expect(sources.back().second.kind == defisect::SourceKind::genesis,
                 incident + ": trace did not reach genesis");
    }

    auto as_map = [](const std::vector<defisect::LinkedCluster>& clusters) {
        std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> m;
        for (const auto& cl : clusters) m[cl.suspect] = cl.incidents;
        return m;
    };

    // Within nine hops every engineered suspect is visible.
    const auto at_k9 = as_map(defisect::link_adversaries(sources, 9));
    c.expect(at_k9 == fixture.expected, "k=9 clusters differ from the fixture's expectation");
    c.expect(at_k9.size() == 6, "k=9: expected 6 clusters, got " + std::to_string(at_k9.size()));

    // At three hops the deep funder (hops 8 and 9) drops out.
    std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> want_k3;
    for (const auto& [suspect, incidents] : fixture.expected) {
        std::vector<std::pair<std::string, std::size_t>> near_hops;
        for (const auto& entry : incidents)
            if (entry.second <= 3) near_hops.push_back(entry);
        if (near_hops.size() >= 2) want_k3[suspect] = near_hops;
    }
    const auto at_k3 = as_map(defisect::link_adversaries(sources, 3));
    c.expect(at_k3 == want_k3, "k=3 clusters differ from the hop-filtered expectation");
    c.expect(at_k3.size() == 5, "k=3: expected 5 clusters, got " + std::to_string(at_k3.size()));
    c.finish();
}

// --- C7: CAPM fit vs normal equations; AR on model data; min CAR ------------

void c7_capm_car() {
    Criterion c("C7", "CAPM within 1e-9 of normal equations; AR=0 on model data; exact min CAR",
                5000.0);
    std::mt19937 rng(99u);
    std::normal_distribution<double> market_move(0.0, 0.02);
    std::normal_distribution<double> noise(0.0, 0.005);
    std::uniform_real_distribution<double> alpha_dist(-0.01, 0.01);
    std::uniform_real_distribution<double> beta_dist(-2.0, 3.0);

    // Relative tolerance with an absolute floor of 1 (alpha and beta both
    // live near zero, so a pure relative bound would be vacuous or brittle).
    const double kRelTol = 1e-9;
    auto within = [&](double got, long double want) {
        return std::fabs(got - static_cast<double>(want)) <=
               kRelTol * std::max(1.0, std::fabs(static_cast<double>(want)));
    };

    std::size_t bad_fits = 0;
    for (std::size_t round = 0; round < 100; ++round) {
        std::vector<double> x(144), y(144);
        const double alpha = alpha_dist(rng), beta = beta_dist(rng);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = market_move(rng);
            y[i] = alpha + beta * x[i] + noise(rng);
        }
        const auto fit = defisect::fit_capm(y, x);
        const auto want = testing::ols_normal_equations(y, x);
        if (!within(fit.beta, want.beta) || !within(fit.alpha, want.alpha)) {
            ++bad_fits;
            c.expect(false, "round " + std::to_string(round) + " drifted from the oracle");
        }
    }
    c.expect(bad_fits == 0, std::to_string(bad_fits) + "/100 fits outside 1e-9");

    // Noise-free model data: abnormal returns must vanish (1e-10 absolute,
    // leaving headroom over double rounding in the fit).
    std::vector<double> x(144), y(144);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = market_move(rng);
        y[i] = 0.002 + 1.4 * x[i];
    }
    const auto fit = defisect::fit_capm(y, x);
    double worst_ar = 0.0;
    for (double ar : defisect::abnormal_returns(fit, y, x))
        worst_ar = std::max(worst_ar, std::fabs(ar));
    c.expect(worst_ar <= 1e-10,
             "model-data AR reached " + std::to_string(worst_ar));

    std::size_t car_mismatches = 0;
    std::uniform_int_distribution<std::size_t> len_dist(1, 64);
    for (std::size_t round = 0; round < 200; ++round) {
        std::vector<double> ars(len_dist(rng));
        for (double& ar : ars) ar = noise(rng);
        const auto got = defisect::min_car(ars);
        double running = 0.0, best = std::numeric_limits<double>::infinity();
        std::size_t best_at = 0;
        for (std::size_t i = 0; i < ars.size(); ++i) {
            running += ars[i];
            if (running < best) {
                best = running;
                best_at = i;
            }
        }
        if (got.car_min != best || got.argmin_tick != best_at) ++car_mismatches;
    }
    c.expect(car_mismatches == 0,
             std::to_string(car_mismatches) + "/200 CAR minima diverged from brute force");
    c.finish();
}

// --- C8: audit-effectiveness rates ------------------------------------------

void c8_audit_effectiveness() {
    Criterion c("C8", "audit effectiveness on (563, 23, 213, 33) reports 4.09% and 15.49%");
    const auto stats = defisect::audit_effectiveness(563, 23, 213, 33);
    c.expect(defisect::round2(stats.audited_rate_pct) == 4.09,
             "audited rate rounded to " +
                 std::to_string(defisect::round2(stats.audited_rate_pct)));
    c.expect(defisect::round2(stats.unaudited_rate_pct) == 15.49,
             "unaudited rate rounded to " +
                 std::to_string(defisect::round2(stats.unaudited_rate_pct)));
    c.expect(stats.ratio.has_value(), "ratio should be present");
    c.finish();
}

// --- shared incident-record scaffolding --------------------------------------

defisect::IncidentRecord minimal_record(const std::string& id) {
    defisect::IncidentRecord r;
    r.id = id;
    r.chain = defisect::Chain::Ethereum;
    r.date = defisect::parse_date("2021-06-01");
    r.taxonomy.push_back({defisect::Layer::SC, "Untrusted or unsafe calls", "Reentrancy"});
    r.protocol_type = defisect::ProtocolType::lending;
    r.loss_cents = 100'00;
    r.audit_status = defisect::AuditStatus::NotAudited;
    return r;
}

// --- C9: emergency-pause latency buckets -------------------------------------

void c9_pause_buckets() {
    Criterion c("C9", "pause delays {30m, 5hx24, 10hx11, 20hx7, 40hx8} bucket as 1/24/11/7/8");
    std::vector<defisect::IncidentRecord> dataset;
    auto add = [&](std::uint64_t delay_seconds, std::size_t copies) {
        for (std::size_t i = 0; i < copies; ++i) {
            auto r = minimal_record("p" + std::to_string(dataset.size()));
            r.supports_pause = true;
            r.pause_delay_seconds = delay_seconds;
            dataset.push_back(std::move(r));
        }
    };
    add(30 * 60, 1);
    add(5 * 3600, 24);
    add(10 * 3600, 11);
    add(20 * 3600, 7);
    add(40 * 3600, 8);

    const auto buckets = defisect::pause_buckets(dataset);
    const std::array<std::size_t, 6> want{1, 24, 11, 7, 8, 0};
    for (std::size_t i = 0; i < want.size(); ++i)
        c.expect(buckets.counts[i] == want[i],
                 "bucket " + std::to_string(i) + ": expected " + std::to_string(want[i]) +
                     ", got " + std::to_string(buckets.counts[i]));
    c.expect(buckets.paused_total() == 51,
             "bucket sum " + std::to_string(buckets.paused_total()) + " != 51");
    c.finish();
}

// --- C10: atomicity share and batched-deploy rescue frames -------------------

void c10_atomicity() {
    Criterion c("C10", "184-record fixture: 103 non-atomic = 56%; batched deploys rescue in 0 s");
    std::vector<defisect::IncidentRecord> dataset;

    for (std::size_t i = 0; i < 103; ++i) {
        auto r = minimal_record("slow" + std::to_string(i));
        r.deploy_tx = "d";
        r.first_malicious_tx = "f";
        r.last_malicious_tx = "l";
        r.tx_timestamps = {{"d", 1000}, {"f", 4600}, {"l", 9000}};
        dataset.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < 71; ++i) {
        auto r = minimal_record("batched" + std::to_string(i));
        r.deploy_tx = "f";  // deployment and first strike share one tx
        r.first_malicious_tx = "f";
        r.last_malicious_tx = "l";
        r.tx_timestamps = {{"f", 2000}, {"l", 2100}};
        dataset.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < 10; ++i)
        dataset.push_back(minimal_record("bare" + std::to_string(i)));

    const auto summary = defisect::atomicity_summary(dataset);
    c.expect(summary.non_atomic_count == 103,
             "non-atomic count " + std::to_string(summary.non_atomic_count));
    c.expect(summary.non_atomic_pct == 56.0,
             "non-atomic pct " + std::to_string(summary.non_atomic_pct));

    const auto frames = defisect::time_frames(dataset[103]);  // first batched record
    c.expect(frames.atomic, "batched record should be atomic");
    c.expect(frames.rescue_seconds == 0,
             "batched rescue " + std::to_string(frames.rescue_seconds) + " s");
    c.expect(frames.incident_seconds == 100,
             "batched incident span " + std::to_string(frames.incident_seconds) + " s");
    c.finish();
}

// --- C11: disassembler totality fuzz -----------------------------------------

void c11_disassembler_fuzz() {
    Criterion c("C11", "100000 random byte strings disassemble totally with exact accounting",
                10'000.0);
    std::mt19937 rng(5u);
    std::uniform_int_distribution<std::size_t> len_dist(0, 512);
    std::uniform_int_distribution<int> byte_dist(0, 255);

    std::size_t broken = 0;
    for (std::size_t i = 0; i < 100'000; ++i) {
        defisect::RawBytecode raw;
        raw.source_id = "fuzz";
        raw.bytes.resize(len_dist(rng));
        for (auto& b : raw.bytes) b = static_cast<std::uint8_t>(byte_dist(rng));
        try {
            const auto plain = defisect::disassemble(raw);
            if (plain.opcodes.size() + plain.immediate_bytes != raw.bytes.size() ||
                plain.stripped_metadata_len != 0)
                ++broken;
            const auto stripped = defisect::normalize(raw);
            if (stripped.opcodes.size() + stripped.immediate_bytes +
                    stripped.stripped_metadata_len !=
                raw.bytes.size())
                ++broken;
        } catch (...) {
            ++broken;
            c.expect(false, "input " + std::to_string(i) + " threw");
        }
    }
    c.expect(broken == 0, std::to_string(broken) + " accounting violations");
    c.finish();
}

// --- C12: CLI determinism + overall wall clock --------------------------------

struct CliRun {
    int exit_code = -1;
    std::string out;
};

std::string shell_quote(const std::string& arg) {
    std::string quoted = "'";
    for (char ch : arg) quoted += (ch == '\'') ? "'\\''" : std::string(1, ch);
    return quoted + "'";
}

int run_cli(const std::string& binary, const std::vector<std::string>& args,
            const fs::path& sink) {
    std::string cmd = shell_quote(binary);
    for (const auto& arg : args) cmd += " " + shell_quote(arg);
    cmd += " > " + shell_quote(sink.string()) + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void c12_determinism(const char* cli_path, Clock::time_point program_start) {
    Criterion c("C12", "CLI outputs byte-identical across two runs; acceptance under 60 s");
    if (cli_path == nullptr) {
        c.expect(false, "usage: defisect_acceptance <path-to-defisect-cli>");
        c.finish();
        return;
    }

    const fs::path dir = fs::temp_directory_path() / "defisect-acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    defisect::write_file_atomic((dir / "code.hex").string(), "0x6001600201565b00fe\n");
    defisect::write_file_atomic((dir / "corpus.json").string(),
                                "[{\"source_id\": \"a\", \"hex\": \"0x0102030405\"},"
                                " {\"source_id\": \"b\", \"hex\": \"0x0102030405\"},"
                                " {\"source_id\": \"c\", \"hex\": \"0x1112131415\"}]");
    defisect::FixtureChainBuilder builder;
    builder.allocate("root", 100);
    builder.begin_block(1, 1000);
    builder.tx("t0", "root", {{"root", "adv", 100}});
    builder.begin_block(2, 1013);
    builder.tx("t1", "adv", {{"adv", "victim", 100}});
    defisect::write_file_atomic((dir / "chain.json").string(), builder.to_json());

    const std::vector<std::pair<std::string, std::vector<std::string>>> jobs = {
        {"disasm.json", {"disasm", "--in", (dir / "code.hex").string()}},
        {"clone.csv",
         {"clone", "--manifest", (dir / "corpus.json").string(), "--threshold", "1.0", "--n",
          "3"}},
        {"trace.json", {"trace", "--chain", (dir / "chain.json").string(), "--address", "adv"}},
        {"audit.csv",
         {"stats", "--analysis", "audit", "--audited-total", "563", "--audited-attacked", "23",
          "--unaudited-total", "213", "--unaudited-attacked", "33"}},
    };
    for (const auto& [name, args] : jobs) {
        auto first_args = args;
        first_args.insert(first_args.end(), {"--out", (dir / ("1_" + name)).string()});
        auto second_args = args;
        second_args.insert(second_args.end(), {"--out", (dir / ("2_" + name)).string()});
        const fs::path sink = dir / "cli.log";
        c.expect(run_cli(cli_path, first_args, sink) == 0, name + ": first run failed");
        c.expect(run_cli(cli_path, second_args, sink) == 0, name + ": second run failed");
        const auto once = defisect::read_file((dir / ("1_" + name)).string());
        const auto twice = defisect::read_file((dir / ("2_" + name)).string());
        c.expect(!once.empty(), name + ": empty output");
        c.expect(once == twice, name + ": runs differ");
    }
    fs::remove_all(dir);

    const double total_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - program_start).count();
    c.expect(total_ms < 60'000.0,
             "acceptance run took " + std::to_string(total_ms) + " ms, bound 60000 ms");
    c.finish();
}

}  // namespace

int main(int argc, char** argv) {
    const auto program_start = Clock::now();
    c1_clone_arithmetic();
    c2_cluster_oracle();
    c3_jaccard_properties();
    c4_one_hop_oracle();
    c5_mixer_rule();
    c6_linked_adversaries();
    c7_capm_car();
    c8_audit_effectiveness();
    c9_pause_buckets();
    c10_atomicity();
    c11_disassembler_fuzz();
    c12_determinism(argc > 1 ? argv[1] : nullptr, program_start);

    std::printf("ACCEPTANCE: %d/12 criteria passed\n", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
