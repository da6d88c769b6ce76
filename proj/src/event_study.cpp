// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "defisect/event_study.hpp"

#include <algorithm>
#include <cmath>

#include "defisect/csv.hpp"
#include "defisect/error.hpp"
#include "defisect/io_util.hpp"

namespace defisect {

namespace {

void validate_series(const PriceSeries& series) {
    for (std::size_t i = 0; i < series.ticks.size(); ++i) {
        if (!(series.ticks[i].price > 0.0))
            raise(errc::validation_error,
                  "price must be positive at tick " + std::to_string(series.ticks[i].t));
        if (i > 0 && series.ticks[i].t <= series.ticks[i - 1].t)
            raise(errc::validation_error, "tick indices must be strictly increasing");
    }
}

void require_aligned(const PriceSeries& a, const PriceSeries& b) {
    if (a.ticks.size() != b.ticks.size())
        raise(errc::misaligned_ticks, "series lengths differ");
    for (std::size_t i = 0; i < a.ticks.size(); ++i)
        if (a.ticks[i].t != b.ticks[i].t)
            raise(errc::misaligned_ticks, "tick indices differ at position " + std::to_string(i));
}

double mean(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

}  // namespace

PriceSeries price_series_from_csv(const std::string& text) {
    const auto records = parse_csv(text);
    if (records.empty() || records.front() != std::vector<std::string>{"tick", "price"})
        raise(errc::parse_error, "price series must start with header tick,price");
    PriceSeries series;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& row = records[i];
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 2)
            raise(errc::parse_error, "price row " + std::to_string(i + 1) + " needs 2 fields");
        std::size_t used = 0;
        PriceTick tick;
        try {
            tick.t = std::stoull(row[0], &used);
        } catch (const std::exception&) {
            raise(errc::parse_error, "bad tick index: " + row[0]);
        }
        if (used != row[0].size()) raise(errc::parse_error, "bad tick index: " + row[0]);
        try {
            tick.price = std::stod(row[1], &used);
        } catch (const std::exception&) {
            raise(errc::parse_error, "bad price: " + row[1]);
        }
        if (used != row[1].size()) raise(errc::parse_error, "bad price: " + row[1]);
        series.ticks.push_back(tick);
    }
    validate_series(series);
    return series;
}

PriceSeries load_price_csv(const std::string& path) {
    return price_series_from_csv(read_file(path));
}

std::vector<double> returns(const PriceSeries& series, ReturnKind kind) {
    if (series.ticks.size() < 2) raise(errc::too_short, "need at least 2 ticks");
    validate_series(series);
    std::vector<double> out(series.ticks.size() - 1);
    for (std::size_t i = 1; i < series.ticks.size(); ++i) {
        const double ratio = series.ticks[i].price / series.ticks[i - 1].price;
        out[i - 1] = kind == ReturnKind::simple ? ratio - 1.0 : std::log(ratio);
    }
    return out;
}

PriceSeries market_proxy(const PriceSeries& btc, const PriceSeries& eth) {
    require_aligned(btc, eth);
    PriceSeries proxy;
    proxy.granularity_seconds = btc.granularity_seconds;
    proxy.ticks.reserve(btc.ticks.size());
    for (std::size_t i = 0; i < btc.ticks.size(); ++i)
        proxy.ticks.push_back({btc.ticks[i].t, (btc.ticks[i].price + eth.ticks[i].price) / 2.0});
    return proxy;
}

std::vector<double> market_returns(const PriceSeries& btc, const PriceSeries& eth,
                                   ProxyKind proxy, ReturnKind kind) {
    if (proxy == ProxyKind::price_mean) return returns(market_proxy(btc, eth), kind);
    const auto rb = returns(btc, kind);
    const auto re = returns(eth, kind);
    std::vector<double> out(rb.size());
    for (std::size_t i = 0; i < rb.size(); ++i) out[i] = (rb[i] + re[i]) / 2.0;
    return out;
}

CapmFit fit_capm(const std::vector<double>& token_returns,
                 const std::vector<double>& market_returns, double risk_free) {
    if (token_returns.size() != market_returns.size())
        raise(errc::misaligned_ticks, "return series lengths differ");
    const std::size_t n = token_returns.size();
    if (n < 2) raise(errc::too_short, "need at least 2 return observations");
    if (std::all_of(market_returns.begin(), market_returns.end(),
                    [&](double r) { return r == market_returns.front(); }))
        raise(errc::degenerate_regressor, "market returns are constant over the window");

    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = token_returns[i] - risk_free;
        x[i] = market_returns[i] - risk_free;
    }
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }

    CapmFit fit;
    fit.beta = sxy / sxx;
    fit.alpha = my - fit.beta * mx;
    fit.window = n;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (fit.alpha + fit.beta * x[i]);
        ssr += e * e;
    }
    fit.residual_variance = ssr / static_cast<double>(n);
    return fit;
}

std::vector<double> abnormal_returns(const CapmFit& fit, const std::vector<double>& token_returns,
                                     const std::vector<double>& market_returns,
                                     double risk_free) {
    if (token_returns.size() != market_returns.size())
        raise(errc::misaligned_ticks, "return series lengths differ");
    std::vector<double> ars(token_returns.size());
    for (std::size_t i = 0; i < token_returns.size(); ++i) {
        const double expected = fit.alpha + fit.beta * (market_returns[i] - risk_free) + risk_free;
        ars[i] = token_returns[i] - expected;
    }
    return ars;
}

CarResult min_car(const std::vector<double>& ars) {
    if (ars.empty()) raise(errc::empty_series, "no abnormal returns");
    CarResult result;
    result.abnormal_returns = ars;
    double running = 0.0;
    for (std::size_t i = 0; i < ars.size(); ++i) {
        running += ars[i];
        if (i == 0 || running < result.car_min) {
            result.car_min = running;
            result.argmin_tick = i;
        }
    }
    return result;
}

EventStudyResult event_study(const PriceSeries& token, const PriceSeries& btc,
                             const PriceSeries& eth, std::uint64_t event_tick,
                             const EventStudyConfig& config) {
    require_aligned(token, btc);
    require_aligned(token, eth);
    validate_series(token);

    const auto& ticks = token.ticks;
    auto at = std::find_if(ticks.begin(), ticks.end(),
                           [&](const PriceTick& p) { return p.t == event_tick; });
    if (at == ticks.end())
        raise(errc::validation_error, "event tick not in series: " + std::to_string(event_tick));
    const std::size_t s = static_cast<std::size_t>(at - ticks.begin());

    // Return j lands on tick position j + 1; the estimation window is the
    // config.estimation_window returns ending strictly before the event.
    if (s < config.estimation_window + 1)
        raise(errc::too_short, "not enough history before the event tick");
    const std::size_t est_begin = s - 1 - config.estimation_window;

    const auto token_r = returns(token, config.return_kind);
    const auto market_r = market_returns(btc, eth, config.proxy_kind, config.return_kind);

    std::vector<double> est_token(token_r.begin() + static_cast<std::ptrdiff_t>(est_begin),
                                  token_r.begin() + static_cast<std::ptrdiff_t>(s - 1));
    std::vector<double> est_market(market_r.begin() + static_cast<std::ptrdiff_t>(est_begin),
                                   market_r.begin() + static_cast<std::ptrdiff_t>(s - 1));

    EventStudyResult result;
    result.fit = fit_capm(est_token, est_market, config.risk_free);

    std::size_t event_end = token_r.size();
    if (config.event_window > 0) event_end = std::min(event_end, s - 1 + config.event_window);
    if (s - 1 >= event_end) raise(errc::too_short, "no ticks after the event");
    std::vector<double> ev_token(token_r.begin() + static_cast<std::ptrdiff_t>(s - 1),
                                 token_r.begin() + static_cast<std::ptrdiff_t>(event_end));
    std::vector<double> ev_market(market_r.begin() + static_cast<std::ptrdiff_t>(s - 1),
                                  market_r.begin() + static_cast<std::ptrdiff_t>(event_end));

    result.car = min_car(abnormal_returns(result.fit, ev_token, ev_market, config.risk_free));
    result.argmin_tick = ticks[s + result.car.argmin_tick].t;
    return result;
}

}  // namespace defisect
