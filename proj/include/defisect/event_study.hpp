// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace defisect {

struct PriceTick {
    std::uint64_t t = 0;
    double price = 0.0;
};

// Strictly increasing tick indices, strictly positive prices.
struct PriceSeries {
    std::vector<PriceTick> ticks;
    std::uint64_t granularity_seconds = 3600;
};

PriceSeries price_series_from_csv(const std::string& text);
PriceSeries load_price_csv(const std::string& path);

enum class ReturnKind { simple, logarithmic };
enum class ProxyKind { price_mean, return_mean };

// Per-tick returns; element j covers the move into ticks[j + 1].
std::vector<double> returns(const PriceSeries& series, ReturnKind kind = ReturnKind::simple);

// Element-wise mean of two price series over identical tick indices.
PriceSeries market_proxy(const PriceSeries& btc, const PriceSeries& eth);

// Market return series under either proxy reading: returns of the mean
// price (default) or mean of the two return series.
std::vector<double> market_returns(const PriceSeries& btc, const PriceSeries& eth,
                                   ProxyKind proxy = ProxyKind::price_mean,
                                   ReturnKind kind = ReturnKind::simple);

struct CapmFit {
    double alpha = 0.0;
    double beta = 0.0;
    double residual_variance = 0.0;  // mean squared residual
    std::size_t window = 0;          // number of return observations fitted
};

// OLS of token returns on market returns: beta = cov/var,
// alpha = mean(token) - beta * mean(market). Risk-free rate defaults to 0.
CapmFit fit_capm(const std::vector<double>& token_returns,
                 const std::vector<double>& market_returns, double risk_free = 0.0);

// AR_t = R_t - (alpha + beta * (Rmkt_t - r_f) + r_f).
std::vector<double> abnormal_returns(const CapmFit& fit, const std::vector<double>& token_returns,
                                     const std::vector<double>& market_returns,
                                     double risk_free = 0.0);

struct CarResult {
    std::vector<double> abnormal_returns;
    double car_min = 0.0;
    std::size_t argmin_tick = 0;  // position within abnormal_returns, earliest on ties
};

// Minimum over prefix sums of the AR series, scanned left to right.
CarResult min_car(const std::vector<double>& ars);

struct EventStudyConfig {
    std::size_t estimation_window = 144;  // return observations before the event
    std::size_t event_window = 0;         // AR observations from the event on; 0 = to end
    ReturnKind return_kind = ReturnKind::simple;
    ProxyKind proxy_kind = ProxyKind::price_mean;
    double risk_free = 0.0;
};

struct EventStudyResult {
    CapmFit fit;
    CarResult car;
    std::uint64_t argmin_tick = 0;  // tick index from the input series
};

// Full pipeline: align the three series, fit CAPM on the window ending
// just before event_tick, compute ARs from event_tick onward, report the
// minimal cumulative abnormal return.
EventStudyResult event_study(const PriceSeries& token, const PriceSeries& btc,
                             const PriceSeries& eth, std::uint64_t event_tick,
                             const EventStudyConfig& config = {});

}  // namespace defisect
