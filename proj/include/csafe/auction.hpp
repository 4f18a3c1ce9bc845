#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace csafe {

// First-price auction with n bidders and independent uniform-[0,1]
// private valuations, analyzed through its revelation mechanism: bidders
// report a valuation, the highest report wins and pays (1 - 1/n) times
// the report. Truthful reporting is an equilibrium of this mechanism and
// the truthful report is independent of n.
struct AuctionSetup {
  std::int64_t n = 2;

  explicit AuctionSetup(std::int64_t bidders) : n(bidders) {
    if (n < 2) throw std::invalid_argument("auction: need at least 2 bidders");
  }
};

namespace detail {
inline void check_valuation(double v) {
  if (v < 0.0 || v > 1.0)
    throw std::invalid_argument("auction: valuation must lie in [0,1]");
}
}  // namespace detail

// Equilibrium bid of the underlying first-price auction: (1 - 1/n) v.
inline double equilibrium_bid(double v, std::int64_t n) {
  detail::check_valuation(v);
  if (n < 2) throw std::invalid_argument("auction: need at least 2 bidders");
  return (1.0 - 1.0 / static_cast<double>(n)) * v;
}

// Expected equilibrium payoff of a bidder with valuation v: v^n / n.
inline double equilibrium_expected_payoff(double v, std::int64_t n) {
  detail::check_valuation(v);
  if (n < 2) throw std::invalid_argument("auction: need at least 2 bidders");
  return std::pow(v, static_cast<double>(n)) / static_cast<double>(n);
}

inline double max_report(double v, std::int64_t n) {
  return v * static_cast<double>(n) / static_cast<double>(n - 1);
}

// Worst-case expected payoff of reporting b: opponents push their reports
// to the envelope n/(n-1) times their valuation, so the bidder wins only
// when all n-1 opponent valuations fall below (n-1)b/n, gaining
// v - (n-1)b/n.
inline double worst_case_payoff(double v, double b, std::int64_t n) {
  detail::check_valuation(v);
  if (n < 2) throw std::invalid_argument("auction: need at least 2 bidders");
  if (b < 0.0 || b > max_report(v, n) + 1e-12)
    throw std::invalid_argument("auction: report outside [0, n/(n-1) v]");
  const double pay = (static_cast<double>(n - 1) / static_cast<double>(n)) * b;
  return (v - pay) * std::pow(pay, static_cast<double>(n - 1));
}

// The worst-case payoff is maximized by the truthful report b = v. A
// golden-section search over the report range re-derives the argmax at
// runtime and any drift beyond 1e-6 is treated as a fault.
inline double optimal_safety_bid(double v, std::int64_t n) {
  detail::check_valuation(v);
  if (n < 2) throw std::invalid_argument("auction: need at least 2 bidders");
  if (v == 0.0) return 0.0;

  // Score in log space so (pay)^(n-1) cannot underflow to a flat zero for
  // small valuations and many bidders.
  const auto score = [v, n](double b) {
    const double pay = (static_cast<double>(n - 1) / static_cast<double>(n)) * b;
    if (pay <= 0.0 || v - pay <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(v - pay) + static_cast<double>(n - 1) * std::log(pay);
  };
  double lo = 0.0, hi = max_report(v, n);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = score(x1), f2 = score(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = score(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = score(x1);
    }
  }
  const double argmax = (lo + hi) / 2.0;
  if (std::abs(argmax - v) > 1e-6)
    throw std::logic_error("optimal_safety_bid: numeric argmax drifted from v");
  return v;
}

// Guaranteed payoff of the truthful report: (v/n) ((n-1)v/n)^(n-1).
inline double guaranteed_payoff(double v, std::int64_t n) {
  detail::check_valuation(v);
  if (n < 2) throw std::invalid_argument("auction: need at least 2 bidders");
  const double frac = static_cast<double>(n - 1) / static_cast<double>(n);
  return (v / static_cast<double>(n)) * std::pow(frac * v, static_cast<double>(n - 1));
}

// Equilibrium payoff over guaranteed payoff: (n/(n-1))^(n-1), independent
// of v, increasing toward e. Computed in log space for large n.
inline double competitive_ratio(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("auction: need at least 2 bidders");
  const double nd = static_cast<double>(n);
  return std::exp((nd - 1.0) * std::log(nd / (nd - 1.0)));
}

struct MonteCarloResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

// Simulates the revelation mechanism with truthful opponents. The
// protagonist reports bid_fn(v); the highest report wins (ties broken by
// an unbiased seeded lottery) and pays (1 - 1/n) times its report.
// Single sequential RNG stream, so results are a pure function of
// (v, n, samples, seed).
inline MonteCarloResult monte_carlo_payoff(double v, const std::function<double(double)>& bid_fn,
                                           std::int64_t n, std::int64_t samples,
                                           std::uint64_t seed) {
  detail::check_valuation(v);
  if (n < 2) throw std::invalid_argument("auction: need at least 2 bidders");
  if (samples < 1000) throw std::invalid_argument("auction: need at least 1000 samples");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double report = bid_fn(v);
  const double payment = (1.0 - 1.0 / static_cast<double>(n)) * report;

  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    double best_other = 0.0;
    std::int64_t ties = 0;
    for (std::int64_t i = 1; i < n; ++i) {
      const double r = unif(rng);
      if (r > best_other) {
        best_other = r;
        ties = 0;
      } else if (r == best_other) {
        ++ties;
      }
    }
    double payoff = 0.0;
    if (report > best_other) {
      payoff = v - payment;
    } else if (report == best_other) {
      std::uniform_int_distribution<std::int64_t> lottery(0, ties + 1);
      if (lottery(rng) == 0) payoff = v - payment;
    }
    sum += payoff;
    sum_sq += payoff * payoff;
  }

  MonteCarloResult out;
  out.samples = samples;
  out.mean = sum / static_cast<double>(samples);
  const double var =
      (sum_sq - sum * sum / static_cast<double>(samples)) / static_cast<double>(samples - 1);
  out.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
  return out;
}

// Worst-case simulation: opponents report the envelope n/(n-1) times
// their valuation. The sample mean estimates worst_case_payoff(v, b, n).
inline MonteCarloResult monte_carlo_worst_case(double v, double b, std::int64_t n,
                                               std::int64_t samples, std::uint64_t seed) {
  detail::check_valuation(v);
  if (n < 2) throw std::invalid_argument("auction: need at least 2 bidders");
  if (samples < 1000) throw std::invalid_argument("auction: need at least 1000 samples");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double envelope = static_cast<double>(n) / static_cast<double>(n - 1);
  const double payment = (1.0 - 1.0 / static_cast<double>(n)) * b;

  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    double best_other = 0.0;
    for (std::int64_t i = 1; i < n; ++i) best_other = std::max(best_other, envelope * unif(rng));
    const double payoff = b > best_other ? v - payment : 0.0;
    sum += payoff;
    sum_sq += payoff * payoff;
  }

  MonteCarloResult out;
  out.samples = samples;
  out.mean = sum / static_cast<double>(samples);
  const double var =
      (sum_sq - sum * sum / static_cast<double>(samples)) / static_cast<double>(samples - 1);
  out.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
  return out;
}

}  // namespace csafe
