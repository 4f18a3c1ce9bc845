#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "csafe/rational.hpp"

namespace csafe {

// m parallel links with speeds 1 = alpha_1 >= ... >= alpha_m > 0 and a
// value scale X. A player sending on link i shared with n_i - 1 others
// earns X * alpha_i / n_i. Floating point throughout; the n = 2, m = 2
// member of the family is also available exactly via the 2x2 game
// constructor.
struct LoadBalancingFamily {
  std::vector<double> alphas;
  double X = 1.0;

  LoadBalancingFamily(std::vector<double> a, double x) : alphas(std::move(a)), X(x) {
    if (alphas.size() < 2)
      throw std::invalid_argument("load balancing family: need at least 2 links");
    if (alphas.front() != 1.0)
      throw std::invalid_argument("load balancing family: fastest link speed must be 1");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (alphas[i] <= 0.0)
        throw std::invalid_argument("load balancing family: speeds must be positive");
      if (i > 0 && alphas[i] > alphas[i - 1])
        throw std::invalid_argument("load balancing family: speeds must be non-increasing");
    }
    if (X <= 0.0) throw std::invalid_argument("load balancing family: X must be positive");
  }

  std::size_t links() const { return alphas.size(); }
  double alpha_sum() const { return std::accumulate(alphas.begin(), alphas.end(), 0.0); }
};

// How the n-1 other players distribute themselves over the links.
struct SplitProfile {
  std::vector<std::int64_t> counts;
};

inline double link_payoff(const LoadBalancingFamily& fam, std::size_t link,
                          std::int64_t load) {
  if (link >= fam.links()) throw std::out_of_range("link_payoff: bad link index");
  if (load < 1) throw std::invalid_argument("link_payoff: load must be at least 1");
  return fam.X * fam.alphas[link] / static_cast<double>(load);
}

// Verified pure equilibrium assigning players to links roughly in
// proportion to speed: the ceiling count on link 1, largest-remainder
// rounding on the rest, then greedy best-response repair.
inline std::vector<std::int64_t> partition_equilibrium(const LoadBalancingFamily& fam,
                                                       std::int64_t n) {
  const std::size_t m = fam.links();
  if (n < static_cast<std::int64_t>(m))
    throw std::invalid_argument("partition_equilibrium: need at least one player per link");

  const double total = fam.alpha_sum();
  std::vector<std::int64_t> counts(m, 0);
  counts[0] = static_cast<std::int64_t>(std::ceil(fam.alphas[0] / total * n));
  std::int64_t assigned = counts[0];
  std::vector<std::pair<double, std::size_t>> remainders;
  for (std::size_t i = 1; i < m; ++i) {
    const double share = fam.alphas[i] / total * n;
    counts[i] = static_cast<std::int64_t>(std::floor(share));
    assigned += counts[i];
    remainders.emplace_back(share - std::floor(share), i);
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; assigned < n; ++r) {
    ++counts[remainders[r % remainders.size()].second];
    ++assigned;
  }
  while (assigned > n) {  // the ceiling on link 1 can overshoot for small n
    for (std::size_t i = m; i-- > 0 && assigned > n;) {
      if (counts[i] > 0 && !(i == 0 && counts[i] == 1)) {
        --counts[i];
        --assigned;
        break;
      }
    }
  }

  // Best-response repair: move a player whenever switching links pays.
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t i = 0; i < m && !moved; ++i) {
      if (counts[i] == 0) continue;
      const double here = fam.alphas[i] / static_cast<double>(counts[i]);
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        if (fam.alphas[j] / static_cast<double>(counts[j] + 1) > here) {
          --counts[i];
          ++counts[j];
          moved = true;
          break;
        }
      }
    }
  }

  // Equilibrium certificate.
  for (std::size_t i = 0; i < m; ++i) {
    if (counts[i] == 0) continue;
    const double here = fam.alphas[i] / static_cast<double>(counts[i]);
    for (std::size_t j = 0; j < m; ++j)
      if (j != i && fam.alphas[j] / static_cast<double>(counts[j] + 1) > here)
        throw std::logic_error("partition_equilibrium: repair did not converge");
  }
  return counts;
}

// Upper bound on the constructed equilibrium payoff: X * sum(alpha) / n.
inline double nash_value_bound(const LoadBalancingFamily& fam, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("nash_value_bound: n must be at least 1");
  return fam.X * fam.alpha_sum() / static_cast<double>(n);
}

// Link-choice mixture p_i proportional to prod_{j != i} alpha_j. For two
// links this is (alpha/(1+alpha), 1/(1+alpha)).
inline std::vector<double> safety_mixture(const LoadBalancingFamily& fam) {
  const std::size_t m = fam.links();
  std::vector<double> weights(m, 1.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) weights[i] *= fam.alphas[j];
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  return weights;
}

struct GuaranteedValue {
  double value = 0.0;
  SplitProfile split;
  bool exhaustive = true;
};

namespace detail {

inline double split_payoff(const LoadBalancingFamily& fam, const std::vector<double>& t,
                           const std::vector<std::int64_t>& counts) {
  double v = 0.0;
  for (std::size_t i = 0; i < fam.links(); ++i)
    v += t[i] * fam.X * fam.alphas[i] / static_cast<double>(counts[i] + 1);
  return v;
}

// Number of ways to place `others` indistinguishable players on m links,
// saturating at `cap`.
inline std::uint64_t composition_count(std::int64_t others, std::size_t m,
                                       std::uint64_t cap) {
  std::uint64_t count = 1;
  for (std::size_t i = 1; i < m; ++i) {
    count = count * static_cast<std::uint64_t>(others + static_cast<std::int64_t>(i)) /
            static_cast<std::uint64_t>(i);
    if (count > cap) return cap + 1;
  }
  return count;
}

}  // namespace detail

// Exact worst case of the mixture t over all integer splits of the other
// n-1 players. Full enumeration up to 1e7 splits; beyond that, greedy
// single-move descent from the balanced split (the objective is convex in
// the counts, so the local minimum is global) with exhaustive = false.
inline GuaranteedValue guaranteed_value_exact(const LoadBalancingFamily& fam, std::int64_t n,
                                              const std::vector<double>& t) {
  const std::size_t m = fam.links();
  if (n < 1) throw std::invalid_argument("guaranteed_value_exact: n must be at least 1");
  if (t.size() != m)
    throw std::invalid_argument("guaranteed_value_exact: mixture size does not match links");
  const std::int64_t others = n - 1;

  GuaranteedValue best;
  if (detail::composition_count(others, m, 10'000'000) <= 10'000'000) {
    std::vector<std::int64_t> counts(m, 0);
    counts[m - 1] = others;
    bool first = true;
    for (;;) {
      const double v = detail::split_payoff(fam, t, counts);
      if (first || v < best.value) {
        best.value = v;
        best.split.counts = counts;
        first = false;
      }
      // Odometer over compositions of `others` into m parts.
      std::size_t i = m - 1;
      while (i > 0 && counts[i] == 0) --i;
      if (i == 0) break;
      const std::int64_t tail = counts[i] - 1;
      counts[i] = 0;
      ++counts[i - 1];
      counts[m - 1] = tail;
    }
    best.exhaustive = true;
    return best;
  }

  // Balanced start, then steepest single-unit moves.
  std::vector<std::int64_t> counts(m, others / static_cast<std::int64_t>(m));
  std::int64_t assigned = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  for (std::size_t i = 0; assigned < others; ++i, ++assigned) ++counts[i % m];

  double current = detail::split_payoff(fam, t, counts);
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t from = 0; from < m; ++from) {
      if (counts[from] == 0) continue;
      for (std::size_t to = 0; to < m; ++to) {
        if (to == from) continue;
        --counts[from];
        ++counts[to];
        const double v = detail::split_payoff(fam, t, counts);
        if (v < current - 1e-15) {
          current = v;
          improved = true;
        } else {
          ++counts[from];
          --counts[to];
        }
      }
    }
  }
  best.value = current;
  best.split.counts = counts;
  best.exhaustive = false;
  return best;
}

// Continuous adversary lower bound for two links: the mixture's payoff
// when a beta fraction of the other players takes the slow link, relaxed
// to real beta.
inline double continuous_bound(const LoadBalancingFamily& fam, std::int64_t n, double beta) {
  if (fam.links() != 2)
    throw std::invalid_argument("continuous_bound: defined for two links only");
  if (n < 1) throw std::invalid_argument("continuous_bound: n must be at least 1");
  if (beta < 0.0 || beta > 1.0)
    throw std::invalid_argument("continuous_bound: beta must lie in [0,1]");
  const double alpha = fam.alphas[1];
  const double nd = static_cast<double>(n);
  return fam.X * alpha / (1.0 + alpha) * (nd + 2.0) /
         ((1.0 + beta * nd) * (nd - beta * nd + 1.0));
}

// Large-n competitive ratio of the mixture:
// sum(alpha) * sum_i prod_{j!=i} alpha_j / (m^2 * prod alpha_j).
inline double ratio_limit(const LoadBalancingFamily& fam) {
  const std::size_t m = fam.links();
  double prod = 1.0;
  for (double a : fam.alphas) prod *= a;
  double sum_partial = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double partial = 1.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) partial *= fam.alphas[j];
    sum_partial += partial;
  }
  return fam.alpha_sum() * sum_partial / (static_cast<double>(m * m) * prod);
}

// Exact-rational variants for inequality checks on rational speeds.
inline Rational ratio_limit_exact(const std::vector<Rational>& alphas) {
  const std::size_t m = alphas.size();
  Rational prod = 1, sum = 0, sum_partial = 0;
  for (const Rational& a : alphas) {
    prod *= a;
    sum += a;
  }
  for (std::size_t i = 0; i < m; ++i) {
    Rational partial = 1;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) partial *= alphas[j];
    sum_partial += partial;
  }
  return sum * sum_partial / (Rational(static_cast<long long>(m * m)) * prod);
}

inline Rational k_regularity_exact(const std::vector<Rational>& alphas) {
  Rational sum = 0;
  for (const Rational& a : alphas) sum += a;
  const Rational q = sum / Rational(static_cast<long long>(alphas.size()));
  return q / alphas.back();
}

// Average speed over slowest speed, Q / alpha_m.
inline double k_regularity(const LoadBalancingFamily& fam) {
  const double q = fam.alpha_sum() / static_cast<double>(fam.links());
  return q / fam.alphas.back();
}

struct CombinedStrategy {
  std::vector<double> probs;
  double ratio_bound = 1.0;
};

// Two-link strategy capping the ratio at 4/3: the product mixture when
// alpha >= 1/3, the fast link outright otherwise.
inline CombinedStrategy combined_strategy(double alpha) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("combined strategy: alpha must be in (0,1]");
  CombinedStrategy out;
  if (alpha >= 1.0 / 3.0) {
    out.probs = {alpha / (1.0 + alpha), 1.0 / (1.0 + alpha)};
    out.ratio_bound = (1.0 + alpha) * (1.0 + alpha) / (4.0 * alpha);
  } else {
    out.probs = {1.0, 0.0};
    out.ratio_bound = 1.0 + alpha;
  }
  return out;
}

struct RatioReport {
  std::int64_t n = 0;
  double nash_bound = 0.0;
  double guaranteed = 0.0;
  double ratio = 0.0;
  double limit_ratio = 0.0;
  bool exhaustive = true;
};

inline std::vector<RatioReport> ratio_table(const LoadBalancingFamily& fam,
                                            const std::vector<std::int64_t>& n_values) {
  const std::vector<double> mix = safety_mixture(fam);
  std::vector<RatioReport> out;
  for (std::int64_t n : n_values) {
    if (n < static_cast<std::int64_t>(fam.links()))
      throw std::invalid_argument("ratio_table: n must be at least the number of links");
    RatioReport row;
    row.n = n;
    row.nash_bound = nash_value_bound(fam, n);
    GuaranteedValue gv = guaranteed_value_exact(fam, n, mix);
    row.guaranteed = gv.value;
    row.exhaustive = gv.exhaustive;
    row.ratio = row.nash_bound / row.guaranteed;
    row.limit_ratio = ratio_limit(fam);
    out.push_back(row);
  }
  return out;
}

}  // namespace csafe
