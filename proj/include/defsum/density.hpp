#pragma once

#include "defsum/defset.hpp"
#include "defsum/error.hpp"
#include "defsum/formula.hpp"
#include "defsum/gf/field.hpp"
#include "defsum/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace defsum {

/// A cluster of primes whose counts follow mu * p^delta.
struct DensityEstimate {
  int delta = 0;
  Rational mu = 0;
  /// Largest |count - mu p^delta| / p^(delta - 1/2) over the support.
  double c = 0;
  std::vector<std::uint64_t> support;
  /// Seeded from a single prime and never confirmed by another.
  bool tentative() const noexcept { return support.size() < 2; }
};

struct DensityRecord {
  std::uint64_t p = 0;
  std::uint64_t count = 0;
  int delta_p = 0;
  double mu_p = 0;
  /// Index into DensityReport::clusters, or -1 when unclustered.
  int cluster = -1;
  double normalized_error = 0;
};

struct DensityReport {
  std::vector<DensityEstimate> clusters;
  /// Ascending by prime.
  std::vector<DensityRecord> records;
  std::vector<std::uint64_t> unclustered;
};

inline constexpr int kMaxDensityDenominator = 64;
/// A prime joins a cluster within 3 normalized units; a new cluster's mu is
/// the simplest rational within 1 unit of count / p^delta.
inline constexpr double kClusterWindow = 3.0;
inline constexpr double kSeedWindow = 1.0;

/// Smallest-denominator positive rational within `window` of x, nearest
/// among equal denominators.
inline std::optional<Rational> simplest_rational_near(double x, double window, int max_den = kMaxDensityDenominator) {
  for (int d = 1; d <= max_den; ++d) {
    const double centre = x * d;
    std::optional<Rational> best;
    double best_err = 0;
    for (auto n = static_cast<long long>(std::floor(centre - window * d));
         n <= static_cast<long long>(std::ceil(centre + window * d)); ++n) {
      if (n <= 0) continue;
      const double err = std::abs(static_cast<double>(n) / d - x);
      if (err > window) continue;
      if (!best || err < best_err) {
        best = Rational(n, d);
        best_err = err;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

inline double density_error(std::uint64_t p, std::uint64_t count, int delta, const Rational& mu) {
  const double pd = static_cast<double>(p);
  const double expected = mu.convert_to<double>() * std::pow(pd, delta);
  return std::abs(static_cast<double>(count) - expected) / std::pow(pd, delta - 0.5);
}

/// Groups (p, count) samples into density pairs. Primes are visited from the
/// largest down; each joins the existing cluster with the smallest normalized
/// error when that error is at most kClusterWindow, and otherwise seeds a new cluster.
/// An empty set (count 0) belongs to the sentinel pair (0, 0).
inline DensityReport cluster_counts(std::vector<std::pair<std::uint64_t, std::uint64_t>> samples) {
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  DensityReport report;
  for (const auto& [p, count] : samples) {
    if (p < 2) throw DomainError("density samples need primes");
    DensityRecord rec;
    rec.p = p;
    rec.count = count;
    const double lp = std::log(static_cast<double>(p));
    if (count > 0) {
      rec.delta_p = static_cast<int>(std::lround(std::log(static_cast<double>(count)) / lp));
      rec.mu_p = static_cast<double>(count) / std::pow(static_cast<double>(p), rec.delta_p);
    }
    int best = -1;
    double best_err = 0;
    for (std::size_t i = 0; i < report.clusters.size(); ++i) {
      const auto& cl = report.clusters[i];
      const bool sentinel = cl.mu == 0;
      if (sentinel != (count == 0)) continue;
      const double err = sentinel ? 0.0 : density_error(p, count, cl.delta, cl.mu);
      if (err <= kClusterWindow && (best < 0 || err < best_err)) {
        best = static_cast<int>(i);
        best_err = err;
      }
    }
    if (best < 0) {
      DensityEstimate seed;
      if (count > 0) {
        const auto mu = simplest_rational_near(rec.mu_p, kSeedWindow / std::sqrt(static_cast<double>(p)));
        if (!mu) {
          report.unclustered.push_back(p);
          report.records.push_back(rec);
          continue;
        }
        seed.delta = rec.delta_p;
        seed.mu = *mu;
      }
      report.clusters.push_back(seed);
      best = static_cast<int>(report.clusters.size() - 1);
      best_err = count == 0 ? 0.0 : density_error(p, count, seed.delta, seed.mu);
    }
    auto& cl = report.clusters[static_cast<std::size_t>(best)];
    cl.support.push_back(p);
    cl.c = std::max(cl.c, best_err);
    rec.cluster = best;
    rec.normalized_error = best_err;
    report.records.push_back(rec);
  }
  for (auto& cl : report.clusters) std::sort(cl.support.begin(), cl.support.end());
  std::reverse(report.records.begin(), report.records.end());
  std::sort(report.unclustered.begin(), report.unclustered.end());
  return report;
}

/// Parameter choice per prime field; the default is the empty tuple.
using ParamPolicy = std::function<std::vector<Elem>(const Field&)>;

inline DensityReport density_fit(const DefinableFormula& phi, const std::vector<std::uint64_t>& primes,
                                 const ParamPolicy& y_policy = {}, const EvalOptions& opts = {}) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> samples;
  for (auto p : primes) {
    const Field field = Field::prime(p);
    const std::vector<Elem> y = y_policy ? y_policy(field) : std::vector<Elem>{};
    samples.emplace_back(p, count(phi, field, y, opts));
  }
  return cluster_counts(std::move(samples));
}

}  // namespace defsum
