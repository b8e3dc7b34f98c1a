#pragma once

#include "defsum/defset.hpp"
#include "defsum/error.hpp"
#include "defsum/lab/interval.hpp"
#include "defsum/lab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace defsum::lab {

/// Star discrepancy of the points x/p, x in xs.
inline double star_discrepancy(std::vector<std::uint64_t> xs, std::uint64_t p) {
  if (xs.empty()) return 1.0;
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double u = static_cast<double>(xs[i]) / static_cast<double>(p);
    d = std::max({d, static_cast<double>(i + 1) / n - u, u - static_cast<double>(i) / n});
  }
  return d;
}

struct EquidistResult {
  std::uint64_t p = 0;
  std::uint64_t count = 0;
  /// W_h for h = 1..H.
  std::vector<Complex> weyl;
  double discrepancy = 0;
};

inline EquidistResult equidistribution(const DefinableFormula& phi, std::uint64_t p, std::uint64_t h_max,
                                       const EvalOptions& opts = {}) {
  if (h_max < 1) throw DomainError("need H >= 1");
  const auto xs = residues(phi, Field::prime(p), {}, opts);
  EquidistResult r;
  r.p = p;
  r.count = xs.size();
  for (std::uint64_t h = 1; h <= h_max; ++h) r.weyl.push_back(weyl_sum(xs, p, h));
  r.discrepancy = star_discrepancy(xs, p);
  return r;
}

/// Weyl sums W_h, normalized |W_h| / count, and the star discrepancy, for
/// each prime.
inline ExperimentReport equidist_report(const DefinableFormula& phi, const std::vector<std::uint64_t>& primes,
                                        std::uint64_t h_max, const EvalOptions& opts = {}) {
  ExperimentReport r;
  r.name = "equidist";
  r.columns = {"p", "count", "h", "re", "im", "abs", "normalized", "discrepancy"};
  double worst = 0;
  for (auto p : primes) {
    const auto e = equidistribution(phi, p, h_max, opts);
    for (std::size_t i = 0; i < e.weyl.size(); ++i) {
      const double mag = std::abs(e.weyl[i]);
      const double norm = e.count == 0 ? 0.0 : mag / static_cast<double>(e.count);
      worst = std::max(worst, norm);
      r.rows.push_back({std::to_string(p), std::to_string(e.count), std::to_string(i + 1), format_double(e.weyl[i].real()),
                        format_double(e.weyl[i].imag()), format_double(mag), format_double(norm),
                        format_double(e.discrepancy)});
    }
  }
  r.summary.emplace_back("max normalized Weyl sum", format_double(worst));
  return r;
}

}  // namespace defsum::lab
