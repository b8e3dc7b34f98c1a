#pragma once

#include "defsum/characters.hpp"
#include "defsum/decomp.hpp"
#include "defsum/defset.hpp"
#include "defsum/density.hpp"
#include "defsum/desugar.hpp"
#include "defsum/error.hpp"
#include "defsum/expsum.hpp"
#include "defsum/gf/field.hpp"
#include "defsum/interpret.hpp"
#include "defsum/irreducibility.hpp"
#include "defsum/lab/corpus.hpp"
#include "defsum/lab/interval.hpp"
#include "defsum/lab/kloosterman.hpp"
#include "defsum/lab/report.hpp"
#include "defsum/numeric.hpp"
#include "defsum/parser.hpp"
#include "defsum/spectrum.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace defsum::lab {

struct PaperConfig {
  /// Restrict prime ranges to p <= 20 wherever a range is scanned.
  bool quick = false;
  double budget = 1e10;
  unsigned workers = 1;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr int kCriterionCount = 11;

namespace detail {

inline std::vector<std::uint64_t> odd_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (auto p : primes_between(lo, hi)) {
    if (p != 2) out.push_back(p);
  }
  return out;
}

/// (p, nu) with p^nu <= limit, ordered by p^nu.
inline std::vector<std::pair<std::uint64_t, unsigned>> prime_powers(std::uint64_t limit) {
  std::vector<std::pair<std::uint64_t, std::pair<std::uint64_t, unsigned>>> all;
  for (auto p : primes_between(2, limit)) {
    std::uint64_t q = p;
    for (unsigned nu = 1; q <= limit; ++nu, q *= p) all.push_back({q, {p, nu}});
  }
  std::sort(all.begin(), all.end());
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (const auto& a : all) out.push_back(a.second);
  return out;
}

class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ < 5) text_ += (text_.empty() ? "" : "; ") + what;
  }
  bool empty() const noexcept { return count_ == 0; }
  std::string str() const {
    return count_ <= 5 ? text_ : text_ + "; ... " + std::to_string(count_ - 5) + " more";
  }

 private:
  std::size_t count_ = 0;
  std::string text_;
};

inline DefinableFormula squares() { return parse_definable("exists y. x = y^2", {"x"}); }

inline SumSpec squares_sum() {
  return SumSpec{squares(), RationalMap(Term::variable("x")), RationalMap(Term::constant(1)), 1, 0};
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline CriterionResult squares_count(const PaperConfig& cfg) {
  const EvalOptions opts{cfg.budget, cfg.workers, Strategy::Brute};
  Failures bad;
  std::vector<std::pair<std::uint64_t, unsigned>> fields;
  for (auto p : odd_primes(3, cfg.quick ? 19 : 499)) fields.emplace_back(p, 1);
  for (auto [p, nu] : cfg.quick ? std::vector<std::pair<std::uint64_t, unsigned>>{{5, 2}}
                                : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 2}, {7, 2}, {11, 2}}) {
    fields.emplace_back(p, nu);
  }
  for (auto [p, nu] : fields) {
    const Field f = Field::make(p, nu);
    const auto c = count(squares(), f, {}, opts);
    if (c != (f.q() + 1) / 2) bad.add("q=" + std::to_string(f.q()) + " count " + std::to_string(c));
  }
  return {1, "squares count (q+1)/2", bad.empty(),
          bad.empty() ? std::to_string(fields.size()) + " fields" : bad.str()};
}

inline CriterionResult gauss_identity(const PaperConfig& cfg) {
  const EvalOptions opts{cfg.budget, cfg.workers, Strategy::Brute};
  Failures bad;
  double worst = 0;
  const auto primes = odd_primes(3, cfg.quick ? 19 : 499);
  for (auto p : primes) {
    const auto r = sum(squares_sum(), Field::prime(p), {}, opts);
    const double dev = std::abs(std::abs(2.0 * r.value - 1.0) - std::sqrt(static_cast<double>(p)));
    worst = std::max(worst, dev);
    if (dev > 1e-6) bad.add("p=" + std::to_string(p) + " deviation " + fmt(dev));
  }
  return {2, "Gauss identity |2S-1| = sqrt(p)", bad.empty(),
          bad.empty() ? std::to_string(primes.size()) + " primes, max deviation " + fmt(worst) : bad.str()};
}

inline CriterionResult degenerate_sums(const PaperConfig& cfg) {
  const EvalOptions opts{cfg.budget, cfg.workers, Strategy::Brute};
  Failures bad;
  std::size_t checked = 0;
  const auto conic_phi = parse_definable("exists y. x^2 + 1 = y^2", {"x"});
  const RationalMap conic_g(parse_term("x^2 + 1", {"x"}));
  for (auto p : odd_primes(3, cfg.quick ? 19 : 199)) {
    if (p % 4 != 3) continue;
    const Field f = Field::prime(p);
    const SumSpec spec{conic_phi, RationalMap(Term{}), conic_g, 0, static_cast<std::int64_t>((p - 1) / 2)};
    const auto r = sum(spec, f, {}, opts);
    const double target = static_cast<double>(r.count);
    if (std::abs(r.value - Complex(target, 0)) > 1e-9) {
      bad.add("conic p=" + std::to_string(p) + " S=" + fmt(r.value.real()) + " count " + std::to_string(r.count));
    }
    ++checked;
  }
  const auto disc_phi = parse_definable("forall x. x^2 + a*x + b != 0", {"a", "b"});
  const RationalMap disc_g(parse_term("a^2 - 4*b", {"a", "b"}));
  for (auto p : odd_primes(3, cfg.quick ? 19 : 61)) {
    const Field f = Field::prime(p);
    const SumSpec spec{disc_phi, RationalMap(Term{}), disc_g, 0, static_cast<std::int64_t>((p - 1) / 2)};
    const auto r = sum(spec, f, {}, opts);
    const double target = -static_cast<double>(p * (p - 1) / 2);
    if (std::abs(r.value - Complex(target, 0)) > 1e-9) {
      bad.add("discriminant p=" + std::to_string(p) + " S=" + fmt(r.value.real()));
    }
    ++checked;
  }
  return {3, "degenerate multiplicative sums", bad.empty(),
          bad.empty() ? std::to_string(checked) + " sums equal their targets" : bad.str()};
}

inline CriterionResult reduction_identity(const PaperConfig& cfg) {
  const EvalOptions opts{cfg.budget, cfg.workers, Strategy::Brute};
  Failures bad;
  std::size_t checked = 0;
  const auto corpus = block_corpus();
  for (auto p : primes_between(2, cfg.quick ? 13 : 31)) {
    const Field f = Field::prime(p);
    const auto psi = AdditiveCharacter::from_selector(f, 1);
    const PointWeight<Rational> one = [](const std::vector<Elem>&) { return Rational(1); };
    const PointWeight<Complex> wave = [&](const std::vector<Elem>& x) { return psi(x[0]); };
    for (const auto& nb : corpus) {
      std::vector<Elem> y;
      for (auto v : nb.y) y.push_back(f.from_int(v));
      const auto exact = verify_reduction<Rational>(nb.block, f, y, one, opts);
      const auto approx = verify_reduction<Complex>(nb.block, f, y, wave, opts);
      if (!exact.equal) bad.add(nb.name + " p=" + std::to_string(p) + " beta=1");
      if (!approx.equal) bad.add(nb.name + " p=" + std::to_string(p) + " beta=psi");
      checked += 2;
    }
  }
  return {4, "reduction identity on " + std::to_string(corpus.size()) + " blocks", bad.empty(),
          bad.empty() ? std::to_string(checked) + " identities hold" : bad.str()};
}

inline CriterionResult inclusion_exclusion(const PaperConfig& cfg) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long long> num(-1000, 1000);
  std::uniform_int_distribution<long long> den(1, 1000);
  const int trials = cfg.quick ? 100 : 1000;
  Failures bad;
  for (std::size_t e = 1; e <= 8; ++e) {
    for (int t = 0; t < trials; ++t) {
      std::vector<Rational> x(e);
      Rational total = 0;
      for (auto& v : x) {
        v = Rational(num(rng), den(rng));
        total += v;
      }
      if (inclusion_exclusion_total(forward_triangular(x)) != total) bad.add("e=" + std::to_string(e));
    }
  }
  return {5, "inclusion-exclusion round trips", bad.empty(),
          bad.empty() ? std::to_string(8 * trials) + " exact round trips" : bad.str()};
}

inline CriterionResult weil_spectrum(const PaperConfig& cfg) {
  const EvalOptions opts{cfg.budget, cfg.workers, Strategy::Brute};
  const auto curve = parse_definable("y^2 = x^3 - x", {"x", "y"});
  std::vector<Rational> counts;
  for (unsigned nu = 1; nu <= 6; ++nu) counts.emplace_back(count(curve, Field::make(5, nu), {}, opts));
  Failures bad;
  std::ostringstream seq;
  for (std::size_t i = 0; i < counts.size(); ++i) seq << (i ? " " : "") << counts[i];
  const auto rec = min_recurrence(counts);
  const std::vector<Rational> expected{-25, -5, -3, 1};
  if (rec.poly != expected) bad.add("recurrence of order " + std::to_string(rec.order()));
  const auto spec = classify_weights(rec, 5);
  std::vector<int> weights;
  for (const auto& r : spec.roots) {
    if (!r.classified) bad.add("unclassified root");
    weights.push_back(r.weight);
  }
  if (weights != std::vector<int>{2, 1, 1}) bad.add("weights differ");
  if (spec.roots.empty() || std::abs(spec.roots.front().value - Complex(5, 0)) > 1e-6) bad.add("top root is not 5");
  const std::vector<Rational> four(counts.begin(), counts.begin() + 4);
  const std::vector<Rational> five(counts.begin(), counts.begin() + 5);
  if (predict_next(four, rec) != counts[4]) bad.add("prediction at nu=5");
  if (predict_next(five, rec) != counts[5]) bad.add("prediction at nu=6");
  try {
    const auto z = zeta_series(counts, rec, 5);
    if (z.numerator != std::vector<Rational>{1, 2, 5} || z.denominator != std::vector<Rational>{1, -5}) {
      bad.add("unexpected zeta function");
    }
  } catch (const SequenceError& e) {
    bad.add(std::string("zeta: ") + e.what());
  }
  return {6, "Weil spectrum of y^2 = x^3 - x over F_5", bad.empty(),
          bad.empty() ? "counts " + seq.str() + "; T^3-3T^2-5T-25; weights 2,1,1" : bad.str()};
}

inline CriterionResult density_pairs(const PaperConfig& cfg) {
  const EvalOptions opts{cfg.budget, cfg.workers, Strategy::Pruned};
  const auto primes = primes_between(5, cfg.quick ? 19 : 97);
  const std::vector<std::pair<std::string, DefinableFormula>> jobs{
      {"squares", squares()},
      {"non-squares", parse_definable("!(exists y. x = y^2)", {"x"})},
      {"irreducible quadratics", build_irreducibility_formula(2)},
      {"discriminant", parse_definable("forall x. x^2 + a*x + b != 0", {"a", "b"})},
  };
  const std::vector<std::pair<int, Rational>> expected{{1, Rational(1, 2)}, {1, Rational(1, 2)}, {2, Rational(1, 2)},
                                                       {2, Rational(1, 2)}};
  Failures bad;
  std::string found;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto d = density_fit(jobs[i].second, primes, {}, opts);
    for (const auto& c : d.clusters) {
      std::ostringstream os;
      os << jobs[i].first << " (" << c.delta << "," << c.mu << ") C=" << fmt(c.c);
      found += (found.empty() ? "" : "; ") + os.str();
    }
    const bool ok = d.unclustered.empty() && d.clusters.size() == 1 && d.clusters[0].delta == expected[i].first &&
                    d.clusters[0].mu == expected[i].second && d.clusters[0].c <= 2.0;
    if (!ok) bad.add(jobs[i].first);
  }
  return {7, "density pairs", bad.empty(), bad.empty() ? found : bad.str() + " | " + found};
}

inline CriterionResult kloosterman(const PaperConfig& cfg) {
  KloostermanConfig kc;
  kc.eval = EvalOptions{cfg.budget, cfg.workers, Strategy::Pruned};
  const auto r2 = kloosterman_experiment(2, primes_between(2, cfg.quick ? 19 : 199), kc);
  const auto r3 = kloosterman_experiment(3, primes_between(2, cfg.quick ? 13 : 61), kc);
  Failures bad;
  for (const auto* r : {&r2, &r3}) {
    for (const auto& c : r->checks) {
      if (!c.pass) bad.add(r->name + ": " + c.name);
    }
  }
  return {8, "Kloosterman bounds and irreducible count", bad.empty(),
          bad.empty() ? "max |K*|/p^(n-1/2): n=2 " + r2.summary[0].second.substr(0, 8) + ", n=3 " +
                            r3.summary[0].second.substr(0, 8)
                      : bad.str()};
}

inline CriterionResult intervals(const PaperConfig& cfg) {
  const EvalOptions opts{cfg.budget, cfg.workers, Strategy::Brute};
  const auto primes = primes_between(5, cfg.quick ? 19 : 499);
  IntervalConfig ic;
  ic.eval = opts;
  const auto report = interval_experiment(squares(), primes, ic);
  std::size_t flagged = 0;
  for (const auto& row : report.rows) flagged += row[2] == "1" ? 1 : 0;
  Failures bad;
  if (flagged > 2) bad.add(std::to_string(flagged) + " squares sets are intervals");
  for (auto p : primes) {
    const std::uint64_t len = p / 3;
    const auto xs = residues(interval_formula(1, len), Field::prime(p), {}, opts);
    const double mag = std::abs(weyl_sum(xs, p));
    const double sine = interval_geometric_magnitude(len, p);
    if (xs.size() != len || !is_interval(xs, p).is_interval) bad.add("synthetic p=" + std::to_string(p) + " not an interval");
    if (std::abs(mag - sine) > 1e-9) bad.add("p=" + std::to_string(p) + " |S| differs from sine ratio");
    if (p >= 100 && mag <= 0.25 * static_cast<double>(p)) bad.add("p=" + std::to_string(p) + " |S| <= p/4");
  }
  return {9, "interval finiteness and geometric sums", bad.empty(),
          bad.empty() ? "squares intervals at " + report.summary[0].second : bad.str()};
}

inline CriterionResult twists(const PaperConfig& cfg) {
  const EvalOptions opts{cfg.budget, cfg.workers, Strategy::Brute};
  const SumSpec spec{squares(), RationalMap(Term{}), RationalMap(Term::constant(1)), 1, 0};
  Failures bad;
  const auto primes = odd_primes(3, cfg.quick ? 19 : 199);
  for (auto p : primes) {
    const auto r = twist_scan(spec, Field::prime(p), 3.0, opts);
    for (const auto& h : r.exceptions) {
      if (h[0] != 0) bad.add("p=" + std::to_string(p) + " h=" + std::to_string(h[0]));
    }
  }
  return {10, "twist scan exceptions", bad.empty(),
          bad.empty() ? "no exceptions with h != 0 over " + std::to_string(primes.size()) + " primes" : bad.str()};
}

inline void character_properties(std::uint64_t limit, Failures& bad) {
  for (auto [p, nu] : prime_powers(limit)) {
    const Field f = Field::make(p, nu);
    const std::uint64_t q = f.q();
    const double tol = 1e-9 * static_cast<double>(q);
    for (std::uint64_t a = 0; a < q; ++a) {
      const AdditiveCharacter psi(f, f.element(a));
      Complex s = 0;
      for (std::uint64_t x = 0; x < q; ++x) s += psi(f.element(x));
      const double want = a == 0 ? static_cast<double>(q) : 0.0;
      if (std::abs(s - want) > tol) bad.add("additive orthogonality q=" + std::to_string(q));
    }
    for (std::uint64_t m = 0; m + 1 < q; ++m) {
      const MultiplicativeCharacter chi(f, static_cast<std::int64_t>(m));
      Complex s = 0;
      for (std::uint64_t x = 1; x < q; ++x) s += chi(f.element(x));
      const double want = m == 0 ? static_cast<double>(q - 1) : 0.0;
      if (std::abs(s - want) > tol) bad.add("multiplicative orthogonality q=" + std::to_string(q));
    }
    for (std::uint64_t m = 1; m + 1 < q; ++m) {
      const MultiplicativeCharacter chi(f, static_cast<std::int64_t>(m));
      std::vector<Complex> chis(q);
      for (std::uint64_t x = 0; x < q; ++x) chis[x] = chi(f.element(x));
      for (std::uint64_t a = 1; a < q; ++a) {
        const AdditiveCharacter psi(f, f.element(a));
        Complex g = 0;
        for (std::uint64_t x = 1; x < q; ++x) g += chis[x] * psi(f.element(x));
        if (std::abs(std::abs(g) - std::sqrt(static_cast<double>(q))) > 1e-6) {
          bad.add("Gauss sum q=" + std::to_string(q) + " m=" + std::to_string(m) + " a=" + std::to_string(a));
        }
      }
    }
  }
}

inline void trace_norm_properties(std::uint64_t limit, Failures& bad) {
  for (auto [p, nu] : prime_powers(limit)) {
    const Field f = Field::make(p, nu);
    const std::uint64_t q = f.q();
    std::vector<std::uint64_t> tr(p, 0);
    std::vector<std::uint64_t> nm(p, 0);
    for (std::uint64_t i = 0; i < q; ++i) {
      ++tr[f.trace_to_prime(f.element(i))];
      ++nm[f.norm_to_prime(f.element(i))];
    }
    for (std::uint64_t c = 0; c < p; ++c) {
      if (tr[c] != q / p) bad.add("trace fibre q=" + std::to_string(q));
      const std::uint64_t want = c == 0 ? 1 : (q - 1) / (p - 1);
      if (nm[c] != want) bad.add("norm fibre q=" + std::to_string(q));
    }
    for (unsigned d = 2; d < nu; ++d) {
      if (nu % d != 0) continue;
      const Field base = Field::make(p, d);
      const FieldTower tower(base, nu / d);
      std::map<std::uint32_t, std::uint64_t> rt;
      std::map<std::uint32_t, std::uint64_t> rn;
      for (std::uint64_t i = 0; i < q; ++i) {
        const Elem y = tower.top().element(i);
        ++rt[tower.trace(y).v];
        ++rn[tower.norm(y).v];
      }
      const std::uint64_t qb = base.q();
      if (rt.size() != qb || rn.size() != qb) bad.add("relative map not onto, q=" + std::to_string(q));
      for (const auto& [v, c] : rt) {
        if (c != q / qb) bad.add("relative trace fibre q=" + std::to_string(q) + " over " + std::to_string(qb));
      }
      for (const auto& [v, c] : rn) {
        if (c != (v == 0 ? 1 : (q - 1) / (qb - 1))) {
          bad.add("relative norm fibre q=" + std::to_string(q) + " over " + std::to_string(qb));
        }
      }
    }
  }
}

inline void desugar_properties(std::uint64_t max_p, double budget, Failures& bad) {
  for (const auto& nf : formula_corpus()) {
    const Formula sugar_free = desugar(nf.phi.formula);
    const DefinableFormula df = nf.phi;
    for (auto p : primes_between(2, max_p)) {
      const Field f = Field::prime(p);
      const auto brute = enumerate_set(df, f, {}, EvalOptions{budget, 1, Strategy::Brute});
      const auto pruned = enumerate_set(df, f, {}, EvalOptions{budget, 1, Strategy::Pruned});
      std::vector<std::vector<Elem>> direct;
      const std::size_t n = df.vars.size();
      std::vector<Elem> pt(n, Elem{0});
      for (bool done = false; !done;) {
        std::map<std::string, Elem> env;
        for (std::size_t i = 0; i < n; ++i) env[df.vars[i]] = pt[i];
        const bool a = interpret(nf.phi.formula, env, f);
        if (a != interpret(sugar_free, env, f)) bad.add(nf.name + " desugared differs at p=" + std::to_string(p));
        if (a) direct.push_back(pt);
        done = true;
        for (std::size_t i = n; i-- > 0;) {
          if (++pt[i].v < f.q()) {
            done = false;
            break;
          }
          pt[i].v = 0;
        }
      }
      if (brute.points != direct) bad.add(nf.name + " brute differs at p=" + std::to_string(p));
      if (pruned.points != direct) bad.add(nf.name + " pruned differs at p=" + std::to_string(p));
    }
  }
}

/// A CSV document produced with the given worker count.
inline std::string determinism_document(unsigned workers, double budget) {
  const EvalOptions opts{budget, workers, Strategy::Brute};
  std::ostringstream os;
  const auto circle = parse_definable("x^2 + y^2 = 1", {"x", "y"});
  const SumSpec circle_sum{circle, RationalMap(parse_term("x + y", {"x", "y"})), RationalMap(parse_term("x", {"x"})), 1,
                           1};
  for (auto p : {11ULL, 13ULL, 17ULL, 19ULL}) {
    const Field f = Field::prime(p);
    const auto r = sum(circle_sum, f, {}, opts);
    os << p << ',' << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << ',' << r.count << ','
       << r.pole_count << '\n';
    for (const auto& pt : enumerate_set(circle, f, {}, opts).points) os << pt[0].v << ' ' << pt[1].v << ';';
    os << '\n';
  }
  const auto c = companion_sum(squares_sum(), Field::prime(5), 3, {}, opts);
  os << format_double(c.value.real()) << ',' << format_double(c.value.imag()) << ',' << c.count << '\n';
  const auto t = twist_scan(squares_sum(), Field::prime(13), 3.0, opts);
  for (double m : t.magnitudes) os << format_double(m) << ' ';
  os << '\n';
  return os.str();
}

inline CriterionResult property_suites(const PaperConfig& cfg) {
  Failures bad;
  character_properties(cfg.quick ? 25 : 121, bad);
  trace_norm_properties(cfg.quick ? 81 : 729, bad);
  desugar_properties(cfg.quick ? 7 : 13, cfg.budget, bad);
  const std::string one = determinism_document(1, cfg.budget);
  for (unsigned w : {2U, 8U}) {
    if (determinism_document(w, cfg.budget) != one) bad.add("output differs at " + std::to_string(w) + " workers");
  }
  return {11, "property suites", bad.empty(),
          bad.empty() ? "characters, trace/norm, desugar, determinism" : bad.str()};
}

}  // namespace detail

/// Runs one criterion (1..11). Exceptions are reported as failures.
inline CriterionResult run_criterion(int id, const PaperConfig& cfg) {
  using Fn = CriterionResult (*)(const PaperConfig&);
  static const Fn table[kCriterionCount] = {
      detail::squares_count, detail::gauss_identity, detail::degenerate_sums, detail::reduction_identity,
      detail::inclusion_exclusion, detail::weil_spectrum, detail::density_pairs, detail::kloosterman,
      detail::intervals, detail::twists, detail::property_suites};
  if (id < 1 || id > kCriterionCount) throw DomainError("criterion id must be 1.." + std::to_string(kCriterionCount));
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](cfg);
  } catch (const std::exception& e) {
    r.id = id;
    r.title = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// All criteria in order. A budget too small for even the first job raises
/// BudgetError before anything runs.
inline std::vector<CriterionResult> run_paper_examples(const PaperConfig& cfg = {},
                                                       const std::function<void(const CriterionResult&)>& on_result = {}) {
  check_budget(CompiledFormula(detail::squares(), Field::prime(3)).cost(), cfg.budget);
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, cfg));
    if (on_result) on_result(out.back());
  }
  return out;
}

inline ExperimentReport paper_examples_report(const std::vector<CriterionResult>& results) {
  ExperimentReport r;
  r.name = "paper-examples";
  r.columns = {"id", "title", "pass", "seconds"};
  for (const auto& c : results) {
    r.rows.push_back({std::to_string(c.id), "\"" + c.title + "\"", c.pass ? "1" : "0", format_double(c.seconds)});
    r.add_check(std::to_string(c.id) + " " + c.title, c.pass, c.detail);
  }
  return r;
}

}  // namespace defsum::lab
