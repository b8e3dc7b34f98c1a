#include "defsum/defsum.hpp"
#include "job.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace defsum;
using defsum::lab::ExperimentReport;
using defsum::lab::format_double;
using nlohmann::json;

struct Global {
  double budget = 1e8;
  unsigned workers = 1;
  std::string out;
  std::string strategy;

  EvalOptions eval(Strategy fallback = Strategy::Brute) const {
    EvalOptions o;
    o.budget = budget;
    o.workers = workers == 0 ? std::max(1U, std::thread::hardware_concurrency()) : workers;
    o.strategy = strategy.empty() ? fallback : (strategy == "pruned" ? Strategy::Pruned : Strategy::Brute);
    return o;
  }
};

json report_json(const ExperimentReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < r.columns.size() && i < row.size(); ++i) obj[r.columns[i]] = row[i];
    rows.push_back(obj);
  }
  json summary = json::object();
  for (const auto& [k, v] : r.summary) summary[k] = v;
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"name", r.name}, {"columns", r.columns}, {"rows", rows},
          {"summary", summary}, {"checks", checks}, {"passed", r.passed()}};
}

int emit(const ExperimentReport& r, const Global& g) {
  const bool as_json = g.out.size() >= 5 && g.out.compare(g.out.size() - 5, 5, ".json") == 0;
  const std::string body = as_json ? report_json(r).dump(2) + "\n" : r.to_csv();
  if (g.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(g.out);
    if (!f) throw Error("cannot write '" + g.out + "'");
    f << body;
  }
  std::cerr << r.human_summary();
  return r.passed() ? 0 : 1;
}

std::vector<Elem> resolve_y(const Field& field, const std::string& cli, const std::vector<std::int64_t>& job_y) {
  const auto values = cli.empty() ? job_y : tools::parse_int_list(cli);
  std::vector<Elem> out;
  for (auto v : values) out.push_back(field.from_int(v));
  return out;
}

std::int64_t resolve_chi(const std::string& cli, const std::optional<std::int64_t>& job_chi, std::uint64_t q) {
  if (!cli.empty()) {
    if (cli == "legendre") return static_cast<std::int64_t>((q - 1) / 2);
    return tools::parse_int_list(cli).at(0);
  }
  return job_chi ? *job_chi : static_cast<std::int64_t>((q - 1) / 2);
}

SumSpec make_spec(const tools::Job& job, std::int64_t psi, std::int64_t chi) {
  return SumSpec{job.phi, job.f, job.g, psi, chi};
}

std::string poly_string(const std::vector<Rational>& c) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    Rational v = c[i];
    const bool neg = v < 0;
    if (neg) v = -v;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (v != 1 || i == 0) os << v << (i ? "*" : "");
    if (i) os << "T" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  return first ? "0" : os.str();
}

std::string complex_string(Complex z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::vector<std::uint64_t> prime_range(std::uint64_t lo, std::uint64_t hi) {
  auto ps = primes_between(lo, hi);
  if (ps.empty()) throw DomainError("no primes in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return ps;
}

struct Options {
  std::string job;
  std::uint64_t p = 0;
  unsigned nu = 1;
  unsigned numax = 6;
  std::string y;
  std::string psi;
  std::string chi;
  std::uint64_t pmin = 5;
  std::uint64_t pmax = 97;
  double c = 3.0;
  double d = 1.0;
  std::uint64_t h = 1;
  unsigned n = 2;
  std::string reading = "a0";
  double bound = 3.0;
  std::uint64_t max_intervals = 2;
  bool quick = false;
  int criterion = 0;
};

int cmd_count(const Options& o, const Global& g) {
  const auto job = tools::load_job(o.job);
  const Field field = Field::make(o.p, o.nu);
  const auto y = resolve_y(field, o.y, job.y);
  const auto opts = g.eval();
  const double cost = CompiledFormula(job.phi, field, opts.strategy).cost();
  const auto n = count(job.phi, field, y, opts);
  ExperimentReport r;
  r.name = "count " + job.name;
  r.columns = {"p", "nu", "count", "cost"};
  r.rows.push_back({std::to_string(o.p), std::to_string(o.nu), std::to_string(n), format_double(cost)});
  return emit(r, g);
}

void sum_row(ExperimentReport& r, const std::string& lead, const SumReport& s) {
  r.rows.push_back({lead, std::to_string(s.nu), format_double(s.value.real()), format_double(s.value.imag()),
                    format_double(std::abs(s.value)), std::to_string(s.count), format_double(s.ratio_sqrtq)});
}

int cmd_sum(const Options& o, const Global& g) {
  const auto job = tools::load_job(o.job);
  const Field field = Field::make(o.p, o.nu);
  const auto spec = make_spec(job, o.psi.empty() ? job.psi : tools::parse_int_list(o.psi).at(0),
                              resolve_chi(o.chi, job.chi, field.q()));
  const auto s = sum(spec, field, resolve_y(field, o.y, job.y), g.eval());
  ExperimentReport r;
  r.name = "sum " + job.name;
  r.columns = {"p", "nu", "re", "im", "abs", "count", "ratio_sqrtq"};
  sum_row(r, std::to_string(o.p), s);
  r.summary.emplace_back("poles skipped", std::to_string(s.pole_count));
  r.add_check("|S| <= count", std::abs(s.value) <= static_cast<double>(s.count) + 1e-6);
  return emit(r, g);
}

int cmd_companion(const Options& o, const Global& g) {
  const auto job = tools::load_job(o.job);
  const Field base = Field::make(o.p, o.nu);
  const auto spec = make_spec(job, o.psi.empty() ? job.psi : tools::parse_int_list(o.psi).at(0),
                              resolve_chi(o.chi, job.chi, base.q()));
  const auto y = resolve_y(base, o.y, job.y);
  ExperimentReport r;
  r.name = "companion " + job.name + " over F_" + std::to_string(base.q());
  r.columns = {"degree", "nu", "re", "im", "abs", "count", "ratio_sqrtq"};
  bool bounded = true;
  for (unsigned k = 1; k <= o.numax; ++k) {
    const auto s = companion_sum(spec, base, k, y, g.eval());
    bounded = bounded && std::abs(s.value) <= static_cast<double>(s.count) + 1e-6;
    sum_row(r, std::to_string(k), s);
  }
  r.add_check("|S_nu| <= count", bounded);
  return emit(r, g);
}

int cmd_zeta(const Options& o, const Global& g) {
  const auto job = tools::load_job(o.job);
  ExperimentReport r;
  r.name = "zeta " + job.name + " over F_" + std::to_string(o.p);
  r.columns = {"nu", "count"};
  std::vector<Rational> counts;
  for (unsigned k = 1; k <= o.numax; ++k) {
    const Field field = Field::make(o.p, k);
    const auto n = count(job.phi, field, resolve_y(field, o.y, job.y), g.eval());
    counts.emplace_back(n);
    r.rows.push_back({std::to_string(k), std::to_string(n)});
  }
  try {
    const auto rec = min_recurrence(counts);
    r.summary.emplace_back("characteristic polynomial", poly_string(rec.poly));
    const auto spec = classify_weights(rec, o.p);
    for (const auto& root : spec.roots) {
      r.summary.emplace_back("root " + complex_string(root.value),
                             root.classified ? "weight " + std::to_string(root.weight) : "unclassified");
    }
    for (const auto& w : spec.warnings) r.summary.emplace_back("warning", w);
    const auto z = zeta_series(counts, rec, o.p);
    r.summary.emplace_back("Z(T) numerator", poly_string(z.numerator));
    r.summary.emplace_back("Z(T) denominator", poly_string(z.denominator));
    r.add_check("log expansion of Z(T) reproduces the counts", true);
  } catch (const SequenceError& e) {
    r.add_check("recurrence and zeta function", false, e.what());
  }
  return emit(r, g);
}

int cmd_density(const Options& o, const Global& g) {
  const auto job = tools::load_job(o.job);
  ParamPolicy policy;
  if (!o.y.empty() || !job.y.empty()) {
    policy = [&](const Field& f) { return resolve_y(f, o.y, job.y); };
  }
  const auto d = density_fit(job.phi, prime_range(o.pmin, o.pmax), policy, g.eval());
  ExperimentReport r;
  r.name = "density " + job.name;
  r.columns = {"p", "count", "delta_p", "mu_p", "cluster", "normalized_error"};
  for (const auto& rec : d.records) {
    r.rows.push_back({std::to_string(rec.p), std::to_string(rec.count), std::to_string(rec.delta_p),
                      format_double(rec.mu_p), std::to_string(rec.cluster), format_double(rec.normalized_error)});
  }
  for (std::size_t i = 0; i < d.clusters.size(); ++i) {
    const auto& c = d.clusters[i];
    std::ostringstream os;
    os << "(" << c.delta << ", " << c.mu << ") C=" << format_double(c.c) << " primes=" << c.support.size()
       << (c.tentative() ? " tentative" : "");
    r.summary.emplace_back("cluster " + std::to_string(i), os.str());
  }
  r.add_check("every prime clustered", d.unclustered.empty(),
              d.unclustered.empty() ? "" : std::to_string(d.unclustered.size()) + " unclustered");
  return emit(r, g);
}

int cmd_twists(const Options& o, const Global& g) {
  const auto job = tools::load_job(o.job);
  const Field field = Field::prime(o.p);
  const auto spec = make_spec(job, 1, resolve_chi(o.chi, job.chi, field.q()));
  const auto t = twist_scan(spec, field, o.c, g.eval());
  ExperimentReport r;
  r.name = "twists " + job.name + " p=" + std::to_string(o.p);
  r.columns = {"h", "abs", "exception"};
  const std::size_t n = job.phi.vars.size();
  std::vector<std::uint64_t> h(n, 0);
  for (double mag : t.magnitudes) {
    std::string hs;
    for (auto v : h) hs += (hs.empty() ? "" : " ") + std::to_string(v);
    r.rows.push_back({hs, format_double(mag), mag > t.threshold ? "1" : "0"});
    for (std::size_t i = n; i-- > 0;) {
      if (++h[i] < o.p) break;
      h[i] = 0;
    }
  }
  const double allowed = o.d * std::pow(static_cast<double>(o.p), static_cast<double>(n) - 1.0);
  r.summary.emplace_back("threshold", format_double(t.threshold));
  r.summary.emplace_back("exceptions", std::to_string(t.exceptions.size()));
  r.add_check("exceptions <= D p^(n-1)", static_cast<double>(t.exceptions.size()) <= allowed,
              "D=" + format_double(o.d));
  return emit(r, g);
}

int cmd_interval(const Options& o, const Global& g) {
  const auto job = tools::load_job(o.job);
  lab::IntervalConfig cfg;
  cfg.eval = g.eval();
  auto r = lab::interval_experiment(job.phi, prime_range(o.pmin, o.pmax), cfg);
  std::size_t unbounded = 0;
  for (const auto& row : r.rows) unbounded += row[2] == "1" && row[10] == "0" ? 1 : 0;
  r.add_check("unbounded interval primes <= " + std::to_string(o.max_intervals), unbounded <= o.max_intervals);
  return emit(r, g);
}

int cmd_equidist(const Options& o, const Global& g) {
  const auto job = tools::load_job(o.job);
  const auto primes = o.p != 0 ? std::vector<std::uint64_t>{o.p} : prime_range(o.pmin, o.pmax);
  auto r = lab::equidist_report(job.phi, primes, o.h, g.eval());
  bool ok = true;
  for (const auto& row : r.rows) {
    const double p = std::stod(row[0]);
    ok = ok && std::stod(row[7]) <= 5.0 * std::log(p) / std::sqrt(p);
  }
  r.add_check("discrepancy <= 5 log(p) / sqrt(p)", ok);
  return emit(r, g);
}

int cmd_kloosterman(const Options& o, const Global& g) {
  lab::KloostermanConfig cfg;
  cfg.eval = g.eval(Strategy::Pruned);
  cfg.k_star_bound = o.bound;
  std::vector<lab::KloostermanReading> readings;
  if (o.reading == "a0" || o.reading == "both") readings.push_back(lab::KloostermanReading::ConstantA0);
  if (o.reading == "one" || o.reading == "both") readings.push_back(lab::KloostermanReading::ConstantOne);
  const auto primes = prime_range(o.pmin, o.pmax);
  ExperimentReport merged;
  for (auto reading : readings) {
    cfg.reading = reading;
    auto r = lab::kloosterman_experiment(o.n, primes, cfg);
    if (merged.columns.empty()) {
      merged = r;
      continue;
    }
    merged.name += "; " + r.name;
    merged.rows.insert(merged.rows.end(), r.rows.begin(), r.rows.end());
    merged.summary.insert(merged.summary.end(), r.summary.begin(), r.summary.end());
    merged.checks.insert(merged.checks.end(), r.checks.begin(), r.checks.end());
  }
  return emit(merged, g);
}

int cmd_verify_decomp(const Options& o, const Global& g) {
  const auto bj = tools::load_block(o.job);
  const Field field = Field::prime(o.p);
  const auto y = resolve_y(field, o.y, bj.y);
  const auto psi = AdditiveCharacter::from_selector(field, 1);
  const PointWeight<Rational> one = [](const std::vector<Elem>&) { return Rational(1); };
  const PointWeight<Complex> wave = [&](const std::vector<Elem>& x) {
    return x.empty() ? Complex(1.0, 0.0) : psi(x[0]);
  };
  const auto exact = verify_reduction<Rational>(bj.block, field, y, one, g.eval());
  const auto approx = verify_reduction<Complex>(bj.block, field, y, wave, g.eval());
  ExperimentReport r;
  r.name = "verify-decomp " + bj.name + " p=" + std::to_string(o.p);
  r.columns = {"p", "beta", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "e", "equal"};
  r.rows.push_back({std::to_string(o.p), "one", format_double(exact.lhs.convert_to<double>()), "0",
                    format_double(exact.rhs.convert_to<double>()), "0", std::to_string(exact.e),
                    exact.equal ? "1" : "0"});
  r.rows.push_back({std::to_string(o.p), "psi", format_double(approx.lhs.real()), format_double(approx.lhs.imag()),
                    format_double(approx.rhs.real()), format_double(approx.rhs.imag()), std::to_string(approx.e),
                    approx.equal ? "1" : "0"});
  std::ostringstream os;
  os << exact.lhs << " = " << exact.rhs;
  r.summary.emplace_back("exact sides", os.str());
  r.add_check("beta = 1 exact", exact.equal);
  r.add_check("beta = psi(x_1) within 1e-9", approx.equal);
  return emit(r, g);
}

int cmd_paper_examples(const Options& o, Global g, bool budget_given) {
  lab::PaperConfig cfg;
  cfg.quick = o.quick;
  if (budget_given) cfg.budget = g.budget;
  cfg.workers = g.eval().workers;
  std::vector<lab::CriterionResult> results;
  auto print = [](const lab::CriterionResult& c) {
    std::cerr << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.title << "  (" << c.detail
              << ", " << format_double(c.seconds).substr(0, 6) << " s)" << std::endl;
  };
  if (o.criterion != 0) {
    results.push_back(lab::run_criterion(o.criterion, cfg));
    print(results.back());
  } else {
    results = lab::run_paper_examples(cfg, print);
  }
  return emit(lab::paper_examples_report(results), g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definable-set exponential sums over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  Options o;
  auto* budget_opt = app.add_option("--budget", g.budget, "Cost budget in field operations")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out", g.out, "Write the report to this file (.json for JSON, otherwise CSV)");
  app.add_option("--strategy", g.strategy, "Quantifier evaluation: brute or pruned")
      ->check(CLI::IsMember({"brute", "pruned"}));

  auto job = [&](CLI::App* sub, const char* help = "Job file (JSON)") {
    sub->add_option("--job", o.job, help)->required()->check(CLI::ExistingFile);
  };
  auto prime = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--p", o.p, "Characteristic");
    if (required) opt->required();
  };

  auto* count_cmd = app.add_subcommand("count", "Count the points of a definable set");
  job(count_cmd);
  prime(count_cmd);
  count_cmd->add_option("--nu", o.nu, "Extension degree")->capture_default_str();
  count_cmd->add_option("--y", o.y, "Parameter values, comma separated");

  auto* sum_cmd = app.add_subcommand("sum", "Exponential sum over a definable set");
  job(sum_cmd);
  prime(sum_cmd);
  sum_cmd->add_option("--nu", o.nu, "Extension degree")->capture_default_str();
  sum_cmd->add_option("--y", o.y, "Parameter values, comma separated");
  sum_cmd->add_option("--psi", o.psi, "Additive character selector a");
  sum_cmd->add_option("--chi", o.chi, "Multiplicative character exponent m, or 'legendre'");

  auto* comp_cmd = app.add_subcommand("companion", "Companion sums over F_{q^nu}, nu = 1..numax");
  job(comp_cmd);
  prime(comp_cmd);
  comp_cmd->add_option("--nu", o.nu, "Degree of the base field over F_p")->capture_default_str();
  comp_cmd->add_option("--numax", o.numax, "Largest companion degree")->capture_default_str();
  comp_cmd->add_option("--y", o.y, "Parameter values, comma separated");
  comp_cmd->add_option("--psi", o.psi, "Additive character selector a");
  comp_cmd->add_option("--chi", o.chi, "Multiplicative character exponent m, or 'legendre'");

  auto* zeta_cmd = app.add_subcommand("zeta", "Point counts over F_{p^nu}, recurrence, weights and Z(T)");
  job(zeta_cmd);
  prime(zeta_cmd);
  zeta_cmd->add_option("--numax", o.numax, "Largest extension degree")->capture_default_str();
  zeta_cmd->add_option("--y", o.y, "Parameter values, comma separated");

  auto* dens_cmd = app.add_subcommand("density", "Fit density pairs (delta, mu) across primes");
  job(dens_cmd);
  dens_cmd->add_option("--pmin", o.pmin, "Smallest prime")->capture_default_str();
  dens_cmd->add_option("--pmax", o.pmax, "Largest prime")->capture_default_str();
  dens_cmd->add_option("--y", o.y, "Parameter values, comma separated");

  auto* twist_cmd = app.add_subcommand("twists", "Scan linear twists h for large sums");
  job(twist_cmd);
  prime(twist_cmd);
  twist_cmd->add_option("--c", o.c, "Threshold constant")->capture_default_str();
  twist_cmd->add_option("--d", o.d, "Allowed exceptions as a multiple of p^(n-1)")->capture_default_str();
  twist_cmd->add_option("--chi", o.chi, "Multiplicative character exponent m, or 'legendre'");

  auto* int_cmd = app.add_subcommand("interval", "Detect definable sets that are intervals mod p");
  job(int_cmd);
  int_cmd->add_option("--pmin", o.pmin, "Smallest prime")->capture_default_str();
  int_cmd->add_option("--pmax", o.pmax, "Largest prime")->capture_default_str();
  int_cmd->add_option("--max-intervals", o.max_intervals, "Allowed primes with an unbounded interval")
      ->capture_default_str();

  auto* eq_cmd = app.add_subcommand("equidist", "Weyl sums and discrepancy of a one-variable set");
  job(eq_cmd);
  prime(eq_cmd, false);
  eq_cmd->add_option("--pmin", o.pmin, "Smallest prime")->capture_default_str();
  eq_cmd->add_option("--pmax", o.pmax, "Largest prime")->capture_default_str();
  eq_cmd->add_option("--hmax", o.h, "Largest frequency H")->capture_default_str();

  auto* kl_cmd = app.add_subcommand("kloosterman", "Hyper-Kloosterman sums and their irreducible part");
  kl_cmd->add_option("--n", o.n, "Number of variables (2..6)")->capture_default_str();
  kl_cmd->add_option("--pmin", o.pmin, "Smallest prime")->capture_default_str();
  kl_cmd->add_option("--pmax", o.pmax, "Largest prime")->capture_default_str();
  kl_cmd->add_option("--reading", o.reading, "Constant term of the polynomial: a0, one or both")
      ->check(CLI::IsMember({"a0", "one", "both"}))
      ->capture_default_str();
  kl_cmd->add_option("--bound", o.bound, "Bound on |K*| / p^(n-1/2)")->capture_default_str();

  auto* dec_cmd = app.add_subcommand("verify-decomp", "Check the fiber inclusion-exclusion identity");
  job(dec_cmd, "Block file (JSON)");
  prime(dec_cmd);
  dec_cmd->add_option("--y", o.y, "Parameter values, comma separated");

  auto* paper_cmd = app.add_subcommand("paper-examples", "Run the bundled reference checks");
  paper_cmd->add_flag("--quick", o.quick, "Only primes up to about 20");
  paper_cmd->add_option("--criterion", o.criterion, "Run a single check (1..11)")->check(CLI::Range(0, 11));

  CLI11_PARSE(app, argc, argv);

  try {
    if (count_cmd->parsed()) return cmd_count(o, g);
    if (sum_cmd->parsed()) return cmd_sum(o, g);
    if (comp_cmd->parsed()) return cmd_companion(o, g);
    if (zeta_cmd->parsed()) return cmd_zeta(o, g);
    if (dens_cmd->parsed()) return cmd_density(o, g);
    if (twist_cmd->parsed()) return cmd_twists(o, g);
    if (int_cmd->parsed()) return cmd_interval(o, g);
    if (eq_cmd->parsed()) return cmd_equidist(o, g);
    if (kl_cmd->parsed()) return cmd_kloosterman(o, g);
    if (dec_cmd->parsed()) return cmd_verify_decomp(o, g);
    if (paper_cmd->parsed()) return cmd_paper_examples(o, g, budget_opt->count() > 0);
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
