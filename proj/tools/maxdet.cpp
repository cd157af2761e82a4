#include "maxdet/bounds.hpp"
#include "maxdet/construction.hpp"
#include "maxdet/exactmath.hpp"
#include "maxdet/hadamard.hpp"
#include "maxdet/linalg.hpp"
#include "maxdet/registry.hpp"
#include "maxdet/report.hpp"
#include "maxdet/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#ifndef MAXDET_DEFAULT_REGISTRY
#define MAXDET_DEFAULT_REGISTRY "data/known_orders.txt"
#endif

using namespace maxdet;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = kDefaultSeed;
  std::string format = "text";
  int precision = 4;
  std::string registry = MAXDET_DEFAULT_REGISTRY;
  bool constructive_only = false;

  bool json() const { return format == "json"; }
};

unsigned worker_count()
{
  unsigned n = std::max(1U, std::min(8U, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("MAXDET_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw UsageError("MAXDET_THREADS must be a positive integer");
    }
  }
  return n;
}

OrderRegistry load_registry(const Common& c, long limit)
{
  limit = std::max(limit, 4L);
  if (c.constructive_only) return build_registry(limit);
  std::ifstream in(c.registry);
  if (!in) throw std::runtime_error("cannot read registry file " + c.registry);
  return build_registry(limit, read_order_list(in));
}

std::string registry_label(const Common& c)
{
  return c.constructive_only ? "constructive closure only" : "constructive closure + " + c.registry;
}

void require_order(long h)
{
  if (!is_hadamard_multiple_of_four(h)) throw UsageError("invalid h " + std::to_string(h) + ": must be a positive multiple of 4");
}

void write_text_file(const std::string& path, const std::string& text)
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------- moments

int cmd_moments(const Common& c, const std::vector<long>& hs, bool exact)
{
  json all = json::array();
  std::string text;
  for (long h : hs) {
    require_order(h);
    const MomentStats m = moments(h);
    if (c.json())
      all.push_back(moments_json(m));
    else
      text += (text.empty() ? "" : "\n") + render_moments_text(m, exact);
  }
  if (c.json())
    std::cout << (all.size() == 1 ? all[0] : json{{"schema", kJsonSchema}, {"moments", all}}).dump(2) << "\n";
  else
    std::cout << text;
  return 0;
}

// ---------------------------------------------------------------- bounds

int cmd_bounds(const Common& c, long h, std::vector<long> ds, const std::vector<long>& ns, const std::vector<std::string>& method_ids)
{
  TableOptions opt;
  for (const std::string& id : method_ids) {
    auto m = parse_method(id);
    if (!m) throw UsageError("unknown method " + id);
    opt.methods.push_back(*m);
  }

  // (h, [d...]) groups in input order.
  std::vector<std::pair<long, std::vector<long>>> groups;
  std::optional<OrderRegistry> reg;
  if (!ns.empty()) {
    if (h != 0 || !ds.empty()) throw UsageError("give either --h/--d or --n");
    const long top = *std::max_element(ns.begin(), ns.end());
    reg = load_registry(c, top + 1);
    for (long n : ns) {
      if (n < 1) throw UsageError("n must be positive");
      const Decomposition dec = decompose(n, *reg);
      if (dec.h < 4) throw UsageError("n = " + std::to_string(n) + " decomposes to h = " + std::to_string(dec.h) + " < 4");
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == dec.h; });
      if (it == groups.end())
        groups.push_back({dec.h, {dec.d}});
      else
        it->second.push_back(dec.d);
    }
  } else {
    if (h == 0 || ds.empty()) throw UsageError("give either --h and --d, or --n");
    require_order(h);
    for (long d : ds)
      if (d < 0) throw UsageError("d must be >= 0");
    groups.push_back({h, ds});
  }

  json tables = json::array();
  std::string text;
  for (const auto& [gh, gd] : groups) {
    TableOptions o = opt;
    if (reg && o.methods.empty()) {
      bool sharpe = false;
      for (long d : gd) sharpe = sharpe || (d > 0 && reg->contains(gh + d + 1));
      o.include_sharpe = sharpe;
    }
    const BoundTable t = make_table(gh, gd, o);
    if (c.json())
      tables.push_back(table_json(t));
    else
      text += (text.empty() ? "" : "\n") + render_table_text(t, c.precision);
  }
  if (c.json())
    std::cout << (tables.size() == 1 ? tables[0] : json{{"schema", kJsonSchema}, {"tables", tables}}).dump(2) << "\n";
  else
    std::cout << text;
  return 0;
}

// ---------------------------------------------------------------- construct

std::string exact_or_log(const BigInt& v, double log_v)
{
  const std::string s = v.get_str();
  if (s.size() <= 60) return s;
  return "exp(" + fixed(log_v, 6) + ")";
}

int cmd_construct(const Common& c, long n, long trials, bool exhaustive, const std::string& out_path)
{
  if (n < 1) throw UsageError("n must be positive");
  if (trials < 1) throw UsageError("trials must be >= 1");
  const OrderRegistry reg = load_registry(c, n + 1);
  const Decomposition dec = decompose(n, reg);

  if (dec.d == 0) {
    const HadamardMatrix A = reg.materialize(n);
    if (!out_path.empty()) write_text_file(out_path, to_text(A.matrix()));
    const double log_det = 0.5 * static_cast<double>(n) * std::log(static_cast<double>(n));
    if (c.json()) {
      std::cout << json{{"schema", kJsonSchema}, {"n", n},      {"h", n},        {"d", 0},
                        {"seed", c.seed},         {"detG_num", "1"}, {"detG_den", "1"}, {"log_det_full", log_det},
                        {"dbar", 1.0},            {"ratio_to_mu_d", 1.0}, {"trials", 0}, {"provenance", A.provenance()}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "n = " << n << " is a Hadamard order (" << A.provenance() << ")\n";
      std::cout << "D-bar = 1\n";
    }
    return 0;
  }
  if (dec.h < 4) throw UsageError("n = " + std::to_string(n) + ": the bordering construction needs h >= 4");

  const HadamardMatrix A = reg.materialize(dec.h);
  const MomentStats mom = moments(dec.h);
  const std::size_t bits = static_cast<std::size_t>(dec.h) * static_cast<std::size_t>(dec.d);
  if (exhaustive && bits > kExhaustiveBitCap) throw UsageError("--exhaustive needs h*d <= 24");
  const bool use_exhaustive = exhaustive || (bits <= kExhaustiveBitCap && (1L << bits) <= trials);

  std::optional<BoundReport> opt_bound;
  if (dec.d >= 2) opt_bound = evaluate(BoundMethod::two_param_opt, mom, dec.d);
  std::optional<BoundReport> best_other;
  for (BoundMethod m : kAllMethods) {
    if (m == BoundMethod::sharpe) continue;
    BoundReport r = evaluate(m, mom, dec.d);
    if (r.applicable && (!best_other || r.ratio_bound > best_other->ratio_bound)) best_other = r;
  }
  const ClosedFormValue target = closed_form_dbar(dec.h, dec.d, ClosedForm::target_const);

  TrialThresholds thr;
  if (opt_bound && opt_bound->applicable) thr.ratio = opt_bound->ratio_bound;
  thr.dbar = target.value;

  const unsigned threads = worker_count();
  const TrialSummary sum = use_exhaustive ? run_exhaustive(A, dec.d, threads, thr)
                                          : run_trials(A, dec.d, trials, c.seed, threads, thr);
  const ConstructionOutcome& best = sum.best;
  const BorderSample sample = use_exhaustive ? exhaustive_border(A, dec.d, best.seed) : sample_border(A, dec.d, best.seed);
  const SignMatrix full = assemble(A, sample, best.D);

  BigRational det_q = best.det_complement * ipow(BigRational(dec.h), static_cast<unsigned long>(dec.h / 2));
  det_q.canonicalize();
  if (det_q.get_den() != 1) throw std::logic_error("assembled determinant is not an integer");
  const BigInt det_full = det_q.get_num();

  std::optional<bool> exact_check;
  if (n <= 128) exact_check = abs(det_exact(full)) == det_full;

  if (!out_path.empty()) write_text_file(out_path, to_text(full));

  if (c.json()) {
    json j = outcome_json(best, sum.trials);
    j["search"] = use_exhaustive ? "exhaustive" : "random";
    j["master_seed"] = c.seed;
    j["best_index"] = sum.best_index;
    j["det_full"] = det_full.get_str();
    j["mean_ratio"] = sum.mean_ratio;
    j["max_ratio"] = sum.max_ratio;
    j["provenance"] = A.provenance();
    j["bound_two_param_opt"] = opt_bound ? report_json(*opt_bound) : json(nullptr);
    j["ratio_hits"] = opt_bound && opt_bound->applicable ? json(sum.ratio_hits) : json(nullptr);
    j["target_dbar"] = target.value;
    j["target_hits"] = sum.dbar_hits;
    j["exact_check"] = exact_check ? json(*exact_check) : json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    const int p = c.precision;
    std::cout << "n = " << n << " = " << dec.h << " + " << dec.d << "   A: " << A.provenance() << "\n";
    if (use_exhaustive)
      std::cout << "search: exhaustive over " << sum.trials << " borders\n";
    else
      std::cout << "search: " << sum.trials << " random trials, seed " << c.seed << "\n";
    std::cout << "best trial: " << sum.best_index << "\n";
    std::cout << "det(G) = " << best.detG.get_str() << "\n";
    std::cout << "|det| = " << exact_or_log(det_full, best.log_det_full) << "\n";
    std::cout << "D-bar = " << fixed(best.dbar, p + 1) << "\n";
    std::cout << "det(G)/mu^d = " << fixed(best.ratio_to_mu_d, p) << " (best)   " << fixed(sum.max_ratio, p) << " (max)   "
              << fixed(sum.mean_ratio, p) << " (mean)\n";
    if (opt_bound && opt_bound->applicable)
      std::cout << "bound two_param_opt: det(G)/mu^d >= " << fixed(opt_bound->ratio_bound, p) << ", reached in "
                << sum.ratio_hits << " of " << sum.trials << " trials\n";
    else
      std::cout << "bound two_param_opt: not applicable at (h, d) = (" << dec.h << ", " << dec.d << ")\n";
    if (best_other)
      std::cout << "best applicable bound: " << method_id(best_other->method) << " D-bar >= " << sci(best_other->dbar_bound, 4)
                << "\n";
    std::cout << "target (2/(pi e))^(d/2) = " << fixed(target.value, p + 1) << ", reached in " << sum.dbar_hits << " of "
              << sum.trials << " trials\n";
    if (exact_check) std::cout << "exact determinant check: " << (*exact_check ? "ok" : "MISMATCH") << "\n";
  }
  return exact_check && !*exact_check ? 1 : 0;
}

// ---------------------------------------------------------------- verify

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::vector<long> hs;
  long kmax = 200;
  long hmax = 400;
  long nmax = 1000;
  long trials = 0;
};

std::string rat(const BigRational& q) { return q.get_str(); }

void suite_binomial(const VerifyOptions& o, std::vector<CheckLine>& out)
{
  const BinomialIdentityReport r = check_binomial_identities(o.kmax);
  out.push_back({"binomial sums k <= " + std::to_string(o.kmax), r.pass(),
                 r.pass() ? "exact" : "first failure at k = " + std::to_string(r.first_failure)});
}

void suite_moments(const VerifyOptions& o, std::uint64_t seed, std::vector<CheckLine>& out)
{
  const std::vector<long> hs = o.hs.empty() ? std::vector<long>{4, 8, 12} : o.hs;
  for (long h : hs) {
    require_order(h);
    if (h > 20) throw UsageError("moment enumeration needs h <= 20");
    for (const HadamardMatrix& A : distinct_constructions(h, seed))
      for (const EnumerationReport& r : enumerate_diagonal_moments(A))
        out.push_back({"h=" + std::to_string(h) + " " + A.provenance() + " " + r.quantity, r.equal,
                       rat(r.enumerated_value) + " vs " + rat(r.formula_value)});
  }
  const EnclosureReport e = check_moment_enclosures(o.hmax);
  char buf[160];
  std::snprintf(buf, sizeof buf, "alpha in [%.6Lf, %.6Lf], beta in [%.6Lf, %.6Lf]", e.alpha_min, e.alpha_max, e.beta_min,
                e.beta_max);
  out.push_back({"mu/sigma^2 enclosures h <= " + std::to_string(o.hmax), e.pass(),
                 e.pass() ? std::string(buf) : "first failure at h = " + std::to_string(e.first_failure)});
  out.push_back({"mu increasing, sigma^2 decreasing h <= " + std::to_string(o.hmax), mu_monotone_check(o.hmax), "exact"});
}

void suite_offdiag(const VerifyOptions& o, std::uint64_t seed, std::vector<CheckLine>& out)
{
  const std::vector<long> hs = o.hs.empty() ? std::vector<long>{4, 8} : o.hs;
  for (long h : hs) {
    require_order(h);
    if (h > 8) throw UsageError("off-diagonal enumeration needs h <= 8");
    for (const HadamardMatrix& A : distinct_constructions(h, seed))
      for (const EnumerationReport& r : enumerate_offdiag_moments(A))
        out.push_back({"h=" + std::to_string(h) + " " + A.provenance() + " " + r.quantity, r.equal,
                       rat(r.enumerated_value) + " vs " + rat(r.formula_value)});
  }
  const long samples = o.trials > 0 ? o.trials : 20000;
  const DependenceReport dep = check_dependence_structure(distinct_constructions(8, seed).front(), 4, samples, seed);
  for (const MonteCarloCheck& m : dep.checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "estimate %.5f, reference %.5f, slack %.5f", m.estimate, m.reference, m.slack);
    out.push_back({"h=8 d=4 " + m.name, m.pass, buf});
  }
}

void suite_perturbation(const VerifyOptions& o, std::uint64_t seed, std::vector<CheckLine>& out)
{
  const long trials = o.trials > 0 ? o.trials : 10000;
  for (long d = 2; d <= 6; ++d) {
    const PerturbationReport r = check_perturbation_lemmas(d, trials, derive_seed(seed, static_cast<std::uint64_t>(d)));
    out.push_back({"perturbation d=" + std::to_string(d) + " one-sided diagonal", r.violations_general == 0,
                   std::to_string(r.violations_general) + " violations in " + std::to_string(r.trials) + " trials"});
    out.push_back({"perturbation d=" + std::to_string(d) + " symmetric", r.violations_symmetric == 0,
                   std::to_string(r.violations_symmetric) + " violations in " + std::to_string(r.trials) + " trials"});
  }
}

void suite_tails(const VerifyOptions& o, std::uint64_t seed, std::vector<CheckLine>& out)
{
  const long trials = o.trials > 0 ? o.trials : 20000;
  std::vector<HadamardMatrix> ms;
  for (long h : o.hs.empty() ? std::vector<long>{8, 12} : o.hs) {
    require_order(h);
    ms.push_back(distinct_constructions(h, seed).front());
  }
  const TailReport r = check_tail_inequalities(ms, trials, seed);
  for (const MonteCarloCheck& m : r.checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "frequency %.5f, bound %.5f, slack %.5f", m.estimate, m.reference, m.slack);
    out.push_back({m.name, m.pass, buf});
  }
}

void suite_uncond2(const VerifyOptions& o, std::vector<CheckLine>& out)
{
  if (o.nmax < 2) throw UsageError("--nmax must be >= 2");
  const Uncond2Report r = check_uncond2(o.nmax);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%ld pairs, %ld violations, min log gap %.3Le", r.pairs, r.violations, r.min_gap);
  out.push_back({"(h/n)^n > exp(-d - d^2/h) n <= " + std::to_string(o.nmax), r.violations == 0, buf});
}

int cmd_verify(const Common& c, const std::string& suite, const VerifyOptions& o)
{
  std::vector<CheckLine> lines;
  const bool all = suite == "all";
  if (all || suite == "binomial") suite_binomial(o, lines);
  if (all || suite == "moments") suite_moments(o, c.seed, lines);
  if (all || suite == "offdiag") suite_offdiag(o, c.seed, lines);
  if (all || suite == "perturbation") suite_perturbation(o, c.seed, lines);
  if (all || suite == "tails") suite_tails(o, c.seed, lines);
  if (all || suite == "uncond2") suite_uncond2(o, lines);

  const bool pass = std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
  if (c.json()) {
    json checks = json::array();
    for (const CheckLine& l : lines) checks.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    std::cout << json{{"schema", kJsonSchema}, {"suite", suite}, {"seed", c.seed}, {"pass", pass}, {"checks", checks}}.dump(2)
              << "\n";
  } else {
    for (const CheckLine& l : lines) std::cout << (l.pass ? "PASS " : "FAIL ") << l.name << ": " << l.detail << "\n";
    const long failed = std::count_if(lines.begin(), lines.end(), [](const CheckLine& l) { return !l.pass; });
    std::cout << (pass ? "all " + std::to_string(lines.size()) + " checks passed"
                       : std::to_string(failed) + " of " + std::to_string(lines.size()) + " checks failed")
              << "\n";
  }
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------- gaps

struct GapCurve {
  const char* name;
  double alpha;
  std::optional<double> beta;
};

int cmd_gaps(const Common& c, long limit, std::vector<long> at)
{
  if (limit < 4) throw UsageError("--limit must be >= 4");
  // Twice the limit so every checkpoint <= limit has a successor order.
  const OrderRegistry reg = load_registry(c, 2 * limit + 8);
  const GapInterval widest = widest_gap_within(reg, limit);
  const std::optional<long> missing = first_missing_multiple_of_four(reg, limit);
  long count = 0;
  for (long o : reg.orders()) count += o <= limit;

  if (at.empty()) {
    for (long x = 4; x < limit; x *= 2) at.push_back(x);
    at.push_back(limit);
  }
  const GapCurve curves[] = {{"seberry", 2.0, std::nullopt}, {"craigen", 2.0 / 3.0, 16.0 / 3.0}, {"livinskyi", 0.2, 12.8}};

  json rows = json::array();
  for (long x : at) {
    if (x < 1 || x > limit) throw UsageError("checkpoint " + std::to_string(x) + " outside [1, limit]");
    json row = {{"x", x}, {"gamma", gap_function(static_cast<double>(x), reg)}};
    for (const GapCurve& g : curves)
      row[g.name] = g.beta ? json(gap_bound(g.alpha, *g.beta, static_cast<double>(x))) : json(nullptr);
    rows.push_back(row);
  }

  if (c.json()) {
    json curve_info = json::array();
    for (const GapCurve& g : curves)
      curve_info.push_back({{"name", g.name}, {"alpha", g.alpha}, {"beta", g.beta ? json(*g.beta) : json(nullptr)}});
    std::cout << json{{"schema", kJsonSchema},
                      {"limit", limit},
                      {"registry", registry_label(c)},
                      {"orders", count},
                      {"widest_gap", {{"lo", widest.lo}, {"hi", widest.hi}, {"gap", widest.hi - widest.lo}}},
                      {"first_missing_multiple_of_four", missing ? json(*missing) : json(nullptr)},
                      {"curves", curve_info},
                      {"checkpoints", rows}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::cout << "registry: " << registry_label(c) << "\n";
  std::cout << "orders <= " << limit << ": " << count << "\n";
  std::cout << "max gap within [1, " << limit << "]: " << widest.hi - widest.lo << " (" << widest.lo << " -> " << widest.hi
            << ")\n";
  if (missing)
    std::cout << "first missing multiple of 4: " << *missing << "\n";
  else
    std::cout << "first missing multiple of 4: none up to " << limit << "\n";
  std::cout << "\n" << pad_left("x", 10) << pad_left("gamma(x)", 10);
  for (const GapCurve& g : curves) std::cout << pad_left(g.name, 14);
  std::cout << "\n";
  for (const json& row : rows) {
    std::cout << pad_left(std::to_string(row["x"].get<long>()), 10) << pad_left(std::to_string(row["gamma"].get<long>()), 10);
    for (const GapCurve& g : curves)
      std::cout << pad_left(row[g.name].is_null() ? "---" : fixed(row[g.name].get<double>(), 1), 14);
    std::cout << "\n";
  }
  std::cout << "curves: 12 * 2^beta * x^(alpha/(1+alpha)); seberry alpha = 2, beta not stated\n";
  return 0;
}

// ---------------------------------------------------------------- hadamard

int cmd_hadamard(const Common& c, long order, const std::string& out_path)
{
  if (order < 1) throw UsageError("order must be positive");
  const OrderRegistry reg = load_registry(c, order);
  if (!reg.contains(order)) throw UsageError("order " + std::to_string(order) + " is not a known Hadamard order");
  const HadamardMatrix A = reg.materialize(order);
  if (!is_hadamard(A.matrix())) throw std::logic_error("constructed matrix failed validation");
  const std::string text = to_text(A.matrix());
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
    if (c.json())
      std::cout << json{{"schema", kJsonSchema}, {"order", order}, {"provenance", A.provenance()}, {"path", out_path}}.dump(2)
                << "\n";
    else
      std::cout << "wrote " << order << "x" << order << " Hadamard matrix (" << A.provenance() << ") to " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Lower bounds and constructions for maximal determinants of +-1 matrices"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "master RNG seed")->capture_default_str();
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--precision", common.precision, "decimals for ratios in text output")
      ->check(CLI::Range(1, 12))
      ->capture_default_str();
  app.add_option("--registry", common.registry, "file of known Hadamard orders")->capture_default_str();
  app.add_flag("--constructive-only", common.constructive_only, "ignore the registry file; use constructed orders only");

  std::vector<long> moments_h;
  bool moments_exact = false;
  auto* moments_cmd = app.add_subcommand("moments", "mean and variance of a diagonal entry of G");
  moments_cmd->add_option("--h", moments_h, "Hadamard order(s)")->required();
  moments_cmd->add_flag("--exact", moments_exact, "also print exact rationals");

  long bounds_h = 0;
  std::vector<long> bounds_d, bounds_n;
  std::vector<std::string> bounds_methods;
  auto* bounds_cmd = app.add_subcommand("bounds", "lower bounds on det(G)/mu^d and D(n)/n^(n/2)");
  bounds_cmd->add_option("--h", bounds_h, "Hadamard order");
  bounds_cmd->add_option("--d", bounds_d, "border size(s)");
  bounds_cmd->add_option("--n", bounds_n, "matrix order(s), decomposed through the registry");
  bounds_cmd->add_option("--method", bounds_methods, "method ids (default: all)")->delimiter(',');

  long construct_n = 0, construct_trials = 1000;
  bool construct_exhaustive = false;
  std::string construct_out;
  auto* construct_cmd = app.add_subcommand("construct", "randomized bordering construction");
  construct_cmd->add_option("--n", construct_n, "matrix order")->required();
  construct_cmd->add_option("--trials", construct_trials, "random trials")->capture_default_str();
  construct_cmd->add_flag("--exhaustive", construct_exhaustive, "enumerate every border (h*d <= 24)");
  construct_cmd->add_option("--out", construct_out, "write the best assembled matrix here");

  std::string verify_suite = "all";
  VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "exact and statistical checks of the construction");
  verify_cmd->add_option("--suite", verify_suite, "suite id")
      ->check(CLI::IsMember({"binomial", "moments", "offdiag", "perturbation", "tails", "uncond2", "all"}))
      ->capture_default_str();
  verify_cmd->add_option("--h", vopt.hs, "orders for the enumeration and tail suites");
  verify_cmd->add_option("--kmax", vopt.kmax, "binomial identities up to k")->capture_default_str();
  verify_cmd->add_option("--hmax", vopt.hmax, "moment enclosures up to h")->capture_default_str();
  verify_cmd->add_option("--nmax", vopt.nmax, "exponential inequality up to n")->capture_default_str();
  verify_cmd->add_option("--trials", vopt.trials, "Monte Carlo sample size (0: suite default)");

  long gaps_limit = 0;
  std::vector<long> gaps_at;
  auto* gaps_cmd = app.add_subcommand("gaps", "gaps between known Hadamard orders");
  gaps_cmd->add_option("--limit", gaps_limit, "upper end of the scan")->required();
  gaps_cmd->add_option("--at", gaps_at, "checkpoints for gamma(x)");

  long hadamard_order = 0;
  std::string hadamard_out;
  auto* hadamard_cmd = app.add_subcommand("hadamard", "write a Hadamard matrix of a registry order");
  hadamard_cmd->add_option("--order", hadamard_order, "order")->required();
  hadamard_cmd->add_option("--out", hadamard_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*moments_cmd) return cmd_moments(common, moments_h, moments_exact);
    if (*bounds_cmd) return cmd_bounds(common, bounds_h, bounds_d, bounds_n, bounds_methods);
    if (*construct_cmd) return cmd_construct(common, construct_n, construct_trials, construct_exhaustive, construct_out);
    if (*verify_cmd) return cmd_verify(common, verify_suite, vopt);
    if (*gaps_cmd) return cmd_gaps(common, gaps_limit, gaps_at);
    if (*hadamard_cmd) return cmd_hadamard(common, hadamard_order, hadamard_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
