#ifndef MAXDET_BOUNDS_HPP
#define MAXDET_BOUNDS_HPP

#include "maxdet/exactmath.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maxdet {

enum class BoundMethod {
  expand_det,
  chebyshev,
  chebyshev_opt,
  chebyshev_lll,
  cantelli_hoeffding_lll,
  cantelli_hoeffding_nolll,
  two_param_cor5,
  two_param_opt,
  sharpe,
};

inline constexpr std::array<BoundMethod, 9> kAllMethods = {
    BoundMethod::expand_det,     BoundMethod::chebyshev,
    BoundMethod::chebyshev_opt,  BoundMethod::chebyshev_lll,
    BoundMethod::cantelli_hoeffding_lll, BoundMethod::cantelli_hoeffding_nolll,
    BoundMethod::two_param_cor5, BoundMethod::two_param_opt,
    BoundMethod::sharpe,
};

inline std::string_view method_id(BoundMethod m)
{
  switch (m) {
    case BoundMethod::expand_det: return "expand_det";
    case BoundMethod::chebyshev: return "chebyshev";
    case BoundMethod::chebyshev_opt: return "chebyshev_opt";
    case BoundMethod::chebyshev_lll: return "chebyshev_lll";
    case BoundMethod::cantelli_hoeffding_lll: return "cantelli_hoeffding_lll";
    case BoundMethod::cantelli_hoeffding_nolll: return "cantelli_hoeffding_nolll";
    case BoundMethod::two_param_cor5: return "two_param_cor5";
    case BoundMethod::two_param_opt: return "two_param_opt";
    case BoundMethod::sharpe: return "sharpe";
  }
  return "?";
}

inline std::optional<BoundMethod> parse_method(std::string_view id)
{
  for (BoundMethod m : kAllMethods)
    if (method_id(m) == id) return m;
  return std::nullopt;
}

/// One lower bound. ratio_bound bounds det(G)/mu^d (for expand_det and sharpe,
/// D(n) / (h^(h/2) mu^d)); dbar_bound bounds D(n)/n^(n/2).
struct BoundReport {
  BoundMethod method = BoundMethod::chebyshev;
  long h = 0;
  long d = 0;
  bool applicable = false;
  double ratio_bound = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> lambda;
  std::optional<double> t;
  double dbar_bound = std::numeric_limits<double>::quiet_NaN();
  std::string notes;
};

/// D(n)/n^(n/2) >= mu^d h^(h/2) n^(-n/2) * ratio, evaluated in log space.
inline double convert_dbar(const MomentStats& m, long d, double ratio_bound)
{
  if (!(ratio_bound > 0)) throw std::domain_error("convert_dbar: ratio_bound must be positive");
  const double h = static_cast<double>(m.h);
  const double n = h + static_cast<double>(d);
  return std::exp(static_cast<double>(d) * std::log(m.mu_f) + 0.5 * h * std::log(h) - 0.5 * n * std::log(n) +
                  std::log(ratio_bound));
}

inline double convert_dbar(long h, long d, double ratio_bound) { return convert_dbar(moments(h), d, ratio_bound); }

namespace detail {

inline BoundReport make_report(BoundMethod method, const MomentStats& m, long d)
{
  BoundReport r;
  r.method = method;
  r.h = m.h;
  r.d = d;
  return r;
}

inline void finish(BoundReport& r, const MomentStats& m, double ratio)
{
  r.ratio_bound = ratio;
  r.applicable = std::isfinite(ratio) && ratio > 0;
  if (r.applicable)
    r.dbar_bound = convert_dbar(m, r.d, ratio);
  else if (r.notes.empty())
    r.notes = "bound is not positive";
}

inline double two_param_ratio(long d, double lambda, double t)
{
  return (1.0 - lambda - static_cast<double>(d - 1) * t) * std::pow(1.0 - lambda + t, static_cast<double>(d - 1));
}

}  // namespace detail

/// eta(h, d) for d = 1, 2, 3: 0, 1, 5 sqrt(h) + 3.
inline double eta(long h, long d)
{
  switch (d) {
    case 1: return 0.0;
    case 2: return 1.0;
    case 3: return 5.0 * std::sqrt(static_cast<double>(h)) + 3.0;
    default: throw std::invalid_argument("eta: d must be 1, 2 or 3");
  }
}

/// 1 - eta / mu^d from expanding det(G) into its d! terms.
inline BoundReport bound_expand_det(const MomentStats& m, long d)
{
  if (d < 1 || d > 3) throw std::invalid_argument("bound_expand_det: d must be 1, 2 or 3");
  BoundReport r = detail::make_report(BoundMethod::expand_det, m, d);
  detail::finish(r, m, 1.0 - eta(m.h, d) / std::pow(m.mu_f, static_cast<double>(d)));
  return r;
}

/// 1 - d^2 / mu.
inline BoundReport bound_chebyshev(const MomentStats& m, long d)
{
  if (d < 1) throw std::invalid_argument("bound_chebyshev: d must be >= 1");
  BoundReport r = detail::make_report(BoundMethod::chebyshev, m, d);
  const double dd = static_cast<double>(d);
  detail::finish(r, m, 1.0 - dd * dd / m.mu_f);
  return r;
}

/// 1 - sqrt(d^3 (d + sigma^2 - 1)) / mu, the Chebyshev bound at the best lambda.
inline BoundReport bound_chebyshev_opt(const MomentStats& m, long d)
{
  if (d < 1) throw std::invalid_argument("bound_chebyshev_opt: d must be >= 1");
  BoundReport r = detail::make_report(BoundMethod::chebyshev_opt, m, d);
  const double dd = static_cast<double>(d);
  detail::finish(r, m, 1.0 - std::sqrt(dd * dd * dd * (dd + m.sigma2_f - 1.0)) / m.mu_f);
  return r;
}

/// 1 - 2 d sqrt((d-1) e) / mu via the symmetric local lemma; exactly 1 for d = 1.
inline BoundReport bound_chebyshev_lll(const MomentStats& m, long d)
{
  if (d < 1) throw std::invalid_argument("bound_chebyshev_lll: d must be >= 1");
  BoundReport r = detail::make_report(BoundMethod::chebyshev_lll, m, d);
  const double dd = static_cast<double>(d);
  const double ratio = d == 1 ? 1.0 : 1.0 - 2.0 * dd * std::sqrt((dd - 1.0) * std::numbers::e) / m.mu_f;
  detail::finish(r, m, ratio);
  return r;
}

/// Cantelli on the diagonal, Hoeffding off it, with the equal-probability
/// parameter choice; use_lll selects the local-lemma variant.
/// Applicable iff lambda + (d-1) t <= 1 (and the bound is positive).
inline BoundReport bound_cantelli_hoeffding(const MomentStats& m, long d, bool use_lll)
{
  if (d < 2) throw std::invalid_argument("bound_cantelli_hoeffding: d must be >= 2");
  BoundReport r = detail::make_report(use_lll ? BoundMethod::cantelli_hoeffding_lll : BoundMethod::cantelli_hoeffding_nolll, m, d);
  const double dd = static_cast<double>(d);
  const double sigma = std::sqrt(m.sigma2_f);
  double lambda, t;
  if (use_lll) {
    lambda = std::sqrt(4.0 * std::numbers::e * (dd - 1.0) - 1.0) * sigma / m.mu_f;
    t = std::sqrt(2.0 * std::log(8.0 * std::numbers::e * (dd - 1.0))) / m.mu_f;
  } else {
    lambda = std::sqrt(dd * dd - 1.0) * sigma / m.mu_f;
    t = std::sqrt(2.0 * std::log(2.0 * dd * dd)) / m.mu_f;
  }
  r.lambda = lambda;
  r.t = t;
  if (lambda + (dd - 1.0) * t > 1.0) {
    r.notes = "lambda + (d-1) t > 1";
    r.ratio_bound = detail::two_param_ratio(d, lambda, t);
    return r;
  }
  detail::finish(r, m, detail::two_param_ratio(d, lambda, t));
  return r;
}

/// Sufficient condition h >= pi d^2 (4 + ln d) for the Cantelli/Hoeffding bound.
inline bool simple_condition(long h, long d)
{
  if (d < 1) throw std::invalid_argument("simple_condition: d must be >= 1");
  const double dd = static_cast<double>(d);
  return static_cast<double>(h) >= std::numbers::pi * dd * dd * (4.0 + std::log(dd));
}

/// L(d) = ln(2 d (d-1)).
inline double log_offdiag_count(long d) { return std::log(2.0 * static_cast<double>(d) * static_cast<double>(d - 1)); }

/// t with equality in exp(mu^2 t^2 / 2 - d tau^2 / lambda^2) = 2 d (d-1).
inline double two_param_t(const MomentStats& m, long d, double lambda)
{
  const double tau2 = m.tau_f * m.tau_f;
  return std::sqrt(2.0 * (static_cast<double>(d) * tau2 / (lambda * lambda) + log_offdiag_count(d))) / m.mu_f;
}

/// Two-parameter bound (1 - lambda - (d-1) t)(1 - lambda + t)^(d-1) at a given lambda.
inline BoundReport bound_two_param(const MomentStats& m, long d, double lambda,
                                   BoundMethod label = BoundMethod::two_param_cor5)
{
  if (d < 2) throw std::invalid_argument("bound_two_param: d must be >= 2");
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("bound_two_param: lambda must lie in (0, 1)");
  BoundReport r = detail::make_report(label, m, d);
  const double t = two_param_t(m, d, lambda);
  r.lambda = lambda;
  r.t = t;
  const double first = 1.0 - lambda - static_cast<double>(d - 1) * t;
  if (!(first > 0)) {
    r.notes = "1 - lambda - (d-1) t <= 0";
    r.ratio_bound = detail::two_param_ratio(d, lambda, t);
    return r;
  }
  detail::finish(r, m, detail::two_param_ratio(d, lambda, t));
  return r;
}

/// lambda = (2 d (d-1) sigma^2 / mu^4)^(1/3).
inline double lambda_cor5(const MomentStats& m, long d)
{
  if (d < 2) throw std::invalid_argument("lambda_cor5: d must be >= 2");
  const double dd = static_cast<double>(d);
  return std::cbrt(2.0 * dd * (dd - 1.0) * m.sigma2_f / std::pow(m.mu_f, 4.0));
}

/// Golden-section search for the maximum of f on [lo, hi].
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol)
{
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double e = lo + inv_phi * (hi - lo);
  double fc = f(c), fe = f(e);
  while (hi - lo > tol) {
    if (fc >= fe) {
      hi = e;
      e = c;
      fe = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = e;
      fc = fe;
      e = lo + inv_phi * (hi - lo);
      fe = f(e);
    }
  }
  return 0.5 * (lo + hi);
}

struct LambdaOptimum {
  double lambda = std::numeric_limits<double>::quiet_NaN();
  BoundReport report;
};

/// Maximizes the two-parameter bound over lambda in (0, 1). The search is
/// bracketed around lambda_cor5; a dense scan replaces the bracket when the
/// sampled objective is not single-peaked inside it.
inline LambdaOptimum optimize_lambda(const MomentStats& m, long d, double tol = 1e-10)
{
  if (d < 2) throw std::invalid_argument("optimize_lambda: d must be >= 2");
  auto objective = [&](double lambda) { return detail::two_param_ratio(d, lambda, two_param_t(m, d, lambda)); };

  const double seed = lambda_cor5(m, d);
  double lo = seed / 10.0;
  double hi = std::min(0.9, 50.0 * seed);

  constexpr int kSamples = 256;
  std::vector<double> vals(kSamples + 1);
  int peak = 0;
  for (int i = 0; i <= kSamples; ++i) {
    vals[i] = objective(lo + (hi - lo) * i / kSamples);
    if (vals[i] > vals[peak]) peak = i;
  }
  bool single_peaked = peak > 0 && peak < kSamples;
  for (int i = 1; single_peaked && i <= peak; ++i) single_peaked = vals[i] >= vals[i - 1];
  for (int i = peak + 1; single_peaked && i <= kSamples; ++i) single_peaked = vals[i] <= vals[i - 1];

  std::string notes;
  if (single_peaked) {
    const double step = (hi - lo) / kSamples;
    const double a = lo + step * (peak - 1), b = lo + step * (peak + 1);
    lo = a;
    hi = b;
  } else {
    constexpr double kStep = 1e-4;
    int best = 1;
    double best_val = objective(kStep);
    for (int k = 2; k < 10000; ++k) {
      const double v = objective(k * kStep);
      if (v > best_val) {
        best_val = v;
        best = k;
      }
    }
    lo = (best - 1) * kStep;
    hi = (best + 1) * kStep;
    if (lo <= 0) lo = kStep / 2;
    notes = "dense scan fallback";
  }

  LambdaOptimum opt;
  opt.lambda = golden_section_max(objective, lo, hi, tol);
  opt.report = bound_two_param(m, d, opt.lambda, BoundMethod::two_param_opt);
  if (!notes.empty()) opt.report.notes = opt.report.notes.empty() ? notes : opt.report.notes + "; " + notes;
  return opt;
}

/// ln of the lower bound D(4k-1) >= D(4k)/(4k) = (4k)^(2k-1), from the minors
/// of a Hadamard matrix of order 4k.
inline double bound_sharpe(long k)
{
  if (k < 1) throw std::invalid_argument("bound_sharpe: k must be >= 1");
  const double o = 4.0 * static_cast<double>(k);
  return (2.0 * static_cast<double>(k) - 1.0) * std::log(o);
}

/// The Sharpe bound converted to D(n)/n^(n/2) with n = 4k - 1.
inline double sharpe_dbar(long k)
{
  const double n = 4.0 * static_cast<double>(k) - 1.0;
  return std::exp(bound_sharpe(k) - 0.5 * n * std::log(n));
}

enum class ClosedForm { cor2, cor3, target_const };

struct ClosedFormValue {
  double value = 0.0;
  bool applicable = false;
};

/// Published simplified lower bounds on D(n)/n^(n/2):
///   cor2:         (2/(pi e))^(d/2) (1 - d^2 sqrt(pi / (2h)))
///   cor3:         (2/(pi e))^(d/2) (1 - d sqrt(2 pi e (d-1) / h)) e^(-d^2/(2h))
///   target_const: (2/(pi e))^(d/2)
inline ClosedFormValue closed_form_dbar(long h, long d, ClosedForm form)
{
  const double hh = static_cast<double>(h), dd = static_cast<double>(d);
  const double pi = std::numbers::pi, e = std::numbers::e;
  const double base = std::pow(2.0 / (pi * e), dd / 2.0);
  double v = base;
  switch (form) {
    case ClosedForm::cor2: v = base * (1.0 - dd * dd * std::sqrt(pi / (2.0 * hh))); break;
    case ClosedForm::cor3:
      v = base * (1.0 - dd * std::sqrt(2.0 * pi * e * (dd - 1.0) / hh)) * std::exp(-dd * dd / (2.0 * hh));
      break;
    case ClosedForm::target_const: break;
  }
  return {v, v > 0};
}

/// (1 - delta - (d-1) eps)(1 - delta + eps)^(d-1): lower bound on det(I - E)
/// when |e_ij| <= eps off the diagonal and e_ii <= delta.
template <typename T = double>
T perturbation_bound(long d, const T& delta, const T& eps)
{
  if (d < 1) throw std::invalid_argument("perturbation_bound: d must be >= 1");
  if (delta < 0 || eps < 0) throw std::invalid_argument("perturbation_bound: delta and eps must be nonnegative");
  const T first = T(1) - delta - T(d - 1) * eps;
  if (first < 0) throw std::invalid_argument("perturbation_bound: need delta + (d-1) eps <= 1");
  T r = first;
  const T second = T(1) - delta + eps;
  for (long i = 1; i < d; ++i) r *= second;
  return r;
}

/// Evaluates one method at (h, d). d = 0 means n is itself a Hadamard order.
/// Methods whose hypotheses exclude this d report applicable = false.
inline BoundReport evaluate(BoundMethod method, const MomentStats& m, long d)
{
  if (d < 0) throw std::invalid_argument("evaluate: d must be >= 0");
  if (d == 0) {
    BoundReport r = detail::make_report(method, m, 0);
    r.applicable = true;
    r.ratio_bound = 1.0;
    r.dbar_bound = 1.0;
    r.notes = "n is a Hadamard order";
    return r;
  }
  auto not_for = [&](const char* why) {
    BoundReport r = detail::make_report(method, m, d);
    r.notes = why;
    return r;
  };
  switch (method) {
    case BoundMethod::expand_det:
      if (d > 3) return not_for("requires d <= 3");
      return bound_expand_det(m, d);
    case BoundMethod::chebyshev: return bound_chebyshev(m, d);
    case BoundMethod::chebyshev_opt: return bound_chebyshev_opt(m, d);
    case BoundMethod::chebyshev_lll: return bound_chebyshev_lll(m, d);
    case BoundMethod::cantelli_hoeffding_lll:
      if (d < 2) return not_for("requires d >= 2");
      return bound_cantelli_hoeffding(m, d, true);
    case BoundMethod::cantelli_hoeffding_nolll:
      if (d < 2) return not_for("requires d >= 2");
      return bound_cantelli_hoeffding(m, d, false);
    case BoundMethod::two_param_cor5:
      if (d < 2) return not_for("requires d >= 2");
      return bound_two_param(m, d, lambda_cor5(m, d), BoundMethod::two_param_cor5);
    case BoundMethod::two_param_opt:
      if (d < 2) return not_for("requires d >= 2");
      return optimize_lambda(m, d).report;
    case BoundMethod::sharpe: {
      const long n = m.h + d;
      if ((n + 1) % 4 != 0) return not_for("requires n + 1 to be a Hadamard order");
      BoundReport r = detail::make_report(method, m, d);
      const long k = (n + 1) / 4;
      const double hh = static_cast<double>(m.h);
      r.ratio_bound = std::exp(bound_sharpe(k) - 0.5 * hh * std::log(hh) - static_cast<double>(d) * std::log(m.mu_f));
      r.dbar_bound = sharpe_dbar(k);
      r.applicable = true;
      r.notes = "assumes n + 1 is a Hadamard order";
      return r;
    }
  }
  throw std::logic_error("evaluate: unknown method");
}

inline BoundReport evaluate(BoundMethod method, long h, long d) { return evaluate(method, moments(h), d); }

struct BoundColumn {
  long d = 0;
  long n = 0;
  double proportionality = std::numeric_limits<double>::quiet_NaN();  // mu^d h^(h/2) / n^(n/2)
  std::vector<BoundReport> rows;
};

struct BoundTable {
  MomentStats stats;
  std::vector<BoundColumn> columns;
};

struct TableOptions {
  std::vector<BoundMethod> methods;  // empty: every method except sharpe
  bool include_sharpe = false;       // caller asserts n + 1 is a Hadamard order
};

inline BoundTable make_table(long h, const std::vector<long>& d_list, const TableOptions& opt = {})
{
  BoundTable table;
  table.stats = moments(h);
  std::vector<BoundMethod> methods = opt.methods;
  if (methods.empty())
    for (BoundMethod m : kAllMethods)
      if (m != BoundMethod::sharpe) methods.push_back(m);
  if (opt.include_sharpe && std::find(methods.begin(), methods.end(), BoundMethod::sharpe) == methods.end())
    methods.push_back(BoundMethod::sharpe);
  for (long d : d_list) {
    if (d < 0) throw std::invalid_argument("make_table: d must be >= 0");
    BoundColumn col;
    col.d = d;
    col.n = h + d;
    col.proportionality = d == 0 ? 1.0 : convert_dbar(table.stats, d, 1.0);
    for (BoundMethod m : methods) col.rows.push_back(evaluate(m, table.stats, d));
    table.columns.push_back(std::move(col));
  }
  return table;
}

}  // namespace maxdet

#endif  // MAXDET_BOUNDS_HPP
