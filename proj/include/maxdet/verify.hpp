#ifndef MAXDET_VERIFY_HPP
#define MAXDET_VERIFY_HPP

#include "maxdet/bounds.hpp"
#include "maxdet/construction.hpp"
#include "maxdet/exactmath.hpp"
#include "maxdet/hadamard.hpp"
#include "maxdet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxdet {

/// Exact comparison of an enumerated expectation against its closed form.
struct EnumerationReport {
  long h = 0;
  std::string quantity;
  BigRational enumerated_value;
  BigRational formula_value;
  bool equal = false;
};

namespace detail {

inline EnumerationReport exact_report(long h, std::string q, BigRational enumerated, BigRational formula)
{
  EnumerationReport r{h, std::move(q), std::move(enumerated), std::move(formula), false};
  r.equal = (r.enumerated_value == r.formula_value);
  return r;
}

inline BigRational ratio(const BigInt& num, const BigInt& den)
{
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace detail

/// Enumerates every first column b of B (2^h cases). f_11 depends on b alone:
/// h f_11 = sum_k |(A^T b)_k|. Compares E[f_11], E[f_11^2], E[g_11], V[g_11]
/// against the closed forms.
inline std::vector<EnumerationReport> enumerate_diagonal_moments(const HadamardMatrix& A)
{
  const long h = A.order();
  if (h > 20) throw std::invalid_argument("enumerate_diagonal_moments: h must be <= 20");
  if (!is_hadamard_multiple_of_four(h)) throw std::invalid_argument("enumerate_diagonal_moments: h must be a multiple of 4");
  const std::size_t uh = static_cast<std::size_t>(h);

  // Gray-code walk: v = A^T b, starting from b = all +1.
  std::vector<long> v(uh, 0);
  for (std::size_t m = 0; m < uh; ++m)
    for (std::size_t k = 0; k < uh; ++k) v[k] += A(m, k);
  std::vector<int> b(uh, 1);
  std::int64_t sum = 0, sum_sq = 0;
  const std::uint64_t total = 1ULL << uh;
  for (std::uint64_t step = 0;; ++step) {
    long hf = 0;
    for (long x : v) hf += x < 0 ? -x : x;
    sum += hf;
    sum_sq += static_cast<std::int64_t>(hf) * hf;
    if (step + 1 == total) break;
    const std::size_t m = static_cast<std::size_t>(__builtin_ctzll(step + 1));
    b[m] = -b[m];
    for (std::size_t k = 0; k < uh; ++k) v[k] += 2 * b[m] * A(m, k);
  }

  const BigInt cases = pow2(uh);
  const BigRational e_f = detail::ratio(BigInt(sum), cases * h);
  const BigRational e_f2 = detail::ratio(BigInt(sum_sq), cases * h * h);
  const BigRational var = e_f2 - e_f * e_f;

  const BigRational formula_e_f = detail::ratio(binomial(h, h / 2) * h, cases);
  const BigInt quarter = binomial(h / 2, h / 4);
  const BigRational formula_e_f2 = BigRational(1) + detail::ratio(quarter * quarter * (h * (h - 1)), pow2(uh + 1));

  return {
      detail::exact_report(h, "E[f11]", e_f, formula_e_f),
      detail::exact_report(h, "E[f11^2]", e_f2, formula_e_f2),
      detail::exact_report(h, "E[g11]", e_f + 1, exact_mu(h)),
      detail::exact_report(h, "V[g11]", var, exact_sigma2(h)),
  };
}

/// Enumerates every pair of columns (b1, b2) (2^(2h) cases);
/// h f_12 = c_1 . (A^T b2) with c_1 = sgn(A^T b1).
inline std::vector<EnumerationReport> enumerate_offdiag_moments(const HadamardMatrix& A)
{
  const long h = A.order();
  if (h > 8) throw std::invalid_argument("enumerate_offdiag_moments: h must be <= 8");
  const std::size_t uh = static_cast<std::size_t>(h);
  const std::uint64_t total = 1ULL << uh;

  std::int64_t sum = 0, sum_sq = 0;
  std::vector<int> c(uh);
  for (std::uint64_t b1 = 0; b1 < total; ++b1) {
    for (std::size_t k = 0; k < uh; ++k) {
      long s = 0;
      for (std::size_t m = 0; m < uh; ++m) s += A(m, k) * (((b1 >> m) & 1U) ? -1 : 1);
      c[k] = s >= 0 ? 1 : -1;
    }
    for (std::uint64_t b2 = 0; b2 < total; ++b2) {
      long hf = 0;
      for (std::size_t k = 0; k < uh; ++k) {
        long s = 0;
        for (std::size_t m = 0; m < uh; ++m) s += A(m, k) * (((b2 >> m) & 1U) ? -1 : 1);
        hf += c[k] * s;
      }
      sum += hf;
      sum_sq += static_cast<std::int64_t>(hf) * hf;
    }
  }
  const BigInt cases = pow2(2 * uh);
  return {
      detail::exact_report(h, "E[f12]", detail::ratio(BigInt(sum), cases * h), 0),
      detail::exact_report(h, "E[f12^2]", detail::ratio(BigInt(sum_sq), cases * h * h), 1),
  };
}

/// A seeded Monte Carlo estimate compared against a bound or reference value.
struct MonteCarloCheck {
  std::string name;
  double estimate = 0.0;
  double reference = 0.0;
  double slack = 0.0;  // 3 standard errors
  bool pass = false;
};

struct DependenceReport {
  long h = 0;
  long d = 0;
  long samples = 0;
  std::vector<MonteCarloCheck> checks;  // empty when d < 2
  bool pass() const
  {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Sample moments of the off-diagonal products: E|f12 f21| <= 1, and a product
/// over disjoint index pairs (f12 f34, or f12 f33 when d = 3) has mean
/// E[f12] E[..] = 0.
inline DependenceReport check_dependence_structure(const HadamardMatrix& A, long d, long samples, std::uint64_t seed)
{
  DependenceReport rep;
  rep.h = A.order();
  rep.d = d;
  rep.samples = samples;
  if (d < 2 || samples < 2) return rep;

  const double h = static_cast<double>(A.order());
  double s_abs = 0, s_abs2 = 0, s_dis = 0, s_dis2 = 0;
  for (long i = 0; i < samples; ++i) {
    const BorderSample s = sample_border(A, d, derive_seed(seed, static_cast<std::uint64_t>(i)));
    const double f12 = s.hF(0, 1).get_d() / h;
    const double f21 = s.hF(1, 0).get_d() / h;
    const double x = std::fabs(f12 * f21);
    s_abs += x;
    s_abs2 += x * x;
    if (d >= 3) {
      const double other = d >= 4 ? s.hF(2, 3).get_d() / h : s.hF(2, 2).get_d() / h;
      const double y = f12 * other;
      s_dis += y;
      s_dis2 += y * y;
    }
  }
  const double N = static_cast<double>(samples);
  auto se = [N](double s, double s2) {
    const double mean = s / N;
    return std::sqrt(std::max(0.0, (s2 / N - mean * mean) * N / (N - 1)) / N);
  };
  MonteCarloCheck abs_product{"E|f12 f21| <= 1", s_abs / N, 1.0, 3.0 * se(s_abs, s_abs2), false};
  abs_product.pass = abs_product.estimate <= abs_product.reference + abs_product.slack;
  rep.checks.push_back(abs_product);
  if (d >= 3) {
    MonteCarloCheck indep{d >= 4 ? "E[f12 f34] = 0" : "E[f12 f33] = 0", s_dis / N, 0.0, 3.0 * se(s_dis, s_dis2), false};
    indep.pass = std::fabs(indep.estimate - indep.reference) <= indep.slack;
    rep.checks.push_back(indep);
  }
  return rep;
}

struct PerturbationReport {
  long d = 0;
  long trials = 0;
  long violations_general = 0;    // one-sided diagonal bound
  long violations_symmetric = 0;  // all |e_ij| <= eps, det >= 1 - d eps
  BigRational min_margin_general;
  BigRational min_margin_symmetric;
  bool pass() const { return violations_general == 0 && violations_symmetric == 0; }
};

struct PerturbationParams {
  bool fixed = false;
  double delta = 0.0;
  double eps = 0.0;
};

namespace detail {

// Uniform dyadic rational in [lo, hi] with 2^-30 granularity, hitting the
// endpoints with probability 1/8 each.
inline BigRational sample_between(std::mt19937_64& gen, const BigRational& lo, const BigRational& hi)
{
  const std::uint64_t r = gen();
  const unsigned pick = static_cast<unsigned>(r & 7U);
  if (pick == 0) return lo;
  if (pick == 1) return hi;
  BigRational u(BigInt(static_cast<unsigned long>((r >> 3) & ((1ULL << 30) - 1))), pow2(30));
  u.canonicalize();
  return lo + (hi - lo) * u;
}

}  // namespace detail

/// Random M = I - E checked exactly against the perturbation bounds.
/// General case: |e_ij| <= eps off the diagonal, e_ii in [-10 delta, delta],
/// delta + (d-1) eps <= 1. Symmetric case: all |e_ij| <= eps, d eps <= 1.
/// Unless `params.fixed`, (delta, eps) is drawn afresh for every trial.
inline PerturbationReport check_perturbation_lemmas(long d, long trials, std::uint64_t seed, PerturbationParams params = {})
{
  if (d < 1) throw std::invalid_argument("check_perturbation_lemmas: d must be >= 1");
  PerturbationReport rep;
  rep.d = d;
  rep.trials = trials;
  std::mt19937_64 gen(seed);
  const std::size_t ud = static_cast<std::size_t>(d);
  const BigRational zero = 0, one = 1;
  bool first = true;

  for (long trial = 0; trial < trials; ++trial) {
    BigRational delta, eps;
    if (params.fixed) {
      delta = params.delta;
      eps = params.eps;
    } else {
      eps = detail::sample_between(gen, zero, d > 1 ? BigRational(1, d - 1) : one);
      delta = detail::sample_between(gen, zero, one - BigRational(d - 1) * eps);
    }
    if (delta + BigRational(d - 1) * eps > 1) throw std::invalid_argument("check_perturbation_lemmas: delta + (d-1) eps > 1");

    RatMatrix M = RatMatrix::identity(ud);
    for (std::size_t i = 0; i < ud; ++i)
      for (std::size_t j = 0; j < ud; ++j)
        M(i, j) -= (i == j) ? detail::sample_between(gen, BigRational(-10) * delta, delta)
                            : detail::sample_between(gen, BigRational(-eps), eps);
    const BigRational margin = det_rational(M) - perturbation_bound<BigRational>(d, delta, eps);
    if (margin < 0) ++rep.violations_general;

    // symmetric case: d eps <= 1
    BigRational eps_sym = params.fixed ? BigRational(eps) : detail::sample_between(gen, zero, BigRational(1, d));
    if (BigRational(d) * eps_sym > 1) eps_sym = BigRational(1, d);
    RatMatrix S = RatMatrix::identity(ud);
    for (std::size_t i = 0; i < ud; ++i)
      for (std::size_t j = 0; j < ud; ++j) S(i, j) -= detail::sample_between(gen, BigRational(-eps_sym), eps_sym);
    const BigRational margin_sym = det_rational(S) - (one - BigRational(d) * eps_sym);
    if (margin_sym < 0) ++rep.violations_symmetric;

    if (first || margin < rep.min_margin_general) rep.min_margin_general = margin;
    if (first || margin_sym < rep.min_margin_symmetric) rep.min_margin_symmetric = margin_sym;
    first = false;
  }
  return rep;
}

struct TailReport {
  std::vector<MonteCarloCheck> checks;
  bool pass() const
  {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Empirical tail frequencies of g11 and g12 against Chebyshev, Cantelli and
/// Hoeffding bounds over a lambda grid, for each supplied Hadamard matrix.
inline TailReport check_tail_inequalities(const std::vector<HadamardMatrix>& matrices, long trials, std::uint64_t seed,
                                          const std::vector<double>& lambdas = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 100.0})
{
  TailReport rep;
  for (const HadamardMatrix& A : matrices) {
    const MomentStats mom = moments(A.order());
    const double h = static_cast<double>(A.order());
    std::vector<double> g11(static_cast<std::size_t>(trials)), g12(static_cast<std::size_t>(trials));
    for (long i = 0; i < trials; ++i) {
      const BorderSample s = sample_border(A, 2, derive_seed(seed ^ static_cast<std::uint64_t>(A.order()), static_cast<std::uint64_t>(i)));
      g11[static_cast<std::size_t>(i)] = 1.0 + s.hF(0, 0).get_d() / h;
      g12[static_cast<std::size_t>(i)] = s.hF(0, 1).get_d() / h;
    }
    const double N = static_cast<double>(trials);
    auto freq = [&](const std::vector<double>& xs, auto pred) {
      long c = 0;
      for (double x : xs)
        if (pred(x)) ++c;
      return static_cast<double>(c) / N;
    };
    auto add = [&](std::string name, double p, double bound) {
      const double slack = 3.0 * std::sqrt(p * (1.0 - p) / N);
      rep.checks.push_back({std::move(name), p, bound, slack, p <= bound + slack});
    };
    const std::string tag = "h=" + std::to_string(A.order()) + " lambda=";
    const double mu = mom.mu_f, s2 = mom.sigma2_f;
    // 1e-9 absorbs rounding in g11 - mu at exact threshold crossings
    for (double lam : lambdas) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", lam);
      const std::string at = tag + buf;
      add("chebyshev |g11-mu|>=l " + at, freq(g11, [&](double x) { return std::fabs(x - mu) >= lam - 1e-9; }), s2 / (lam * lam));
      add("cantelli g11-mu<=-l " + at, freq(g11, [&](double x) { return x - mu <= -lam + 1e-9; }), s2 / (s2 + lam * lam));
      add("cantelli g11-mu>=l " + at, freq(g11, [&](double x) { return x - mu >= lam - 1e-9; }), s2 / (s2 + lam * lam));
      add("chebyshev |g12|>=l " + at, freq(g12, [&](double x) { return std::fabs(x) >= lam - 1e-9; }), 1.0 / (lam * lam));
      // bounds [-|u_k|, |u_k|] with sum u_k^2 = 1 give sum (b_k - a_k)^2 = 4
      add("hoeffding |g12|>=l " + at, freq(g12, [&](double x) { return std::fabs(x) >= lam - 1e-9; }),
          2.0 * std::exp(-2.0 * lam * lam / 4.0));
    }
  }
  return rep;
}

struct Uncond2Report {
  long n_max = 0;
  long pairs = 0;
  long violations = 0;
  long double min_gap = 0;  // min of ln((h/n)^n) - (-d - d^2/h)
};

/// (h/n)^n > exp(-d - d^2/h) for all 1 <= h < n <= n_max, in log form with
/// extended precision.
inline Uncond2Report check_uncond2(long n_max)
{
  if (n_max < 2) throw std::invalid_argument("check_uncond2: n_max must be >= 2");
  Uncond2Report rep;
  rep.n_max = n_max;
  bool first = true;
  for (long n = 2; n <= n_max; ++n)
    for (long h = 1; h < n; ++h) {
      const long double nn = n, hh = h, dd = n - h;
      const long double lhs = nn * std::log1p(-dd / nn);
      const long double rhs = -dd - dd * dd / hh;
      const long double gap = lhs - rhs;
      ++rep.pairs;
      if (!(gap > 0)) ++rep.violations;
      if (first || gap < rep.min_gap) rep.min_gap = gap;
      first = false;
    }
  return rep;
}

/// Binomial sum identities for every k <= k_max, exactly.
struct BinomialIdentityReport {
  long k_max = 0;
  long failures = 0;
  long first_failure = -1;
  bool pass() const { return failures == 0; }
};

inline BinomialIdentityReport check_binomial_identities(long k_max)
{
  BinomialIdentityReport rep;
  rep.k_max = k_max;
  for (long k = 0; k <= k_max; ++k) {
    const BigInt c = binomial(2 * k, k);
    const bool ok = best_sum(k) == c * k && double_sum(k) == c * c * (2 * k * k);
    if (!ok) {
      ++rep.failures;
      if (rep.first_failure < 0) rep.first_failure = k;
    }
  }
  return rep;
}

/// Float enclosures of mu(h) and sigma^2(h) for h = 4, 8, ..., h_max, plus the
/// remainder terms alpha(h), beta(h) solved from the exact rationals.
struct EnclosureReport {
  long h_max = 0;
  long failures = 0;
  long first_failure = -1;
  long double alpha_min = 0, alpha_max = 0, beta_min = 0, beta_max = 0;
  bool pass() const { return failures == 0; }
};

/// Rational to long double with a 63-bit quotient, so extended precision
/// survives numerators and denominators far outside double range.
inline long double to_long_double(const BigRational& q)
{
  if (sgn(q) == 0) return 0.0L;
  BigInt num = abs(q.get_num());
  BigInt den = q.get_den();
  const long shift = 63 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
  if (shift >= 0)
    num <<= static_cast<unsigned long>(shift);
  else
    den <<= static_cast<unsigned long>(-shift);
  const BigInt quo = num / den;
  const long double r = std::ldexp(static_cast<long double>(quo.get_ui()), static_cast<int>(-shift));
  return sgn(q) < 0 ? -r : r;
}

inline EnclosureReport check_moment_enclosures(long h_max)
{
  if (h_max < 4) throw std::invalid_argument("check_moment_enclosures: h_max must be >= 4");
  EnclosureReport rep;
  rep.h_max = h_max;
  const long double pi = std::numbers::pi_v<long double>;
  const long double alpha_cap = (4.0L * std::sqrt(pi) - 7.0L) / 2.0L;
  const long double beta_cap = 12.0L - 37.0L / pi;
  bool first = true;
  for (long h = 4; h <= h_max; h += 4) {
    const long double hh = h;
    const long double mu = to_long_double(exact_mu(h));
    const long double s2 = to_long_double(exact_sigma2(h));
    const long double c = std::sqrt(2.0L * hh / pi);
    const long double alpha = hh * hh * ((mu - 1.0L) / c - 1.0L + 1.0L / (4.0L * hh));
    const long double beta = -hh * hh * (s2 - (1.0L - 3.0L / pi) - 11.0L / (4.0L * pi * hh));
    const bool ok = c + 0.9L < mu && mu < c + 1.0L && 1.0L - 3.0L / pi < s2 && exact_sigma2(h) <= BigRational(1, 4) &&
                    alpha >= 0 && alpha <= alpha_cap && alpha < 0.04491L && beta >= 0 && beta <= beta_cap && beta < 0.23L;
    if (!ok) {
      ++rep.failures;
      if (rep.first_failure < 0) rep.first_failure = h;
    }
    if (first) {
      rep.alpha_min = rep.alpha_max = alpha;
      rep.beta_min = rep.beta_max = beta;
      first = false;
    }
    rep.alpha_min = std::min(rep.alpha_min, alpha);
    rep.alpha_max = std::max(rep.alpha_max, alpha);
    rep.beta_min = std::min(rep.beta_min, beta);
    rep.beta_max = std::max(rep.beta_max, beta);
  }
  return rep;
}

}  // namespace maxdet

#endif  // MAXDET_VERIFY_HPP
