#ifndef MAXDET_EXACTMATH_HPP
#define MAXDET_EXACTMATH_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxdet {

using BigInt = mpz_class;
/// Exact rational; GMP keeps it in lowest terms with a positive denominator.
using BigRational = mpq_class;

inline BigInt pow2(unsigned long e)
{
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline BigInt ipow(const BigInt& base, unsigned long e)
{
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigRational ipow(const BigRational& base, unsigned long e)
{
  BigRational r(ipow(BigInt(base.get_num()), e), ipow(BigInt(base.get_den()), e));
  r.canonicalize();
  return r;
}

/// Binomial coefficient C(m, k), zero outside 0 <= k <= m.
/// Multiplicative descending product; every partial product is an exact binomial.
inline BigInt binomial(long m, long k)
{
  if (m < 0) throw std::invalid_argument("binomial: m must be nonnegative");
  if (k < 0 || k > m) return 0;
  if (k > m - k) k = m - k;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= static_cast<unsigned long>(m - k + i);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return r;
}

/// Row m of Pascal's triangle: C(m, 0), ..., C(m, m).
inline std::vector<BigInt> binomial_row(long m)
{
  if (m < 0) throw std::invalid_argument("binomial_row: m must be nonnegative");
  std::vector<BigInt> row(static_cast<std::size_t>(m) + 1);
  row[0] = 1;
  for (long j = 0; j < m; ++j) {
    row[static_cast<std::size_t>(j) + 1] = row[static_cast<std::size_t>(j)] * static_cast<unsigned long>(m - j);
    mpz_divexact_ui(row[static_cast<std::size_t>(j) + 1].get_mpz_t(), row[static_cast<std::size_t>(j) + 1].get_mpz_t(),
                    static_cast<unsigned long>(j + 1));
  }
  return row;
}

/// Sum over p of C(2k, k+p)|p|, by direct summation.
inline BigInt best_sum(long k)
{
  if (k < 0) throw std::invalid_argument("best_sum: k must be nonnegative");
  const std::vector<BigInt> row = binomial_row(2 * k);
  BigInt s = 0;
  for (long p = -k; p <= k; ++p) s += row[static_cast<std::size_t>(k + p)] * static_cast<unsigned long>(p < 0 ? -p : p);
  return s;
}

/// Sum over p, q of C(2k, k+p) C(2k, k+q) |p^2 - q^2|, by direct double summation.
inline BigInt double_sum(long k)
{
  if (k < 0) throw std::invalid_argument("double_sum: k must be nonnegative");
  const std::vector<BigInt> row = binomial_row(2 * k);
  BigInt s = 0;
  for (long p = -k; p <= k; ++p) {
    BigInt inner = 0;
    for (long q = -k; q <= k; ++q) {
      const long w = p * p - q * q;
      inner += row[static_cast<std::size_t>(k + q)] * static_cast<unsigned long>(w < 0 ? -w : w);
    }
    s += row[static_cast<std::size_t>(k + p)] * inner;
  }
  return s;
}

inline bool is_hadamard_multiple_of_four(long h) { return h >= 4 && h % 4 == 0; }

/// Mean and variance of a diagonal entry g_ii of G = C A^{-1} B + I under a
/// uniformly random border B, for a Hadamard matrix A of order h.
struct MomentStats {
  long h = 0;
  BigRational mu;
  BigRational sigma2;
  double mu_f = 0.0;
  double sigma2_f = 0.0;
  double tau_f = 0.0;  // sigma / mu
};

/// Exact mu(h) = 1 + h C(h, h/2) / 2^h.
inline BigRational exact_mu(long h)
{
  if (!is_hadamard_multiple_of_four(h))
    throw std::invalid_argument("moments: h must be a positive multiple of 4, got " + std::to_string(h));
  BigRational mu(binomial(h, h / 2) * static_cast<unsigned long>(h), pow2(static_cast<unsigned long>(h)));
  mu.canonicalize();
  return mu + 1;
}

/// Exact sigma^2(h) = 1 + h(h-1) C(h/2, h/4)^2 / 2^(h+1) - h^2 C(h, h/2)^2 / 2^(2h).
inline BigRational exact_sigma2(long h)
{
  if (!is_hadamard_multiple_of_four(h))
    throw std::invalid_argument("moments: h must be a positive multiple of 4, got " + std::to_string(h));
  const auto uh = static_cast<unsigned long>(h);
  const BigInt quarter = binomial(h / 2, h / 4);
  const BigInt half = binomial(h, h / 2);
  BigRational second(quarter * quarter * (uh * (uh - 1)), pow2(uh + 1));
  second.canonicalize();
  BigRational mean_f(half * uh, pow2(uh));
  mean_f.canonicalize();
  return BigRational(1) + second - mean_f * mean_f;
}

inline MomentStats moments(long h)
{
  MomentStats m;
  m.h = h;
  m.mu = exact_mu(h);
  m.sigma2 = exact_sigma2(h);
  m.mu_f = m.mu.get_d();
  m.sigma2_f = m.sigma2.get_d();
  m.tau_f = std::sqrt(m.sigma2_f) / m.mu_f;
  return m;
}

/// True iff mu strictly increases and sigma^2 strictly decreases over
/// h = 4, 8, ..., h_max, compared as exact rationals.
inline bool mu_monotone_check(long h_max)
{
  if (h_max < 8 || h_max % 4 != 0)
    throw std::invalid_argument("mu_monotone_check: h_max must be a multiple of 4 and >= 8");
  BigRational mu_prev = exact_mu(4);
  BigRational s2_prev = exact_sigma2(4);
  for (long h = 8; h <= h_max; h += 4) {
    BigRational mu = exact_mu(h);
    BigRational s2 = exact_sigma2(h);
    if (!(mu_prev < mu) || !(s2_prev > s2)) return false;
    mu_prev = std::move(mu);
    s2_prev = std::move(s2);
  }
  return true;
}

/// Natural log of a positive rational, accurate to double precision even when
/// numerator and denominator overflow a double.
inline double log_rational(const BigRational& q)
{
  if (sgn(q) <= 0) throw std::domain_error("log_rational: argument must be positive");
  auto log_int = [](const BigInt& z) {
    long e = 0;
    const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * std::log(2.0);
  };
  return log_int(q.get_num()) - log_int(q.get_den());
}

inline std::string to_string(const BigRational& q) { return q.get_str(); }

}  // namespace maxdet

#endif  // MAXDET_EXACTMATH_HPP
