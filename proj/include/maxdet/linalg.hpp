#ifndef MAXDET_LINALG_HPP
#define MAXDET_LINALG_HPP

#include "maxdet/exactmath.hpp"
#include "maxdet/sign_matrix.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace maxdet {

/// Dense square matrix, row-major.
template <typename T>
class SquareMatrix {
public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, const T& fill = T(0)) : n_(n), a_(n * n, fill) {}

  static SquareMatrix identity(std::size_t n)
  {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static SquareMatrix from(const SignMatrix& s)
  {
    if (!s.square()) throw std::invalid_argument("SquareMatrix::from: matrix is not square");
    SquareMatrix m(s.rows());
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) m(i, j) = T(s(i, j));
    return m;
  }

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  void swap_rows(std::size_t r, std::size_t s)
  {
    for (std::size_t j = 0; j < n_; ++j) std::swap(a_[r * n_ + j], a_[s * n_ + j]);
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
  std::size_t n_ = 0;
  std::vector<T> a_;
};

using IntMatrix = SquareMatrix<BigInt>;
using RatMatrix = SquareMatrix<BigRational>;

/// Exact determinant by fraction-free (Bareiss) elimination. Zero pivots are
/// handled by a row swap (sign flip); a column with no nonzero pivot gives 0.
inline BigInt det_exact(IntMatrix m)
{
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("det_exact: empty matrix");
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(t);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  BigInt d = m(n - 1, n - 1);
  return sign < 0 ? BigInt(-d) : d;
}

inline BigInt det_exact(const SignMatrix& s) { return det_exact(IntMatrix::from(s)); }

/// Exact determinant over the rationals: each row is scaled by the lcm of its
/// denominators, then the integer matrix goes through Bareiss.
inline BigRational det_rational(const RatMatrix& m)
{
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("det_rational: empty matrix");
  IntMatrix z(n);
  BigInt scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) z(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    scale *= l;
  }
  BigRational det(det_exact(std::move(z)), scale);
  det.canonicalize();
  return det;
}

/// Inverse over the rationals by Gauss-Jordan elimination.
inline RatMatrix inverse_rational(RatMatrix m)
{
  const std::size_t n = m.size();
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && m(r, k) == 0) ++r;
    if (r == n) throw std::domain_error("inverse_rational: matrix is singular");
    m.swap_rows(k, r);
    inv.swap_rows(k, r);
    const BigRational p = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= p;
      inv(k, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      const BigRational f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace maxdet

#endif  // MAXDET_LINALG_HPP
