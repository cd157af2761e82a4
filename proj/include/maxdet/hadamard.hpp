#ifndef MAXDET_HADAMARD_HPP
#define MAXDET_HADAMARD_HPP

#include "maxdet/finite_field.hpp"
#include "maxdet/sign_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace maxdet {

/// Constructed matrices of order up to this cap are checked for H H^T = h I.
inline constexpr std::size_t kValidationCap = 1000;

/// True iff m is square with entries +-1 and m m^T = n I in exact integer arithmetic.
inline bool is_hadamard(const SignMatrix& m)
{
  if (!m.square() || m.has_zero()) return false;
  const std::size_t n = m.rows();
  const auto& e = m.entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      long dot = 0;
      const auto* ri = &e[i * n];
      const auto* rj = &e[j * n];
      for (std::size_t k = 0; k < n; ++k) dot += ri[k] * rj[k];
      if (dot != (i == j ? static_cast<long>(n) : 0)) return false;
    }
  return true;
}

/// Hadamard matrix with the construction chain that produced it.
class HadamardMatrix {
public:
  HadamardMatrix(SignMatrix m, std::string provenance, bool validate = true)
      : matrix_(std::move(m)), provenance_(std::move(provenance))
  {
    if (!matrix_.square()) throw std::invalid_argument("HadamardMatrix: matrix must be square");
    if (validate && matrix_.rows() <= kValidationCap && !is_hadamard(matrix_))
      throw std::invalid_argument("HadamardMatrix: H H^T != h I for " + provenance_);
  }

  long order() const { return static_cast<long>(matrix_.rows()); }
  const SignMatrix& matrix() const { return matrix_; }
  const std::string& provenance() const { return provenance_; }
  int operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

private:
  SignMatrix matrix_;
  std::string provenance_;
};

/// Multiply rows and columns by -1 so the first row and column are all +1.
inline SignMatrix normalized(SignMatrix m)
{
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, 0) < 0) m.negate_row(i);
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(0, j) < 0) m.negate_col(j);
  return m;
}

inline HadamardMatrix hadamard_order_one() { return HadamardMatrix(SignMatrix(1, 1, 1), "base(1)"); }

/// [[H, H], [H, -H]].
inline HadamardMatrix sylvester(const HadamardMatrix& core)
{
  const std::size_t h = static_cast<std::size_t>(core.order());
  SignMatrix m(2 * h, 2 * h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      const int v = core(i, j);
      m.set(i, j, v);
      m.set(i, j + h, v);
      m.set(i + h, j, v);
      m.set(i + h, j + h, -v);
    }
  return HadamardMatrix(normalized(std::move(m)), "sylvester(" + core.provenance() + ")");
}

inline HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b)
{
  const std::size_t ha = static_cast<std::size_t>(a.order());
  const std::size_t hb = static_cast<std::size_t>(b.order());
  SignMatrix m(ha * hb, ha * hb);
  for (std::size_t i = 0; i < ha; ++i)
    for (std::size_t j = 0; j < ha; ++j)
      for (std::size_t k = 0; k < hb; ++k)
        for (std::size_t l = 0; l < hb; ++l) m.set(i * hb + k, j * hb + l, a(i, j) * b(k, l));
  return HadamardMatrix(normalized(std::move(m)), "kron(" + a.provenance() + "," + b.provenance() + ")");
}

/// Paley construction from GF(q), q an odd prime power: order q+1 when
/// q = 3 mod 4, order 2(q+1) when q = 1 mod 4.
inline HadamardMatrix paley(long q)
{
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("paley: q must be an odd prime power, got " + std::to_string(q));
  if (!prime_power(q)) throw std::invalid_argument("paley: q must be an odd prime power, got " + std::to_string(q));
  const FiniteField field(q);
  const auto chi = field.quadratic_character();
  const std::size_t uq = static_cast<std::size_t>(q);

  // Jacobsthal-bordered core S of order q+1: S = [[0, 1^T], [eps*1, Q]].
  const int eps = (q % 4 == 3) ? -1 : 1;
  std::vector<int> s((uq + 1) * (uq + 1), 0);
  for (std::size_t j = 1; j <= uq; ++j) {
    s[j] = 1;
    s[j * (uq + 1)] = eps;
  }
  for (std::size_t i = 0; i < uq; ++i)
    for (std::size_t j = 0; j < uq; ++j)
      s[(i + 1) * (uq + 1) + (j + 1)] = chi[static_cast<std::size_t>(field.sub(static_cast<long>(i), static_cast<long>(j)))];

  const std::size_t m = uq + 1;
  if (q % 4 == 3) {
    SignMatrix h(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) h.set(i, j, s[i * m + j] + (i == j ? 1 : 0));
    return HadamardMatrix(normalized(std::move(h)), "paley1(q=" + std::to_string(q) + ")");
  }

  // Symmetric conference matrix: zero diagonal -> [[1,-1],[-1,-1]], +-1 -> +-[[1,1],[1,-1]].
  SignMatrix h(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const int v = s[i * m + j];
      const int blk[2][2] = {{v == 0 ? 1 : v, v == 0 ? -1 : v}, {v == 0 ? -1 : v, v == 0 ? -1 : -v}};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) h.set(2 * i + a, 2 * j + b, blk[a][b]);
    }
  return HadamardMatrix(normalized(std::move(h)), "paley2(q=" + std::to_string(q) + ")");
}

/// An equivalent Hadamard matrix: rows and columns randomly permuted and negated.
inline HadamardMatrix scrambled(const HadamardMatrix& a, std::uint64_t seed)
{
  const std::size_t h = static_cast<std::size_t>(a.order());
  std::mt19937_64 gen(seed);
  std::vector<std::size_t> rp(h), cp(h);
  std::iota(rp.begin(), rp.end(), 0);
  std::iota(cp.begin(), cp.end(), 0);
  std::shuffle(rp.begin(), rp.end(), gen);
  std::shuffle(cp.begin(), cp.end(), gen);
  std::vector<int> rs(h), cs(h);
  for (auto& v : rs) v = (gen() & 1) ? -1 : 1;
  for (auto& v : cs) v = (gen() & 1) ? -1 : 1;
  SignMatrix m(h, h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) m.set(i, j, rs[i] * cs[j] * a(rp[i], cp[j]));
  return HadamardMatrix(std::move(m), "scrambled(" + a.provenance() + ")");
}

}  // namespace maxdet

#endif  // MAXDET_HADAMARD_HPP
