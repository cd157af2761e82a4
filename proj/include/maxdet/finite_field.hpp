#ifndef MAXDET_FINITE_FIELD_HPP
#define MAXDET_FINITE_FIELD_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace maxdet {

inline bool is_prime(long n)
{
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

/// (p, k) with q = p^k, or nullopt if q is not a prime power.
inline std::optional<std::pair<long, int>> prime_power(long q)
{
  if (q < 2) return std::nullopt;
  long p = 0;
  for (long f = 2; f * f <= q; ++f)
    if (q % f == 0) {
      p = f;
      break;
    }
  if (p == 0) return std::make_pair(q, 1);
  int k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, k);
}

/// GF(p^k). Elements are integers in [0, q) whose base-p digits are the
/// polynomial coefficients (lowest degree first) modulo a monic irreducible.
class FiniteField {
public:
  explicit FiniteField(long q)
  {
    const auto pk = prime_power(q);
    if (!pk) throw std::invalid_argument("FiniteField: order must be a prime power");
    p_ = pk->first;
    k_ = pk->second;
    q_ = q;
    modulus_ = find_irreducible();
  }

  long order() const { return q_; }
  long characteristic() const { return p_; }
  int degree() const { return k_; }

  long add(long a, long b) const { return combine(a, b, +1); }
  long sub(long a, long b) const { return combine(a, b, -1); }

  long mul(long a, long b) const
  {
    if (k_ == 1) return (a * b) % p_;
    const auto x = digits(a), y = digits(b);
    std::vector<long> prod(2 * k_ - 1, 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    reduce(prod);
    return from_digits(prod);
  }

  /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
  std::vector<int> quadratic_character() const
  {
    std::vector<int> chi(static_cast<std::size_t>(q_), -1);
    chi[0] = 0;
    for (long x = 1; x < q_; ++x) chi[static_cast<std::size_t>(mul(x, x))] = 1;
    return chi;
  }

private:
  std::vector<long> digits(long a) const
  {
    std::vector<long> d(static_cast<std::size_t>(k_), 0);
    for (int i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  long from_digits(const std::vector<long>& d) const
  {
    long a = 0;
    for (int i = k_ - 1; i >= 0; --i) a = a * p_ + d[i];
    return a;
  }

  long combine(long a, long b, int sign) const
  {
    if (k_ == 1) return ((a + sign * b) % p_ + p_) % p_;
    long r = 0, place = 1;
    for (int i = 0; i < k_; ++i) {
      const long s = ((a % p_ + sign * (b % p_)) % p_ + p_) % p_;
      r += s * place;
      place *= p_;
      a /= p_;
      b /= p_;
    }
    return r;
  }

  // Reduce a polynomial (coefficient vector) modulo the monic modulus in place,
  // leaving the low k_ coefficients.
  void reduce(std::vector<long>& poly) const
  {
    for (int deg = static_cast<int>(poly.size()) - 1; deg >= k_; --deg) {
      const long c = poly[deg];
      if (c == 0) continue;
      for (int i = 0; i <= k_; ++i) {
        const int idx = deg - k_ + i;
        poly[idx] = ((poly[idx] - c * modulus_[i]) % p_ + p_) % p_;
      }
    }
    poly.resize(static_cast<std::size_t>(k_));
  }

  // Monic polynomial of degree k_ with no monic factor of degree 1..k_/2.
  std::vector<long> find_irreducible() const
  {
    if (k_ == 1) return {0, 1};
    long tail_count = 1;
    for (int i = 0; i < k_; ++i) tail_count *= p_;
    for (long tail = 0; tail < tail_count; ++tail) {
      std::vector<long> f(static_cast<std::size_t>(k_ + 1), 0);
      long t = tail;
      for (int i = 0; i < k_; ++i) {
        f[i] = t % p_;
        t /= p_;
      }
      f[k_] = 1;
      if (f[0] != 0 && irreducible(f)) return f;
    }
    throw std::logic_error("FiniteField: no irreducible polynomial found");
  }

  bool irreducible(const std::vector<long>& f) const
  {
    const int n = static_cast<int>(f.size()) - 1;
    for (int deg = 1; deg <= n / 2; ++deg) {
      long count = 1;
      for (int i = 0; i < deg; ++i) count *= p_;
      for (long tail = 0; tail < count; ++tail) {
        std::vector<long> g(static_cast<std::size_t>(deg + 1), 0);
        long t = tail;
        for (int i = 0; i < deg; ++i) {
          g[i] = t % p_;
          t /= p_;
        }
        g[deg] = 1;
        if (divides(g, f)) return false;
      }
    }
    return true;
  }

  bool divides(const std::vector<long>& g, std::vector<long> f) const
  {
    const int dg = static_cast<int>(g.size()) - 1;
    for (int deg = static_cast<int>(f.size()) - 1; deg >= dg; --deg) {
      const long c = f[deg];
      if (c == 0) continue;
      for (int i = 0; i <= dg; ++i) {
        const int idx = deg - dg + i;
        f[idx] = ((f[idx] - c * g[i]) % p_ + p_) % p_;
      }
    }
    for (int i = 0; i < dg; ++i)
      if (f[i] != 0) return false;
    return true;
  }

  long p_ = 0;
  int k_ = 0;
  long q_ = 0;
  std::vector<long> modulus_;
};

}  // namespace maxdet

#endif  // MAXDET_FINITE_FIELD_HPP
