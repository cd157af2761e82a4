#ifndef MAXDET_REGISTRY_HPP
#define MAXDET_REGISTRY_HPP

#include "maxdet/finite_field.hpp"
#include "maxdet/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxdet {

/// How a registry order was obtained. Kronecker stores both factor orders.
struct Provenance {
  enum class Kind { base, paley1, paley2, sylvester, kronecker, imported };
  Kind kind = Kind::base;
  long q = 0;      // paley field order
  long left = 0;   // sylvester core / kronecker factor
  long right = 0;  // kronecker factor
};

/// Known Hadamard orders in [1, limit] with their provenance.
class OrderRegistry {
public:
  OrderRegistry() = default;
  OrderRegistry(long limit, std::map<long, Provenance> orders) : limit_(limit), orders_(std::move(orders)) {}

  long limit() const { return limit_; }
  const std::map<long, Provenance>& entries() const { return orders_; }
  bool contains(long order) const { return orders_.count(order) != 0; }
  std::size_t size() const { return orders_.size(); }

  std::vector<long> orders() const
  {
    std::vector<long> v;
    v.reserve(orders_.size());
    for (const auto& [o, p] : orders_) v.push_back(o);
    return v;
  }

  const Provenance& provenance(long order) const
  {
    auto it = orders_.find(order);
    if (it == orders_.end()) throw std::out_of_range("OrderRegistry: order " + std::to_string(order) + " not registered");
    return it->second;
  }

  bool constructible(long order) const { return contains(order) && provenance(order).kind != Provenance::Kind::imported; }

  /// Construction chain as text, e.g. "sylvester(paley1(q=3))".
  std::string describe(long order) const
  {
    const Provenance& p = provenance(order);
    switch (p.kind) {
      case Provenance::Kind::base: return "base(1)";
      case Provenance::Kind::paley1: return "paley1(q=" + std::to_string(p.q) + ")";
      case Provenance::Kind::paley2: return "paley2(q=" + std::to_string(p.q) + ")";
      case Provenance::Kind::sylvester: return "sylvester(" + describe(p.left) + ")";
      case Provenance::Kind::kronecker: return "kron(" + describe(p.left) + "," + describe(p.right) + ")";
      case Provenance::Kind::imported: return "imported";
    }
    return "?";
  }

  /// Builds the matrix by replaying the provenance chain.
  HadamardMatrix materialize(long order) const
  {
    const Provenance& p = provenance(order);
    switch (p.kind) {
      case Provenance::Kind::base: return hadamard_order_one();
      case Provenance::Kind::paley1:
      case Provenance::Kind::paley2: return paley(p.q);
      case Provenance::Kind::sylvester: return sylvester(materialize(p.left));
      case Provenance::Kind::kronecker: return kronecker(materialize(p.left), materialize(p.right));
      case Provenance::Kind::imported: break;
    }
    throw std::invalid_argument("imported order has no construction: " + std::to_string(order));
  }

  /// Largest registered order <= n.
  std::optional<long> floor_order(long n) const
  {
    auto it = orders_.upper_bound(n);
    if (it == orders_.begin()) return std::nullopt;
    return std::prev(it)->first;
  }

  std::optional<long> next_order(long x) const
  {
    auto it = orders_.upper_bound(x);
    if (it == orders_.end()) return std::nullopt;
    return it->first;
  }

private:
  long limit_ = 0;
  std::map<long, Provenance> orders_;
};

/// Closure of {1, 2} and the Paley orders under Sylvester doubling and
/// Kronecker products, capped at `limit`, plus imported orders <= limit.
inline OrderRegistry build_registry(long limit, const std::vector<long>& imported = {})
{
  if (limit < 4) throw std::invalid_argument("build_registry: limit must be >= 4");
  for (long o : imported)
    if (o < 1 || (o > 2 && o % 4 != 0))
      throw std::invalid_argument("build_registry: imported order " + std::to_string(o) + " is not 1, 2 or a multiple of 4");

  std::map<long, Provenance> orders;
  orders[1] = {Provenance::Kind::base, 0, 0, 0};
  orders[2] = {Provenance::Kind::sylvester, 0, 1, 0};

  for (long q = 3; q < limit; q += 2) {
    if (!prime_power(q)) continue;
    if (q % 4 == 3 && q + 1 <= limit && !orders.count(q + 1))
      orders[q + 1] = {Provenance::Kind::paley1, q, 0, 0};
    else if (q % 4 == 1 && 2 * (q + 1) <= limit && !orders.count(2 * (q + 1)))
      orders[2 * (q + 1)] = {Provenance::Kind::paley2, q, 0, 0};
  }

  for (bool grew = true; grew;) {
    grew = false;
    std::vector<long> current;
    for (const auto& [o, p] : orders) current.push_back(o);
    for (std::size_t i = 0; i < current.size(); ++i) {
      const long a = current[i];
      if (a < 2) continue;
      for (std::size_t j = i; j < current.size(); ++j) {
        const long b = current[j];
        if (a * b > limit) break;
        if (orders.count(a * b)) continue;
        if (a == 2)
          orders[a * b] = {Provenance::Kind::sylvester, 0, b, 0};
        else
          orders[a * b] = {Provenance::Kind::kronecker, 0, a, b};
        grew = true;
      }
    }
  }

  for (long o : imported)
    if (o <= limit && !orders.count(o)) orders[o] = {Provenance::Kind::imported, 0, 0, 0};
  return OrderRegistry(limit, std::move(orders));
}

/// Distinct Hadamard matrices of one order from independent routes: the
/// registry chain, Paley I and II where they apply, and plain Sylvester
/// doubling for powers of two. When only one route exists a scrambled
/// equivalent copy is added, so callers always get at least two matrices.
inline std::vector<HadamardMatrix> distinct_constructions(long order, std::uint64_t seed = 1)
{
  if (order < 1) throw std::invalid_argument("distinct_constructions: order must be >= 1");
  std::vector<HadamardMatrix> out;
  auto add = [&](HadamardMatrix m) {
    for (const HadamardMatrix& e : out)
      if (e.matrix() == m.matrix()) return;
    out.push_back(std::move(m));
  };
  const OrderRegistry reg = build_registry(std::max(order, 4L));
  if (reg.constructible(order)) add(reg.materialize(order));
  if (order >= 4 && prime_power(order - 1) && (order - 1) % 4 == 3) add(paley(order - 1));
  if (order >= 12 && order % 2 == 0 && prime_power(order / 2 - 1) && (order / 2 - 1) % 4 == 1) add(paley(order / 2 - 1));
  if ((order & (order - 1)) == 0) {
    HadamardMatrix m = hadamard_order_one();
    while (m.order() < order) m = sylvester(m);
    add(std::move(m));
  }
  if (out.empty()) throw std::invalid_argument("distinct_constructions: no construction for order " + std::to_string(order));
  if (out.size() == 1) add(scrambled(out.front(), seed));
  return out;
}

/// One positive integer per line; '#' starts a comment.
inline std::vector<long> read_order_list(std::istream& is)
{
  std::vector<long> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(first, last - first + 1);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 1)
      throw std::runtime_error("read_order_list: line " + std::to_string(lineno) + ": expected a positive integer");
    out.push_back(v);
  }
  return out;
}

struct Decomposition {
  long h = 0;
  long d = 0;
};

/// n = h + d with h the largest registered order <= n.
inline Decomposition decompose(long n, const OrderRegistry& reg)
{
  if (n < 1) throw std::invalid_argument("decompose: n must be positive");
  if (n > reg.limit()) throw std::invalid_argument("decompose: registry limit " + std::to_string(reg.limit()) + " does not cover n = " + std::to_string(n));
  const long h = *reg.floor_order(n);
  return {h, n - h};
}

/// Largest successor gap h_{i+1} - h_i over registered h_i <= x; 0 if none.
/// The registry must contain an order above x.
inline long gap_function(double x, const OrderRegistry& reg)
{
  const auto& e = reg.entries();
  if (e.empty() || static_cast<double>(e.rbegin()->first) <= x)
    throw std::invalid_argument("gap_function: registry horizon too small for x");
  long best = 0;
  for (auto it = e.begin(); it != e.end() && static_cast<double>(it->first) <= x; ++it) {
    const auto nx = std::next(it);
    best = std::max(best, nx->first - it->first);
  }
  return best;
}

struct GapInterval {
  long lo = 0;
  long hi = 0;
  long width() const { return hi - lo; }
};

/// Widest gap between consecutive registered orders that both lie in [1, limit].
inline GapInterval widest_gap_within(const OrderRegistry& reg, long limit)
{
  GapInterval best;
  long prev = 0;
  for (const auto& [o, p] : reg.entries()) {
    if (o > limit) break;
    if (prev != 0 && o - prev > best.width()) best = {prev, o};
    prev = o;
  }
  return best;
}

/// First multiple of 4 in [4, limit] missing from the registry.
inline std::optional<long> first_missing_multiple_of_four(const OrderRegistry& reg, long limit)
{
  for (long o = 4; o <= limit; o += 4)
    if (!reg.contains(o)) return o;
  return std::nullopt;
}

/// Explicit gap bound 12 * 2^beta * n^(alpha/(1+alpha)) valid when 2^t q is a
/// Hadamard order for all odd q and t >= alpha log2(q) + beta.
inline double gap_bound(double alpha, double beta, double n)
{
  if (!(alpha > 0) || !(beta > 0) || !(n >= 1)) throw std::invalid_argument("gap_bound: need alpha > 0, beta > 0, n >= 1");
  return 12.0 * std::exp2(beta) * std::pow(n, alpha / (1.0 + alpha));
}

}  // namespace maxdet

#endif  // MAXDET_REGISTRY_HPP
