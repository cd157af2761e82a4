#ifndef MAXDET_CONSTRUCTION_HPP
#define MAXDET_CONSTRUCTION_HPP

#include "maxdet/exactmath.hpp"
#include "maxdet/hadamard.hpp"
#include "maxdet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace maxdet {

/// Per-trial seed derived from a master seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// One random border (B, C) of a Hadamard matrix A together with hF = C A^T B.
struct BorderSample {
  long h = 0;
  long d = 0;
  SignMatrix B;  // h x d
  SignMatrix C;  // d x h
  IntMatrix hF;  // d x d
  std::uint64_t seed = 0;
};

/// Completes a border from a given B: C row i is sgn of column i of A^T B
/// (sgn(0) = +1), and hF = C (A^T B).
inline BorderSample border_from(const HadamardMatrix& A, const SignMatrix& B, std::uint64_t seed = 0)
{
  const std::size_t h = static_cast<std::size_t>(A.order());
  if (B.rows() != h) throw std::invalid_argument("border_from: B must have h rows");
  const std::size_t d = B.cols();

  // AtB[k][i] = sum_m a_{mk} b_{mi}
  std::vector<long> atb(h * d, 0);
  const auto& a = A.matrix().entries();
  for (std::size_t m = 0; m < h; ++m)
    for (std::size_t i = 0; i < d; ++i) {
      const int b = B(m, i);
      const auto* row = &a[m * h];
      long* out = &atb[i];
      for (std::size_t k = 0; k < h; ++k) out[k * d] += b * row[k];
    }

  BorderSample s;
  s.h = static_cast<long>(h);
  s.d = static_cast<long>(d);
  s.B = B;
  s.seed = seed;
  s.C = SignMatrix(d, h);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < h; ++k) s.C.set(i, k, atb[k * d + i] >= 0 ? 1 : -1);
  s.hF = IntMatrix(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      long acc = 0;
      for (std::size_t k = 0; k < h; ++k) acc += s.C(i, k) * atb[k * d + j];
      s.hF(i, j) = acc;
    }
  return s;
}

/// B with i.i.d. uniform +-1 entries from a generator seeded by `seed`.
inline BorderSample sample_border(const HadamardMatrix& A, long d, std::uint64_t seed)
{
  if (d < 1) throw std::invalid_argument("sample_border: d must be >= 1");
  const std::size_t h = static_cast<std::size_t>(A.order());
  std::mt19937_64 gen(seed);
  SignMatrix B(h, static_cast<std::size_t>(d));
  std::uint64_t bits = 0;
  int left = 0;
  for (std::size_t m = 0; m < h; ++m)
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) {
      if (left == 0) {
        bits = gen();
        left = 64;
      }
      B.set(m, i, (bits & 1U) ? 1 : -1);
      bits >>= 1;
      --left;
    }
  return border_from(A, B, seed);
}

/// G = hF / h + I.
inline RatMatrix schur_G(const BorderSample& s)
{
  const std::size_t d = static_cast<std::size_t>(s.d);
  RatMatrix g(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      BigRational v(s.hF(i, j), s.h);
      v.canonicalize();
      g(i, j) = (i == j) ? BigRational(v + 1) : v;
    }
  return g;
}

/// det(G) = det(hF + h I) / h^d.
inline BigRational det_G(const BorderSample& s)
{
  IntMatrix m = s.hF;
  for (std::size_t i = 0; i < static_cast<std::size_t>(s.d); ++i) m(i, i) += s.h;
  BigRational r(det_exact(std::move(m)), ipow(BigInt(s.h), static_cast<unsigned long>(s.d)));
  r.canonicalize();
  return r;
}

/// det(h D - hF) for a d x d matrix D with entries in {-1, 0, 1}; this is
/// h^d det(D - C A^{-1} B).
inline BigInt scaled_complement_det(const BorderSample& s, const SquareMatrix<int>& D)
{
  const std::size_t d = static_cast<std::size_t>(s.d);
  IntMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = BigInt(s.h * D(i, j)) - s.hF(i, j);
  return det_exact(std::move(m));
}

struct ConstructionOutcome {
  long n = 0;
  long h = 0;
  long d = 0;
  std::uint64_t seed = 0;
  BigRational detG;            // det(F + I), the quantity the probabilistic bounds control
  BigRational det_complement;  // |det(D - F)| for the final +-1 matrix D
  SignMatrix D;                // final d x d border corner, entries +-1
  double log_det_full = 0.0;   // ln |det| of the assembled n x n matrix
  double dbar = 0.0;           // |det| / n^(n/2)
  double ratio_to_mu_d = 0.0;  // det(G) / mu(h)^d
};

/// Starts from D = -I and, visiting off-diagonal entries row by row, sets each
/// to whichever of +1 / -1 gives the larger |det(D - F)| (ties to +1).
/// `trace`, when given, receives |h^d det(D - F)| after every step.
inline ConstructionOutcome replace_zeros(const HadamardMatrix& A, const BorderSample& s, const MomentStats& mom,
                                         std::vector<BigInt>* trace = nullptr)
{
  if (mom.h != s.h) throw std::invalid_argument("replace_zeros: moments computed for a different order");
  const std::size_t d = static_cast<std::size_t>(s.d);
  SquareMatrix<int> D(d, 0);
  for (std::size_t i = 0; i < d; ++i) D(i, i) = -1;

  BigInt current = abs(scaled_complement_det(s, D));
  if (trace) trace->push_back(current);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      D(i, j) = 1;
      BigInt plus = abs(scaled_complement_det(s, D));
      D(i, j) = -1;
      BigInt minus = abs(scaled_complement_det(s, D));
      if (plus >= minus) {
        D(i, j) = 1;
        current = std::move(plus);
      } else {
        current = std::move(minus);
      }
      if (trace) trace->push_back(current);
    }

  ConstructionOutcome out;
  out.h = s.h;
  out.d = s.d;
  out.n = s.h + s.d;
  out.seed = s.seed;
  out.detG = det_G(s);
  out.det_complement = BigRational(current, ipow(BigInt(s.h), static_cast<unsigned long>(d)));
  out.det_complement.canonicalize();
  out.D = SignMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out.D.set(i, j, D(i, j));

  const double h = static_cast<double>(A.order());
  const double n = static_cast<double>(out.n);
  if (sgn(out.det_complement) > 0) {
    out.log_det_full = 0.5 * h * std::log(h) + log_rational(out.det_complement);
    out.dbar = std::exp(out.log_det_full - 0.5 * n * std::log(n));
  } else {
    out.log_det_full = -std::numeric_limits<double>::infinity();
    out.dbar = 0.0;
  }
  const BigRational ratio = out.detG / ipow(mom.mu, static_cast<unsigned long>(d));
  out.ratio_to_mu_d = ratio.get_d();
  return out;
}

inline ConstructionOutcome replace_zeros(const HadamardMatrix& A, const BorderSample& s)
{
  return replace_zeros(A, s, moments(s.h));
}

/// The assembled n x n +-1 matrix [[A, B], [C, D]].
inline SignMatrix assemble(const HadamardMatrix& A, const BorderSample& s, const SignMatrix& D)
{
  const std::size_t h = static_cast<std::size_t>(s.h), d = static_cast<std::size_t>(s.d), n = h + d;
  if (D.rows() != d || D.cols() != d) throw std::invalid_argument("assemble: D has the wrong shape");
  SignMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int v;
      if (i < h)
        v = j < h ? A(i, j) : s.B(i, j - h);
      else
        v = j < h ? s.C(i - h, j) : D(i - h, j - h);
      m.set(i, j, v);
    }
  return m;
}

/// Copy of A with two non-leading rows swapped if needed so that det(A) > 0.
/// Computes det(A) exactly, so intended for moderate orders.
inline HadamardMatrix with_positive_det(const HadamardMatrix& A)
{
  if (sgn(det_exact(A.matrix())) > 0 || A.order() < 3) return A;
  SignMatrix m = A.matrix();
  m.swap_rows(1, 2);
  return HadamardMatrix(std::move(m), A.provenance());
}

struct TrialSummary {
  ConstructionOutcome best;
  std::size_t best_index = 0;
  long trials = 0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  long ratio_hits = 0;  // trials with ratio_to_mu_d >= TrialThresholds::ratio
  long dbar_hits = 0;   // trials with dbar >= TrialThresholds::dbar
};

/// Levels whose hit frequencies are counted; infinity disables a count.
struct TrialThresholds {
  double ratio = std::numeric_limits<double>::infinity();
  double dbar = std::numeric_limits<double>::infinity();
};

namespace detail {

inline bool better(const ConstructionOutcome& a, std::size_t ia, const ConstructionOutcome& b, std::size_t ib)
{
  if (a.det_complement != b.det_complement) return a.det_complement > b.det_complement;
  return ia < ib;
}

template <typename MakeSample>
TrialSummary run_indexed(const HadamardMatrix& A, long trials, unsigned threads, const TrialThresholds& thr, MakeSample make)
{
  if (trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
  const MomentStats mom = moments(A.order());
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(trials)));

  std::vector<double> ratios(static_cast<std::size_t>(trials));
  std::vector<char> dbar_hit(static_cast<std::size_t>(trials), 0);
  std::vector<ConstructionOutcome> best(threads);
  std::vector<std::size_t> best_idx(threads, std::numeric_limits<std::size_t>::max());

  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < static_cast<std::size_t>(trials); i += threads) {
      ConstructionOutcome o = replace_zeros(A, make(i), mom);
      ratios[i] = o.ratio_to_mu_d;
      dbar_hit[i] = o.dbar >= thr.dbar;
      if (best_idx[w] == std::numeric_limits<std::size_t>::max() || better(o, i, best[w], best_idx[w])) {
        best[w] = std::move(o);
        best_idx[w] = i;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  TrialSummary sum;
  sum.trials = trials;
  unsigned pick = 0;
  for (unsigned w = 1; w < threads; ++w)
    if (best_idx[w] != std::numeric_limits<std::size_t>::max() && better(best[w], best_idx[w], best[pick], best_idx[pick])) pick = w;
  sum.best = std::move(best[pick]);
  sum.best_index = best_idx[pick];
  double total = 0.0;
  sum.max_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    total += ratios[i];
    sum.max_ratio = std::max(sum.max_ratio, ratios[i]);
    if (ratios[i] >= thr.ratio) ++sum.ratio_hits;
    if (dbar_hit[i]) ++sum.dbar_hits;
  }
  sum.mean_ratio = total / static_cast<double>(trials);
  return sum;
}

}  // namespace detail

/// Independent random trials; trial i uses derive_seed(master_seed, i).
/// Deterministic for a given (master_seed, trials) regardless of `threads`.
inline TrialSummary run_trials(const HadamardMatrix& A, long d, long trials, std::uint64_t master_seed, unsigned threads = 1,
                               const TrialThresholds& thr = {})
{
  return detail::run_indexed(A, trials, threads, thr,
                             [&](std::size_t i) { return sample_border(A, d, derive_seed(master_seed, i)); });
}

inline constexpr std::size_t kExhaustiveBitCap = 24;

/// Border number `idx` of the exhaustive search: bit (i h + m) set means B(m, i) = -1.
inline BorderSample exhaustive_border(const HadamardMatrix& A, long d, std::uint64_t idx)
{
  const std::size_t h = static_cast<std::size_t>(A.order());
  SignMatrix B(h, static_cast<std::size_t>(d));
  for (std::size_t m = 0; m < h; ++m)
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) B.set(m, i, ((idx >> (i * h + m)) & 1U) ? -1 : 1);
  return border_from(A, B, idx);
}

/// Every one of the 2^(h d) borders B. Limited to h d <= 24.
inline TrialSummary run_exhaustive(const HadamardMatrix& A, long d, unsigned threads = 1, const TrialThresholds& thr = {})
{
  const std::size_t bits = static_cast<std::size_t>(A.order()) * static_cast<std::size_t>(d);
  if (d < 1 || bits > kExhaustiveBitCap) throw std::invalid_argument("run_exhaustive: need 1 <= d and h*d <= 24");
  const long total = 1L << bits;
  return detail::run_indexed(A, total, threads, thr, [&](std::size_t idx) { return exhaustive_border(A, d, idx); });
}

}  // namespace maxdet

#endif  // MAXDET_CONSTRUCTION_HPP
