#pragma once

// Level-N (delta, gamma) sequences built on A_{N-1} data, the corollary that
// feeds them a Bailey pair, and the identities derived from it.

#include <cstdint>
#include <map>
#include <tuple>

#include "qbailey/bailey.hpp"
#include "qbailey/cartan.hpp"
#include "qbailey/series.hpp"

namespace qbailey {

// Grid denominator used for level-N work.
inline std::int64_t level_n_denominator(std::int64_t N) { return 2 * N; }

// Memoizing evaluator for one N and one grid. Not thread-safe; give each
// worker its own.
class LevelNWorkspace {
 public:
  LevelNWorkspace(std::int64_t N, const Grid& grid);

  const CartanData& cartan_data() const { return cd_; }
  const Grid& grid() const { return grid_; }
  std::int64_t N() const { return cd_.N; }

  // sum over admissible n of q^{n C^{-1}(n - e_ell)} prod_j [m_j + n_j, n_j],
  // with m from the given system, truncated at `cutoff`.
  const QSeries& fermionic_sum(LinearSystem system, std::int64_t L, std::int64_t ell, std::int64_t M,
                               std::int64_t cutoff);

  // sum over eta >= 0 with sum_k k eta_k = -L (mod N) of
  // q^{eta C^{-1}(eta - e_ell)} / ((q)_{eta_1} ... (q)_{eta_{N-1}}), at the grid cutoff.
  const QSeries& eta_sum(std::int64_t L, std::int64_t ell);

  // Grid index of q^{L(L+ell)/N}.
  std::int64_t prefactor_index(std::int64_t L, std::int64_t ell) const;

  QSeries delta(std::int64_t M, std::int64_t ell, std::int64_t L);
  QSeries gamma(std::int64_t M, std::int64_t ell, std::int64_t L);
  DeltaGammaFamily family(std::int64_t M, std::int64_t ell);

  // Candidates with congruence but non-integral m seen so far.
  std::size_t integrality_warnings() const { return integrality_warnings_; }

 private:
  const QSeries& gaussian_cached(std::int64_t a, std::int64_t b);
  void check_ell(std::int64_t ell) const;

  CartanData cd_;
  Grid grid_;
  std::size_t integrality_warnings_ = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, QSeries> gaussians_;
  std::map<std::tuple<int, std::int64_t, std::int64_t, std::int64_t, std::int64_t>, QSeries> fermionic_;
  std::map<std::pair<std::int64_t, std::int64_t>, QSeries> eta_sums_;
};

QSeries delta_level_n(std::int64_t N, std::int64_t M, std::int64_t ell, std::int64_t L, const Grid& grid);
QSeries gamma_level_n(std::int64_t N, std::int64_t M, std::int64_t ell, std::int64_t L, const Grid& grid);
DeltaGammaFamily level_n_delta_gamma(std::int64_t N, std::int64_t M, std::int64_t ell, const Grid& grid);

// Largest L with L(L+ell)/N within the cutoff.
std::int64_t level_n_index_bound(LevelNWorkspace& ws, std::int64_t ell);

// Both sides of the level-N corollary for a pair relative to q^ell.
IdentitySides corollary_sides(const BaileyPair& pair, LevelNWorkspace& ws);

// (1/(q)_inf) sum_j (-1)^j q^{((1+2/N)j+1)j/2} (eta-sum), expected to be 1.
QSeries euler_level_n(LevelNWorkspace& ws);

// Both sides of the level-N Andrews-Gordon identity (a = 1).
IdentitySides agn_sides(LevelNWorkspace& ws, int k);

}  // namespace qbailey
