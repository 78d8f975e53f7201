#pragma once

// Bailey pairs, (delta, gamma) families, the Bailey transform and chain, and
// the classical identity builders (Euler, Rogers-Ramanujan/Andrews-Gordon).
//
// Conventions: a = q^ell with ell >= 0, and every series in a pair or family
// shares the grid of the computation. Tables are indexed by L = 0..L_max.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbailey/series.hpp"

namespace qbailey {

using SeriesTable = std::vector<QSeries>;

struct BaileyPair {
  std::int64_t ell = 0;
  SeriesTable alpha;
  SeriesTable beta;
  std::string label;
  Grid grid;

  std::int64_t max_index() const { return static_cast<std::int64_t>(alpha.size()) - 1; }
};

enum class FamilyVariant { classic, rho, level_n };

std::string to_string(FamilyVariant v);

struct DeltaGammaFamily {
  FamilyVariant variant = FamilyVariant::classic;
  std::int64_t M = 0;
  std::int64_t ell = 0;
  std::int64_t N = 1;
  // nullopt is the rho -> infinity limit.
  std::optional<QPower> rho1;
  std::optional<QPower> rho2;
  SeriesTable delta;  // 0..M
  SeriesTable gamma;  // 0..M
  // The rho family is stored multiplied by this L-independent polynomial,
  // (aq/rho1)_M (aq/rho2)_M over the finite rho; it is 1 otherwise.
  QSeries normalization;
  Grid grid;

  // delta_L and gamma_L for any L >= 0 (zero past M).
  QSeries delta_at(std::int64_t L) const;
  QSeries gamma_at(std::int64_t L) const;
};

// A side-by-side comparison of two series tables (or two single series).
struct TableCheck {
  bool equal = true;
  std::optional<std::int64_t> index;  // first L with a mismatch
  std::optional<Mismatch> mismatch;
  std::int64_t compared_cutoff = kExact;  // grid units
};

TableCheck compare_tables(const SeriesTable& lhs, const SeriesTable& rhs,
                          std::optional<std::int64_t> limit = std::nullopt);

// beta_L = sum_{k<=L} alpha_k / ((q)_{L-k} (aq)_{L+k}).
SeriesTable beta_from_alpha(const SeriesTable& alpha, std::int64_t ell, std::int64_t max_index,
                            const Grid& grid);

// gamma_L = sum_{k=L}^{M} delta_k / ((q)_{k-L} (aq)_{k+L}), for L = 0..M.
SeriesTable gamma_from_delta(const SeriesTable& delta, std::int64_t ell, std::int64_t M,
                             const Grid& grid);

// Does the pair satisfy the defining relation for all L <= L_max?
TableCheck verify_pair(const BaileyPair& pair);

struct IdentitySides {
  QSeries lhs;
  QSeries rhs;
};

// Both sides of sum_L alpha_L gamma_L = sum_L beta_L delta_L.
IdentitySides bilinear_sides(const BaileyPair& pair, const DeltaGammaFamily& family);

// The pair with alpha_L = (-1)^L (1 - a q^{2L}) (a)_L q^{L(L-1)/2} / ((1-a)(q)_L)
// and beta_L = [L == 0]; (a)_L/(1-a) is taken as (aq)_{L-1}.
BaileyPair unit_pair(std::int64_t ell, std::int64_t max_index, const Grid& grid);

// One step of the Bailey chain.
BaileyPair chain_step(const BaileyPair& pair);
BaileyPair chain(const BaileyPair& pair, int steps);

DeltaGammaFamily classic_delta_gamma(std::int64_t M, std::int64_t ell, const Grid& grid);

// The two-parameter family with rho_i specialized to signed q-powers or to
// infinity (nullopt). Stored cleared of the constant (aq/rho1)_M (aq/rho2)_M.
DeltaGammaFamily rho_delta_gamma(std::int64_t M, std::int64_t ell, std::optional<QPower> rho1,
                                 std::optional<QPower> rho2, const Grid& grid);

// Largest L with L^2 + ell*L <= T (grid units), i.e. the last L whose
// prefactor q^{L^2} a^L can reach the cutoff.
std::int64_t quadratic_index_bound(std::int64_t ell, const Grid& grid);

// (1/(aq)_inf) sum_L q^{L^2} a^L alpha_L  versus  sum_L q^{L^2} a^L beta_L.
// The pair must reach quadratic_index_bound and have no negative exponents.
IdentitySides limiting_sides(const BaileyPair& pair);

// lhs = (1/(q)_inf) sum_j (-1)^j q^{((2k+3)j+1)j/2} a^{jk},
// rhs = multi-sum over n_1 >= ... >= n_k >= 0.
IdentitySides ag_identity_sides(int k, std::int64_t ell, const Grid& grid);

}  // namespace qbailey
