#include "qbailey/level_n.hpp"

#include <algorithm>
#include <functional>

#include "qbailey/qfunctions.hpp"

namespace qbailey {

LevelNWorkspace::LevelNWorkspace(std::int64_t N, const Grid& grid) : cd_(cartan(N)), grid_(grid) {
  if (grid.is_exact()) throw std::invalid_argument("level-N evaluation needs a finite cutoff");
}

void LevelNWorkspace::check_ell(std::int64_t ell) const {
  if (ell < 0 || ell > cd_.N) {
    throw std::invalid_argument("need 0 <= ell <= N, got ell = " + std::to_string(ell) +
                                ", N = " + std::to_string(cd_.N));
  }
}

std::int64_t LevelNWorkspace::prefactor_index(std::int64_t L, std::int64_t ell) const {
  return grid_.index(Rational(L * (L + ell), cd_.N));
}

const QSeries& LevelNWorkspace::gaussian_cached(std::int64_t a, std::int64_t b) {
  auto key = std::make_pair(a, b);
  auto it = gaussians_.find(key);
  if (it == gaussians_.end()) it = gaussians_.emplace(key, gaussian(a, b, grid_)).first;
  return it->second;
}

const QSeries& LevelNWorkspace::fermionic_sum(LinearSystem system, std::int64_t L, std::int64_t ell,
                                              std::int64_t M, std::int64_t cutoff) {
  check_ell(ell);
  auto key = std::make_tuple(static_cast<int>(system), L, ell, system == LinearSystem::em ? M : 0, cutoff);
  if (auto it = fermionic_.find(key); it != fermionic_.end()) return it->second;

  auto g = grid_.with_cutoff(cutoff);
  QSeries sum = QSeries::zero(g);
  auto found = enumerate_admissible(cd_, L, ell, system, M);
  if (found.integrality_warning) integrality_warnings_ += found.rejected_non_integral;
  auto e_ell = cd_.unit_vector(ell);
  for (const auto& sol : found.solutions) {
    IntVector shifted_n = sol.n;
    for (std::size_t k = 0; k < shifted_n.size(); ++k) shifted_n[k] -= e_ell[k];
    auto idx = grid_.index(Rational(cd_.scaled_form(sol.n, shifted_n), cd_.N));
    if (idx > cutoff) continue;
    auto inner = cutoff - idx;
    QSeries term = QSeries::one(grid_.with_cutoff(inner));
    for (std::size_t j = 0; j < sol.n.size() && !term.is_zero(); ++j) {
      if (sol.n[j] == 0) continue;
      term = term * gaussian_cached(sol.m[j] + sol.n[j], sol.n[j]).truncated(inner);
    }
    sum += term.shifted(idx);
  }
  return fermionic_.emplace(key, std::move(sum)).first->second;
}

const QSeries& LevelNWorkspace::eta_sum(std::int64_t L, std::int64_t ell) {
  check_ell(ell);
  auto N = cd_.N;
  auto residue = ((L % N) + N) % N;
  auto key = std::make_pair(residue, ell);
  if (auto it = eta_sums_.find(key); it != eta_sums_.end()) return it->second;

  auto r = static_cast<std::size_t>(cd_.rank());
  const auto& S = cd_.scaled_inverse;
  auto d = grid_.denominator;
  auto cutoff = grid_.cutoff;
  // Linear coefficient S_{ell,k} of N * eta C^{-1} e_ell.
  IntVector lin(r, 0);
  if (ell >= 1 && ell < N) {
    for (std::size_t k = 0; k < r; ++k) lin[k] = S[static_cast<std::size_t>(ell - 1)][k];
  }
  // Smallest value of S_kk x^2 - lin_k x over integers x >= 0; cross terms are >= 0.
  IntVector floor_k(r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    auto f = [&](std::int64_t x) { return S[k][k] * x * x - lin[k] * x; };
    auto x0 = lin[k] / (2 * S[k][k]);
    std::int64_t best = std::min({f(0), f(x0), f(x0 + 1)});
    floor_k[k] = best;
  }
  IntVector floor_suffix(r + 1, 0);
  for (std::size_t k = r; k-- > 0;) floor_suffix[k] = floor_suffix[k + 1] + floor_k[k];

  // value * d <= cutoff * N keeps the exponent value/N within the cutoff.
  auto fits = [&](std::int64_t scaled_value) {
    return static_cast<__int128>(scaled_value) * d <= static_cast<__int128>(cutoff) * N;
  };

  QSeries sum = QSeries::zero(grid_);
  IntVector eta(r, 0);
  std::function<void(std::size_t, std::int64_t)> visit = [&](std::size_t k, std::int64_t partial) {
    if (k == r) {
      if (!satisfies_congruence(N, L, eta) || !fits(partial)) return;
      auto idx = grid_.index(Rational(partial, N));
      QSeries term = QSeries::monomial(grid_, idx);
      for (std::size_t j = 0; j < r; ++j) term = divide_pochhammer(term, QPower::q(), eta[j]);
      sum += term;
      return;
    }
    // partial(v) = partial + S_kk v^2 + v (2 sum_{j<k} S_jk eta_j - lin_k), convex in v.
    std::int64_t cross = 0;
    for (std::size_t j = 0; j < k; ++j) cross += 2 * S[j][k] * eta[j];
    auto slope = cross - lin[k];
    for (std::int64_t v = 0;; ++v) {
      auto value = partial + S[k][k] * v * v + slope * v;
      if (!fits(value + floor_suffix[k + 1])) {
        if (2 * S[k][k] * v + slope >= 0) break;
        continue;
      }
      eta[k] = v;
      visit(k + 1, value);
    }
    eta[k] = 0;
  };
  visit(0, 0);
  return eta_sums_.emplace(key, std::move(sum)).first->second;
}

QSeries LevelNWorkspace::delta(std::int64_t M, std::int64_t ell, std::int64_t L) {
  check_ell(ell);
  if (L < 0 || L > M) return QSeries::zero(grid_);
  auto e = prefactor_index(L, ell);
  if (e > grid_.cutoff) return QSeries::zero(grid_);
  const auto& f = fermionic_sum(LinearSystem::mn, L, ell, 0, grid_.cutoff - e);
  return divide_pochhammer(f.shifted(e).truncated(grid_.cutoff), QPower::q(), M - L);
}

QSeries LevelNWorkspace::gamma(std::int64_t M, std::int64_t ell, std::int64_t L) {
  check_ell(ell);
  if (L < 0 || L > M) return QSeries::zero(grid_);
  auto e = prefactor_index(L, ell);
  if (e > grid_.cutoff) return QSeries::zero(grid_);
  const auto& f = fermionic_sum(LinearSystem::em, L, ell, M, grid_.cutoff - e);
  auto s = divide_pochhammer(f.shifted(e).truncated(grid_.cutoff), QPower::q(), M - L);
  return divide_pochhammer(s, QPower::q(Rational(ell + 1)), M + L);
}

DeltaGammaFamily LevelNWorkspace::family(std::int64_t M, std::int64_t ell) {
  if (M < 0) throw std::invalid_argument("level-N family needs M >= 0");
  DeltaGammaFamily f;
  f.variant = FamilyVariant::level_n;
  f.M = M;
  f.ell = ell;
  f.N = cd_.N;
  f.grid = grid_;
  f.normalization = QSeries::one(Grid::exact(grid_.denominator));
  for (std::int64_t L = 0; L <= M; ++L) {
    f.delta.push_back(delta(M, ell, L));
    f.gamma.push_back(gamma(M, ell, L));
  }
  return f;
}

QSeries delta_level_n(std::int64_t N, std::int64_t M, std::int64_t ell, std::int64_t L, const Grid& grid) {
  LevelNWorkspace ws(N, grid);
  return ws.delta(M, ell, L);
}

QSeries gamma_level_n(std::int64_t N, std::int64_t M, std::int64_t ell, std::int64_t L, const Grid& grid) {
  LevelNWorkspace ws(N, grid);
  return ws.gamma(M, ell, L);
}

DeltaGammaFamily level_n_delta_gamma(std::int64_t N, std::int64_t M, std::int64_t ell, const Grid& grid) {
  LevelNWorkspace ws(N, grid);
  return ws.family(M, ell);
}

std::int64_t level_n_index_bound(LevelNWorkspace& ws, std::int64_t ell) {
  std::int64_t L = 0;
  while (ws.prefactor_index(L + 1, ell) <= ws.grid().cutoff) ++L;
  return L;
}

IdentitySides corollary_sides(const BaileyPair& pair, LevelNWorkspace& ws) {
  auto ell = pair.ell;
  if (ell > ws.N()) {
    throw std::invalid_argument("corollary needs ell <= N, got ell = " + std::to_string(ell));
  }
  const auto& grid = ws.grid();
  if (pair.grid.denominator != grid.denominator) {
    throw GridError("corollary: pair and workspace use different grids");
  }
  auto bound = level_n_index_bound(ws, ell);
  if (pair.max_index() < bound) {
    throw std::invalid_argument("corollary needs the pair up to L = " + std::to_string(bound));
  }
  IdentitySides out{QSeries::zero(grid), QSeries::zero(grid)};
  for (std::int64_t L = 0; L <= bound; ++L) {
    auto i = static_cast<std::size_t>(L);
    const auto& alpha = pair.alpha[i];
    const auto& beta = pair.beta[i];
    if (alpha.lowest_index().value_or(0) < 0 || beta.lowest_index().value_or(0) < 0) {
      throw std::invalid_argument("corollary needs pairs without negative exponents");
    }
    auto e = ws.prefactor_index(L, ell);
    auto inner = grid.cutoff - e;
    if (!alpha.is_zero()) {
      out.lhs += (alpha.truncated(inner) * ws.eta_sum(L, ell).truncated(inner)).shifted(e);
    }
    if (!beta.is_zero()) {
      const auto& f = ws.fermionic_sum(LinearSystem::mn, L, ell, 0, inner);
      out.rhs += (beta.truncated(inner) * f).shifted(e);
    }
  }
  out.lhs = divide_pochhammer(out.lhs, QPower::q(Rational(ell + 1)), kInfinite);
  return out;
}

namespace {

// sum_j (-1)^j q^{(A j^2 + B j) / (2N)} * eta_sum(j), with A, B integers.
QSeries signed_theta_sum(LevelNWorkspace& ws, std::int64_t A, std::int64_t B) {
  const auto& grid = ws.grid();
  auto N = ws.N();
  auto d = grid.denominator;
  QSeries sum = QSeries::zero(grid);
  auto window = quadratic_window(A * d, B * d, 0, 2 * N * grid.cutoff);
  if (!window) return sum;
  for (auto j = window->first; j <= window->second; ++j) {
    auto e = grid.index(Rational(A * j * j + B * j, 2 * N));
    auto term = ws.eta_sum(j, 0).truncated(grid.cutoff - e).shifted(e);
    if (j % 2 != 0) term = -term;
    sum += term;
  }
  return divide_pochhammer(sum, QPower::q(), kInfinite);
}

}  // namespace

QSeries euler_level_n(LevelNWorkspace& ws) {
  auto N = ws.N();
  // ((1 + 2/N) j + 1) j / 2 = ((N + 2) j^2 + N j) / (2N).
  return signed_theta_sum(ws, N + 2, N);
}

IdentitySides agn_sides(LevelNWorkspace& ws, int k) {
  if (k < 1) throw std::invalid_argument("level-N Andrews-Gordon identity needs k >= 1");
  const auto& grid = ws.grid();
  auto N = ws.N();
  IdentitySides out;
  // ((2k + 1 + 2/N) j + 1) j / 2 = (((2k+1)N + 2) j^2 + N j) / (2N).
  out.lhs = signed_theta_sum(ws, (2 * k + 1) * N + 2, N);

  out.rhs = QSeries::zero(grid);
  std::vector<std::int64_t> r(static_cast<std::size_t>(k));
  // Exponent r_1^2/N + r_2^2 + ... + r_k^2, tracked as N times its value.
  auto fits = [&](std::int64_t scaled) {
    return static_cast<__int128>(scaled) * grid.denominator <= static_cast<__int128>(grid.cutoff) * N;
  };
  std::function<void(int, std::int64_t, std::int64_t)> visit = [&](int depth, std::int64_t cap,
                                                                   std::int64_t scaled) {
    if (depth == k) {
      auto e = grid.index(Rational(scaled, N));
      const auto& f = ws.fermionic_sum(LinearSystem::mn, r[0], 0, 0, grid.cutoff - e);
      auto term = f.shifted(e).truncated(grid.cutoff);
      for (int i = 0; i < k; ++i) {
        auto next = (i + 1 < k) ? r[static_cast<std::size_t>(i + 1)] : 0;
        term = divide_pochhammer(term, QPower::q(), r[static_cast<std::size_t>(i)] - next);
      }
      out.rhs += term;
      return;
    }
    auto weight = depth == 0 ? 1 : N;
    for (std::int64_t v = 0; (depth == 0 || v <= cap) && fits(scaled + weight * v * v); ++v) {
      r[static_cast<std::size_t>(depth)] = v;
      visit(depth + 1, v, scaled + weight * v * v);
    }
  };
  visit(0, 0, 0);
  return out;
}

}  // namespace qbailey
