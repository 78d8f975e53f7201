#include "qbailey/bailey.hpp"

#include <algorithm>
#include <functional>

#include "qbailey/qfunctions.hpp"

namespace qbailey {

namespace {

QPower q_to(std::int64_t e) { return QPower::q(Rational(e)); }

// Grid index of q^{L^2} a^L = q^{L^2 + ell L}.
std::int64_t square_index(std::int64_t L, std::int64_t ell, std::int64_t d) { return (L * L + ell * L) * d; }

}  // namespace

std::string to_string(FamilyVariant v) {
  switch (v) {
    case FamilyVariant::classic:
      return "classic";
    case FamilyVariant::rho:
      return "rho";
    case FamilyVariant::level_n:
      return "level-N";
  }
  return "unknown";
}

QSeries DeltaGammaFamily::delta_at(std::int64_t L) const {
  if (L < 0 || L >= static_cast<std::int64_t>(delta.size())) return QSeries::zero(grid);
  return delta[static_cast<std::size_t>(L)];
}

QSeries DeltaGammaFamily::gamma_at(std::int64_t L) const {
  if (L < 0 || L >= static_cast<std::int64_t>(gamma.size())) return QSeries::zero(grid);
  return gamma[static_cast<std::size_t>(L)];
}

TableCheck compare_tables(const SeriesTable& lhs, const SeriesTable& rhs, std::optional<std::int64_t> limit) {
  TableCheck out;
  if (lhs.size() != rhs.size()) {
    throw std::invalid_argument("compare_tables: tables differ in length");
  }
  for (std::size_t L = 0; L < lhs.size(); ++L) {
    out.compared_cutoff = std::min({out.compared_cutoff, lhs[L].cutoff(), rhs[L].cutoff()});
    if (out.equal) {
      if (auto m = first_mismatch(lhs[L], rhs[L], limit)) {
        out.equal = false;
        out.index = static_cast<std::int64_t>(L);
        out.mismatch = std::move(m);
      }
    }
  }
  if (limit) out.compared_cutoff = std::min(out.compared_cutoff, *limit);
  return out;
}

SeriesTable beta_from_alpha(const SeriesTable& alpha, std::int64_t ell, std::int64_t max_index,
                            const Grid& grid) {
  if (static_cast<std::int64_t>(alpha.size()) <= max_index) {
    throw std::invalid_argument("beta_from_alpha: alpha table shorter than L_max");
  }
  auto aq = q_to(ell + 1);
  SeriesTable beta;
  beta.reserve(static_cast<std::size_t>(max_index + 1));
  for (std::int64_t L = 0; L <= max_index; ++L) {
    QSeries sum = QSeries::zero(grid);
    for (std::int64_t k = 0; k <= L; ++k) {
      const auto& a = alpha[static_cast<std::size_t>(k)];
      if (a.is_zero()) continue;
      auto term = divide_pochhammer(a.truncated(grid.cutoff), QPower::q(), L - k);
      sum += divide_pochhammer(term, aq, L + k);
    }
    beta.push_back(std::move(sum));
  }
  return beta;
}

SeriesTable gamma_from_delta(const SeriesTable& delta, std::int64_t ell, std::int64_t M, const Grid& grid) {
  auto aq = q_to(ell + 1);
  SeriesTable gamma;
  gamma.reserve(static_cast<std::size_t>(M + 1));
  for (std::int64_t L = 0; L <= M; ++L) {
    QSeries sum = QSeries::zero(grid);
    for (std::int64_t k = L; k <= M && k < static_cast<std::int64_t>(delta.size()); ++k) {
      const auto& dk = delta[static_cast<std::size_t>(k)];
      if (dk.is_zero()) continue;
      auto term = divide_pochhammer(dk.truncated(grid.cutoff), QPower::q(), k - L);
      sum += divide_pochhammer(term, aq, k + L);
    }
    gamma.push_back(std::move(sum));
  }
  return gamma;
}

TableCheck verify_pair(const BaileyPair& pair) {
  auto beta = beta_from_alpha(pair.alpha, pair.ell, pair.max_index(), pair.grid);
  return compare_tables(beta, pair.beta);
}

IdentitySides bilinear_sides(const BaileyPair& pair, const DeltaGammaFamily& family) {
  if (pair.ell != family.ell) {
    throw std::invalid_argument("bilinear check: pair is relative to q^" + std::to_string(pair.ell) +
                                " but the family to q^" + std::to_string(family.ell));
  }
  if (pair.max_index() < family.M) {
    throw std::invalid_argument("bilinear check: pair table must reach L = M");
  }
  IdentitySides out{QSeries::zero(pair.grid), QSeries::zero(pair.grid)};
  for (std::int64_t L = 0; L <= family.M; ++L) {
    auto i = static_cast<std::size_t>(L);
    out.lhs += pair.alpha[i] * family.gamma_at(L);
    out.rhs += pair.beta[i] * family.delta_at(L);
  }
  return out;
}

BaileyPair unit_pair(std::int64_t ell, std::int64_t max_index, const Grid& grid) {
  if (ell < 0) throw std::invalid_argument("unit_pair needs ell >= 0");
  auto d = grid.denominator;
  BaileyPair pair;
  pair.ell = ell;
  pair.grid = grid;
  pair.label = "unit";
  for (std::int64_t L = 0; L <= max_index; ++L) {
    pair.beta.push_back(L == 0 ? QSeries::one(grid) : QSeries::zero(grid));
    if (L == 0) {
      pair.alpha.push_back(QSeries::one(grid));
      continue;
    }
    auto shift = L * (L - 1) / 2 * d;
    auto inner = grid.with_cutoff(grid.cutoff - shift);
    auto num = pochhammer(q_to(ell + 1), L - 1, inner).times_binomial(1, (ell + 2 * L) * d);
    if (L % 2 != 0) num = -num;
    pair.alpha.push_back(divide_pochhammer(num.shifted(shift).truncated(grid.cutoff), QPower::q(), L));
  }
  return pair;
}

BaileyPair chain_step(const BaileyPair& pair) {
  const auto& grid = pair.grid;
  auto d = grid.denominator;
  BaileyPair next;
  next.ell = pair.ell;
  next.grid = grid;
  next.label = pair.label + "+chain";
  for (std::int64_t L = 0; L <= pair.max_index(); ++L) {
    auto i = static_cast<std::size_t>(L);
    next.alpha.push_back(pair.alpha[i].shifted(square_index(L, pair.ell, d)).truncated(grid.cutoff));
    QSeries sum = QSeries::zero(grid);
    for (std::int64_t k = 0; k <= L; ++k) {
      const auto& b = pair.beta[static_cast<std::size_t>(k)];
      if (b.is_zero()) continue;
      auto term = b.shifted(square_index(k, pair.ell, d)).truncated(grid.cutoff);
      sum += divide_pochhammer(term, QPower::q(), L - k);
    }
    next.beta.push_back(std::move(sum));
  }
  return next;
}

BaileyPair chain(const BaileyPair& pair, int steps) {
  BaileyPair out = pair;
  for (int i = 0; i < steps; ++i) out = chain_step(out);
  return out;
}

DeltaGammaFamily classic_delta_gamma(std::int64_t M, std::int64_t ell, const Grid& grid) {
  if (M < 0) throw std::invalid_argument("classic_delta_gamma needs M >= 0");
  DeltaGammaFamily f;
  f.variant = FamilyVariant::classic;
  f.M = M;
  f.ell = ell;
  f.grid = grid;
  f.normalization = QSeries::one(Grid::exact(grid.denominator));
  for (std::int64_t L = 0; L <= M; ++L) {
    auto delta = divide_pochhammer(QSeries::monomial(grid, square_index(L, ell, grid.denominator)),
                                   QPower::q(), M - L);
    f.gamma.push_back(divide_pochhammer(delta, q_to(ell + 1), M + L));
    f.delta.push_back(std::move(delta));
  }
  return f;
}

DeltaGammaFamily rho_delta_gamma(std::int64_t M, std::int64_t ell, std::optional<QPower> rho1,
                                 std::optional<QPower> rho2, const Grid& grid) {
  if (M < 0) throw std::invalid_argument("rho_delta_gamma needs M >= 0");
  auto d = grid.denominator;
  auto exact = Grid::exact(d);
  auto aq = q_to(ell + 1);
  std::vector<QPower> finite;
  for (const auto& r : {rho1, rho2}) {
    if (r) finite.push_back(*r);
  }

  DeltaGammaFamily f;
  f.variant = FamilyVariant::rho;
  f.M = M;
  f.ell = ell;
  f.rho1 = rho1;
  f.rho2 = rho2;
  f.grid = grid;
  f.normalization = QSeries::one(exact);
  for (const auto& r : finite) f.normalization = f.normalization * pochhammer(aq / r, M, exact);

  for (std::int64_t L = 0; L <= M; ++L) {
    // (rho)_L rho^{-L} for finite rho, its limit (-1)^L q^{L(L-1)/2} otherwise.
    QSeries common = aq.pow(L).to_series(exact);
    for (const auto& r : {rho1, rho2}) {
      if (r) {
        common = common * pochhammer(*r, L, exact) * r->pow(-L).to_series(exact);
      } else {
        common = common * QSeries::monomial(exact, L * (L - 1) / 2 * d, (L % 2 == 0) ? 1 : -1);
      }
    }

    QSeries delta_num = common;
    if (finite.size() == 2) delta_num = delta_num * pochhammer(aq / (finite[0] * finite[1]), M - L, exact);
    f.delta.push_back(divide_pochhammer(delta_num.truncated(grid.cutoff), QPower::q(), M - L));

    QSeries gamma_num = common;
    for (const auto& r : finite) gamma_num = gamma_num * pochhammer(aq * q_to(L) / r, M - L, exact);
    auto gamma = divide_pochhammer(gamma_num.truncated(grid.cutoff), QPower::q(), M - L);
    f.gamma.push_back(divide_pochhammer(gamma, aq, M + L));
  }
  return f;
}

std::int64_t quadratic_index_bound(std::int64_t ell, const Grid& grid) {
  std::int64_t L = 0;
  while (square_index(L + 1, ell, grid.denominator) <= grid.cutoff) ++L;
  return L;
}

IdentitySides limiting_sides(const BaileyPair& pair) {
  const auto& grid = pair.grid;
  auto bound = quadratic_index_bound(pair.ell, grid);
  if (pair.max_index() < bound) {
    throw std::invalid_argument("limiting identity needs the pair up to L = " + std::to_string(bound));
  }
  IdentitySides out{QSeries::zero(grid), QSeries::zero(grid)};
  for (std::int64_t L = 0; L <= bound; ++L) {
    auto e = square_index(L, pair.ell, grid.denominator);
    auto remaining = grid.cutoff - e;
    for (auto [table, side] : {std::pair{&pair.alpha, &out.lhs}, std::pair{&pair.beta, &out.rhs}}) {
      const auto& s = (*table)[static_cast<std::size_t>(L)];
      if (s.lowest_index().value_or(0) < 0) {
        throw std::invalid_argument("limiting identity needs pairs without negative exponents");
      }
      *side += s.truncated(remaining).shifted(e);
    }
  }
  out.lhs = divide_pochhammer(out.lhs, q_to(pair.ell + 1), kInfinite);
  return out;
}

IdentitySides ag_identity_sides(int k, std::int64_t ell, const Grid& grid) {
  if (k < 1) throw std::invalid_argument("Andrews-Gordon identity needs k >= 1");
  auto d = grid.denominator;
  auto top = grid.cutoff / d;
  IdentitySides out{QSeries::zero(grid), QSeries::zero(grid)};

  // 2 * exponent = (2k+3) j^2 + (1 + 2 ell k) j.
  if (auto window = quadratic_window(2 * k + 3, 1 + 2 * ell * k, 0, 2 * top)) {
    for (auto j = window->first; j <= window->second; ++j) {
      auto e = ((2 * k + 3) * j * j + (1 + 2 * ell * k) * j) / 2;
      out.lhs += QSeries::monomial(grid, e * d, (j % 2 == 0) ? 1 : -1);
    }
  }
  out.lhs = divide_pochhammer(out.lhs, QPower::q(), kInfinite);

  // n_1 >= n_2 >= ... >= n_k >= 0, exponent sum n_i^2 + ell n_i.
  std::vector<std::int64_t> n(static_cast<std::size_t>(k));
  std::function<void(int, std::int64_t, std::int64_t)> visit = [&](int depth, std::int64_t cap,
                                                                   std::int64_t used) {
    if (depth == k) {
      auto term = QSeries::monomial(grid, used * d);
      for (int i = 0; i < k; ++i) {
        auto next = (i + 1 < k) ? n[static_cast<std::size_t>(i + 1)] : 0;
        term = divide_pochhammer(term, QPower::q(), n[static_cast<std::size_t>(i)] - next);
      }
      out.rhs += term;
      return;
    }
    for (std::int64_t v = 0; v <= cap && used + v * v + ell * v <= top; ++v) {
      n[static_cast<std::size_t>(depth)] = v;
      visit(depth + 1, v, used + v * v + ell * v);
    }
  };
  visit(0, top, 0);
  return out;
}

}  // namespace qbailey
