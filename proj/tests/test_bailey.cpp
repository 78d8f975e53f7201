#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qbailey/bailey.hpp"
#include "qbailey/level_n.hpp"
#include "qbailey/qfunctions.hpp"

using namespace qbailey;

namespace {

QSeries q_to(std::int64_t e, const Grid& g) { return QPower::q(Rational(e)).to_series(g); }

// 1 / ((q)_x (q^{ell+1})_y) at the grid cutoff.
QSeries inverse_pair(std::int64_t x, std::int64_t ell, std::int64_t y, const Grid& g) {
  auto s = inverse_pochhammer(QPower::q(), x, g);
  return divide_pochhammer(s, QPower::q(Rational(ell + 1)), y);
}

}  // namespace

TEST_CASE("unit pair values") {
  auto g = Grid::integral(2, 30);
  auto p0 = unit_pair(0, 4, g);
  CHECK(p0.alpha[0] == QSeries::one(g));
  // alpha_1 = -(1 + q), alpha_2 = (1 + q^2) q at a = 1
  CHECK(p0.alpha[1] == -(QSeries::one(g) + q_to(1, g)));
  CHECK(p0.alpha[2] == q_to(1, g) + q_to(3, g));
  auto p3 = unit_pair(3, 4, g);
  CHECK(p3.alpha[0] == QSeries::one(g));
  for (std::int64_t L = 0; L <= 4; ++L) {
    CHECK(p3.beta[static_cast<std::size_t>(L)] == (L == 0 ? QSeries::one(g) : QSeries::zero(g)));
  }
}

TEST_CASE("unit pair satisfies the pair relation") {
  for (std::int64_t ell = 0; ell <= 2; ++ell) {
    auto g = Grid::integral(2, 60);
    auto p = unit_pair(ell, 10, g);
    auto beta = beta_from_alpha(p.alpha, ell, 10, g);
    for (std::size_t L = 0; L < beta.size(); ++L) {
      CHECK(beta[L] == (L == 0 ? QSeries::one(g) : QSeries::zero(g)));
    }
    CHECK(verify_pair(p).equal);
  }
}

TEST_CASE("beta from a delta alpha") {
  auto g = Grid::integral(1, 40);
  SeriesTable alpha(6, QSeries::zero(g));
  alpha[0] = QSeries::one(g);
  auto beta = beta_from_alpha(alpha, 1, 5, g);
  for (std::int64_t L = 0; L <= 5; ++L) {
    CHECK(beta[static_cast<std::size_t>(L)] == inverse_pair(L, 1, L, g));
  }
}

TEST_CASE("gamma from a delta concentrated at M") {
  auto g = Grid::integral(1, 40);
  const std::int64_t M = 4, ell = 1;
  SeriesTable delta(M + 1, QSeries::zero(g));
  delta[M] = QSeries::one(g);
  auto gamma = gamma_from_delta(delta, ell, M, g);
  for (std::int64_t L = 0; L <= M; ++L) {
    CHECK(gamma[static_cast<std::size_t>(L)] == inverse_pair(M - L, ell, M + L, g));
  }
}

TEST_CASE("classic family obeys the transform") {
  auto g = Grid::integral(2, 50);
  auto f0 = classic_delta_gamma(0, 0, g);
  CHECK(f0.delta[0] == QSeries::one(g));
  CHECK(f0.gamma[0] == QSeries::one(g));
  for (std::int64_t ell = 0; ell <= 1; ++ell) {
    auto f = classic_delta_gamma(3, ell, g);
    CHECK(compare_tables(gamma_from_delta(f.delta, ell, 3, g), f.gamma).equal);
    // closed form q^{L^2} a^L / ((q)_{M-L} (aq)_{M+L})
    for (std::int64_t L = 0; L <= 3; ++L) {
      auto expect = inverse_pair(3 - L, ell, 3 + L, g).truncated(g.cutoff - 2 * (L * L + ell * L)).shifted(2 * (L * L + ell * L));
      CHECK(f.gamma[static_cast<std::size_t>(L)] == expect);
    }
    CHECK(f.delta_at(4).is_zero());
    CHECK(f.gamma_at(7).is_zero());
  }
}

TEST_CASE("chain step") {
  auto g = Grid::integral(2, 40);
  auto p = unit_pair(0, 8, g);
  auto c = chain_step(p);
  CHECK(c.alpha[0] == p.alpha[0]);
  CHECK(c.beta[0] == p.beta[0]);
  for (std::int64_t L = 0; L <= 8; ++L) {
    CHECK(c.beta[static_cast<std::size_t>(L)] == inverse_pochhammer(QPower::q(), L, g));
  }
}

TEST_CASE("chain closure for three steps") {
  for (std::int64_t ell = 0; ell <= 2; ++ell) {
    auto g = Grid::integral(2, 40);
    auto p = unit_pair(ell, 12, g);
    for (int step = 1; step <= 3; ++step) {
      p = chain_step(p);
      CHECK_MESSAGE(verify_pair(p).equal, "ell=" << ell << " step=" << step);
    }
  }
}

TEST_CASE("bilinear identity") {
  auto g = Grid::integral(2, 40);
  auto pair = unit_pair(0, 6, g);
  auto fam = classic_delta_gamma(6, 0, g);
  auto sides = bilinear_sides(pair, fam);
  CHECK(sides.lhs == sides.rhs);

  DeltaGammaFamily zero = fam;
  for (auto& s : zero.delta) s = QSeries::zero(g);
  for (auto& s : zero.gamma) s = QSeries::zero(g);
  auto z = bilinear_sides(pair, zero);
  CHECK(z.lhs.is_zero());
  CHECK(z.rhs.is_zero());

  CHECK_THROWS(bilinear_sides(unit_pair(1, 6, g), fam));

  auto g2 = Grid::integral(4, 30);
  auto level = level_n_delta_gamma(2, 5, 1, g2);
  auto s2 = bilinear_sides(unit_pair(1, 5, g2), level);
  CHECK(s2.lhs == s2.rhs);
}

TEST_CASE("finite M stabilizes toward the limit") {
  auto g = Grid::integral(2, 30);
  for (std::int64_t M = 4; M <= 8; ++M) {
    auto small = bilinear_sides(unit_pair(0, M + 5, g), classic_delta_gamma(M, 0, g));
    auto large = bilinear_sides(unit_pair(0, M + 5, g), classic_delta_gamma(M + 5, 0, g));
    CHECK_FALSE(first_mismatch(small.lhs, large.lhs, 2 * M));
  }
}

TEST_CASE("two-parameter family") {
  auto g = Grid::integral(2, 60);
  for (std::int64_t ell = 0; ell <= 1; ++ell) {
    for (std::int64_t M = 0; M <= 6; ++M) {
      auto f = rho_delta_gamma(M, ell, QPower::minus_q(), QPower::q(2), g);
      CHECK_MESSAGE(compare_tables(gamma_from_delta(f.delta, ell, M, g), f.gamma).equal,
                    "ell=" << ell << " M=" << M);
    }
  }
  // the infinite limit is the classic family
  for (std::int64_t M = 0; M <= 5; ++M) {
    auto a = rho_delta_gamma(M, 1, std::nullopt, std::nullopt, g);
    auto b = classic_delta_gamma(M, 1, g);
    CHECK(compare_tables(a.delta, b.delta).equal);
    CHECK(compare_tables(a.gamma, b.gamma).equal);
  }
  // one finite parameter
  auto h = rho_delta_gamma(4, 1, QPower::minus_q(), std::nullopt, g);
  CHECK(compare_tables(gamma_from_delta(h.delta, 1, 4, g), h.gamma).equal);
}

TEST_CASE("two-parameter family at L = 0") {
  // cleared delta_0 = (aq/(rho1 rho2))_M / (q)_M
  auto g = Grid::integral(2, 40);
  const std::int64_t M = 3, ell = 1;
  auto f = rho_delta_gamma(M, ell, QPower::minus_q(), QPower::q(3), g);
  auto x = QPower::q(Rational(ell + 1)) / (QPower::minus_q() * QPower::q(3));
  auto expect = divide_pochhammer(pochhammer(x, M, g), QPower::q(), M);
  CHECK(f.delta[0] == expect);
}

TEST_CASE("two-parameter family with a fractional parameter") {
  auto g = Grid::integral(4, 30);
  auto f = rho_delta_gamma(3, 0, QPower::q(Rational(1, 2)), QPower::minus_q(), g);
  CHECK(compare_tables(gamma_from_delta(f.delta, 0, 3, g), f.gamma).equal);
  CHECK_THROWS_AS(rho_delta_gamma(3, 0, QPower::q(Rational(1, 3)), std::nullopt, g), GridError);
}

TEST_CASE("euler identity from the unit pair") {
  for (std::int64_t ell = 0; ell <= 2; ++ell) {
    auto g = Grid::integral(2, 80);
    auto sides = limiting_sides(unit_pair(ell, quadratic_index_bound(ell, g), g));
    CHECK(sides.lhs == QSeries::one(g));
    CHECK(sides.rhs == QSeries::one(g));
  }
}

TEST_CASE("andrews-gordon identities match the product side") {
  const std::size_t T = 60;
  auto g = Grid::integral(2, T);
  for (int k = 1; k <= 3; ++k) {
    std::size_t mod = 2 * k + 3;
    for (std::int64_t ell = 0; ell <= 1; ++ell) {
      auto sides = ag_identity_sides(k, ell, g);
      CHECK(sides.lhs == sides.rhs);
      // parts avoiding 0 and +-(k+1) mod 2k+3 at a = 1, 0 and +-1 at a = q
      std::size_t avoid = ell == 0 ? static_cast<std::size_t>(k + 1) : 1;
      std::set<std::size_t> allowed;
      for (std::size_t res = 1; res < mod; ++res) {
        if (res != avoid && res != mod - avoid) allowed.insert(res);
      }
      CHECK_MESSAGE(oracle::coefficients(sides.rhs, T) == oracle::restricted_partitions(T, mod, allowed),
                    "k=" << k << " ell=" << ell);
    }
  }
}

TEST_CASE("rogers-ramanujan coefficients") {
  auto g = Grid::integral(2, 12);
  auto sides = ag_identity_sides(1, 0, g);
  CHECK(oracle::coefficients(sides.lhs, 6) == oracle::Poly{1, 1, 1, 1, 2, 2, 3});
  CHECK(oracle::coefficients(sides.lhs, 12) == oracle::restricted_partitions(12, 5, {1, 4}));
}
