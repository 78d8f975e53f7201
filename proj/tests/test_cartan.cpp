#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "oracles.hpp"
#include "qbailey/cartan.hpp"

using namespace qbailey;

TEST_CASE("small cartan data") {
  auto c1 = cartan(1);
  CHECK(c1.rank() == 0);
  CHECK(c1.cartan.empty());
  CHECK(c1.inverse.empty());

  auto c2 = cartan(2);
  CHECK(c2.cartan == IntMatrix{{2}});
  CHECK(c2.incidence == IntMatrix{{0}});
  CHECK(c2.inverse[0][0] == Rational(1, 2));

  auto c3 = cartan(3);
  CHECK(c3.inverse == RationalMatrix{{Rational(2, 3), Rational(1, 3)}, {Rational(1, 3), Rational(2, 3)}});
  CHECK_THROWS(cartan(0));
}

TEST_CASE("inverse closed form and C * Cinv = I for N <= 8") {
  for (std::int64_t N = 1; N <= 8; ++N) {
    auto cd = cartan(N);
    auto r = static_cast<std::size_t>(N - 1);
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < r; ++k) {
        CHECK(cd.incidence[j][k] == ((j + 1 == k || k + 1 == j) ? 1 : 0));
        auto J = static_cast<std::int64_t>(j + 1), K = static_cast<std::int64_t>(k + 1);
        CHECK(cd.inverse[j][k] == Rational(oracle::scaled_cinv(N, J, K), N));
        CHECK(cd.scaled_inverse[j][k] > 0);
        Rational dot = 0;
        for (std::size_t i = 0; i < r; ++i) dot += Rational(cd.cartan[j][i]) * cd.inverse[i][k];
        CHECK(dot == Rational(j == k ? 1 : 0));
      }
    }
  }
}

TEST_CASE("unit vectors") {
  auto cd = cartan(4);
  CHECK(cd.unit_vector(0) == IntVector{0, 0, 0});
  CHECK(cd.unit_vector(2) == IntVector{0, 1, 0});
  CHECK(cd.unit_vector(4) == IntVector{0, 0, 0});
}

TEST_CASE("congruence equals the rational form for N <= 5") {
  for (std::int64_t N = 1; N <= 5; ++N) {
    auto cd = cartan(N);
    auto r = static_cast<std::size_t>(N - 1);
    for (std::int64_t L = 0; L <= 20; ++L) {
      IntVector n(r, 0);
      while (true) {
        bool rational_form = true;
        if (r > 0) {
          auto value = Rational(L, N) - cd.inverse_row_dot(1, n);
          rational_form = value.denominator() == 1;
        }
        CHECK(satisfies_congruence(N, L, n) == rational_form);
        std::size_t i = 0;
        while (i < r && n[i] == 10) n[i++] = 0;
        if (i == r) break;
        ++n[i];
      }
    }
  }
}

TEST_CASE("solve examples") {
  auto c2 = cartan(2);
  for (std::int64_t L = 0; L <= 5; ++L) {
    for (std::int64_t n1 = 0; n1 <= L; ++n1) {
      auto res = solve_mn(c2, system_source(c2, LinearSystem::mn, L, 0), {n1});
      CHECK(res.status == SolveStatus::accepted);
      CHECK(res.m == IntVector{L - n1});
    }
  }
  auto c3 = cartan(3);
  auto res = solve_mn(c3, system_source(c3, LinearSystem::mn, 3, 0), {1, 1});
  CHECK(res.status == SolveStatus::accepted);
  CHECK(res.m == IntVector{0, 2});

  auto neg = solve_mn(c3, system_source(c3, LinearSystem::mn, 1, 0), {2, 0});
  CHECK(neg.status == SolveStatus::zero_term);
  auto frac = solve_mn(c3, system_source(c3, LinearSystem::mn, 1, 0), {1, 0});
  CHECK(frac.status == SolveStatus::non_integral);

  auto c1 = cartan(1);
  auto empty = solve_mn(c1, system_source(c1, LinearSystem::mn, 4, 0), {});
  CHECK(empty.status == SolveStatus::accepted);
  CHECK(empty.m.empty());
}

TEST_CASE("enumeration examples") {
  auto e2 = enumerate_admissible(cartan(2), 2, 0, LinearSystem::mn);
  REQUIRE(e2.solutions.size() == 2);
  CHECK(e2.solutions[0].n == IntVector{0});
  CHECK(e2.solutions[0].m == IntVector{2});
  CHECK(e2.solutions[1].n == IntVector{2});
  CHECK(e2.solutions[1].m == IntVector{0});

  auto e3 = enumerate_admissible(cartan(3), 1, 0, LinearSystem::mn);
  REQUIRE(e3.solutions.size() == 1);
  CHECK(e3.solutions[0].n == IntVector{0, 1});
  CHECK(e3.solutions[0].m == IntVector{0, 0});

  auto e1 = enumerate_admissible(cartan(1), 7, 0, LinearSystem::mn);
  REQUIRE(e1.solutions.size() == 1);
  CHECK(e1.solutions[0].n.empty());

  CHECK_THROWS(enumerate_admissible(cartan(3), 1, 4, LinearSystem::mn));
  CHECK_THROWS(enumerate_admissible(cartan(3), 5, 0, LinearSystem::em, 3));
}

TEST_CASE("enumeration agrees with a brute-force box scan") {
  for (std::int64_t N = 1; N <= 3; ++N) {
    auto cd = cartan(N);
    for (std::int64_t ell = 0; ell <= N; ++ell) {
      for (std::int64_t L = 0; L <= 6; ++L) {
        auto side = 2 * L + ell + N;
        auto check = [&](LinearSystem sys, std::int64_t M) {
          auto found = enumerate_admissible(cd, L, ell, sys, M);
          std::vector<oracle::BoxSolution> got;
          for (const auto& s : found.solutions) got.push_back({s.n, s.m});
          auto expect = oracle::box_scan(N, L, ell, sys == LinearSystem::em, M, side + 2 * M);
          std::sort(got.begin(), got.end());
          std::sort(expect.begin(), expect.end());
          CHECK_MESSAGE(got == expect, "N=" << N << " ell=" << ell << " L=" << L << " M=" << M);
          CHECK_FALSE(found.integrality_warning);
        };
        check(LinearSystem::mn, 0);
        for (std::int64_t M = L; M <= 6; ++M) check(LinearSystem::em, M);
      }
    }
  }
}
