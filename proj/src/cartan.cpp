#include "qbailey/cartan.hpp"

#include <functional>
#include <sstream>

namespace qbailey {

IntVector CartanData::unit_vector(std::int64_t ell) const {
  IntVector e(static_cast<std::size_t>(rank()), 0);
  if (ell >= 1 && ell <= rank()) e[static_cast<std::size_t>(ell - 1)] = 1;
  return e;
}

std::int64_t CartanData::scaled_form(const IntVector& v, const IntVector& w) const {
  std::int64_t total = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    for (std::size_t k = 0; k < w.size(); ++k) total += v[j] * scaled_inverse[j][k] * w[k];
  }
  return total;
}

Rational CartanData::inverse_row_dot(std::int64_t row, const IntVector& v) const {
  Rational total = 0;
  const auto& r = inverse[static_cast<std::size_t>(row - 1)];
  for (std::size_t k = 0; k < v.size(); ++k) total += r[k] * Rational(v[k]);
  return total;
}

CartanData cartan(std::int64_t N) {
  if (N < 1) throw std::invalid_argument("cartan: N must be >= 1, got " + std::to_string(N));
  CartanData cd;
  cd.N = N;
  auto r = static_cast<std::size_t>(N - 1);
  cd.cartan.assign(r, IntVector(r, 0));
  cd.incidence.assign(r, IntVector(r, 0));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < r; ++k) {
      cd.incidence[j][k] = (j + 1 == k || k + 1 == j) ? 1 : 0;
      cd.cartan[j][k] = (j == k ? 2 : 0) - cd.incidence[j][k];
    }
  }

  // Gauss-Jordan on [C | I] over Q. C is positive definite, so pivots are nonzero.
  RationalMatrix a(r, RationalVector(2 * r, 0));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < r; ++k) a[j][k] = cd.cartan[j][k];
    a[j][r + j] = 1;
  }
  for (std::size_t col = 0; col < r; ++col) {
    auto pivot = a[col][col];
    for (auto& x : a[col]) x /= pivot;
    for (std::size_t row = 0; row < r; ++row) {
      if (row == col || a[row][col] == 0) continue;
      auto factor = a[row][col];
      for (std::size_t k = 0; k < 2 * r; ++k) a[row][k] -= factor * a[col][k];
    }
  }
  cd.inverse.assign(r, RationalVector(r, 0));
  cd.scaled_inverse.assign(r, IntVector(r, 0));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < r; ++k) {
      cd.inverse[j][k] = a[j][r + k];
      auto scaled = cd.inverse[j][k] * Rational(N);
      if (scaled.denominator() != 1) throw std::logic_error("N * C^{-1} is not integral");
      cd.scaled_inverse[j][k] = scaled.numerator();
    }
  }
  return cd;
}

bool satisfies_congruence(std::int64_t N, std::int64_t L, const IntVector& n) {
  std::int64_t s = L;
  for (std::size_t k = 0; k < n.size(); ++k) s += static_cast<std::int64_t>(k + 1) * n[k];
  return ((s % N) + N) % N == 0;
}

SolveResult solve_mn(const CartanData& cd, const IntVector& source, const IntVector& n) {
  SolveResult out;
  auto r = static_cast<std::size_t>(cd.rank());
  IntVector v(r);
  for (std::size_t k = 0; k < r; ++k) v[k] = source[k] - 2 * n[k];
  out.m.assign(r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    std::int64_t scaled = 0;
    for (std::size_t k = 0; k < r; ++k) scaled += cd.scaled_inverse[j][k] * v[k];
    Rational value(scaled, cd.N);
    out.rational.push_back(value);
    if (value.denominator() != 1) {
      out.status = SolveStatus::non_integral;
    } else {
      out.m[j] = value.numerator();
      if (out.m[j] < 0 && out.status == SolveStatus::accepted) out.status = SolveStatus::zero_term;
    }
  }
  return out;
}

IntVector system_source(const CartanData& cd, LinearSystem system, std::int64_t L, std::int64_t ell,
                        std::int64_t M) {
  auto b = cd.unit_vector(ell);
  if (cd.rank() == 0) return b;
  auto last = static_cast<std::size_t>(cd.rank() - 1);
  if (system == LinearSystem::mn) {
    b[last] += 2 * L + ell;
  } else {
    b[0] += M - L;
    b[last] += M + L + ell;
  }
  return b;
}

Enumeration enumerate_admissible(const CartanData& cd, std::int64_t L, std::int64_t ell, LinearSystem system,
                                 std::int64_t M) {
  if (ell < 0 || ell > cd.N) throw std::invalid_argument("enumerate_admissible: need 0 <= ell <= N");
  if (system == LinearSystem::em && (L < 0 || L > M)) {
    throw std::invalid_argument("enumerate_admissible: (mu,eta)-system needs 0 <= L <= M");
  }
  Enumeration out;
  auto r = static_cast<std::size_t>(cd.rank());
  auto b = system_source(cd, system, L, ell, M);

  // m >= 0  <=>  2 (N C^{-1} n)_j <= (N C^{-1} b)_j for every j.
  IntVector budget(r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < r; ++k) budget[j] += cd.scaled_inverse[j][k] * b[k];
  }
  for (auto x : budget) {
    if (x < 0) return out;
  }

  IntVector n(r, 0);
  IntVector used(r, 0);  // 2 (N C^{-1} n)_j over the assigned coordinates
  std::function<void(std::size_t)> visit = [&](std::size_t k) {
    if (k == r) {
      ++out.candidates;
      if (!satisfies_congruence(cd.N, L, n)) {
        ++out.rejected_congruence;
        return;
      }
      auto solved = solve_mn(cd, b, n);
      if (solved.status == SolveStatus::non_integral) {
        ++out.rejected_non_integral;
        out.integrality_warning = true;  // inside the polytope, so the entries are >= 0
        return;
      }
      if (solved.status == SolveStatus::zero_term) return;
      out.solutions.push_back({n, solved.m, L, ell, M, system});
      return;
    }
    for (std::int64_t v = 0;; ++v) {
      bool fits = true;
      for (std::size_t j = 0; j < r; ++j) {
        if (used[j] + 2 * cd.scaled_inverse[j][k] * v > budget[j]) {
          fits = false;
          break;
        }
      }
      if (!fits) break;
      n[k] = v;
      for (std::size_t j = 0; j < r; ++j) used[j] += 2 * cd.scaled_inverse[j][k] * v;
      visit(k + 1);
      for (std::size_t j = 0; j < r; ++j) used[j] -= 2 * cd.scaled_inverse[j][k] * v;
    }
    n[k] = 0;
  };
  visit(0);
  return out;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace qbailey
