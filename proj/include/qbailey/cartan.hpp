#pragma once

// A_{N-1} Cartan data and the linear (m,n)- and (mu,eta)-systems.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbailey/series.hpp"

namespace qbailey {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

struct CartanData {
  std::int64_t N = 1;
  IntMatrix cartan;      // C = 2I - I_inc, (N-1) x (N-1)
  IntMatrix incidence;   // path-graph adjacency
  RationalMatrix inverse;
  IntMatrix scaled_inverse;  // N * C^{-1}, integral with positive entries

  std::int64_t rank() const { return N - 1; }

  // e_ell with 1-based index; e_0 and e_N are the zero vector.
  IntVector unit_vector(std::int64_t ell) const;

  // N * v^T C^{-1} w, exactly.
  std::int64_t scaled_form(const IntVector& v, const IntVector& w) const;
  // (C^{-1} v)_row, exactly (row is 1-based).
  Rational inverse_row_dot(std::int64_t row, const IntVector& v) const;
};

// Cartan data of A_{N-1}; C^{-1} is obtained by exact elimination.
CartanData cartan(std::int64_t N);

// The congruence form of L/N - (C^{-1} n)_1 in Z: sum_k k n_k = -L (mod N).
bool satisfies_congruence(std::int64_t N, std::int64_t L, const IntVector& n);

enum class SolveStatus { accepted, zero_term, non_integral };

struct SolveResult {
  SolveStatus status = SolveStatus::accepted;
  IntVector m;             // valid unless non_integral
  RationalVector rational;  // C^{-1}(b - 2n)
};

// m = C^{-1}(b - 2n). Negative integer entries are tagged zero_term (the
// Gaussian binomial vanishes there); non-integral entries are a reject.
SolveResult solve_mn(const CartanData& cd, const IntVector& source, const IntVector& n);

enum class LinearSystem { mn, em };

// Source vector b of C m = b - 2n:
//   mn: (2L + ell) e_{N-1} + e_ell
//   em: (M - L) e_1 + (M + L + ell) e_{N-1} + e_ell
IntVector system_source(const CartanData& cd, LinearSystem system, std::int64_t L, std::int64_t ell,
                        std::int64_t M = 0);

struct MNSolution {
  IntVector n;
  IntVector m;
  std::int64_t L = 0;
  std::int64_t ell = 0;
  std::int64_t M = 0;
  LinearSystem system = LinearSystem::mn;
};

struct Enumeration {
  std::vector<MNSolution> solutions;
  std::size_t candidates = 0;              // points of the polytope visited
  std::size_t rejected_congruence = 0;
  std::size_t rejected_non_integral = 0;
  // A congruence-respecting candidate had a nonnegative but non-integral m.
  bool integrality_warning = false;
};

// All n >= 0 with the congruence constraint and integral m >= 0. The search
// visits exactly the lattice points of {n >= 0 : C^{-1}(b - 2n) >= 0}.
Enumeration enumerate_admissible(const CartanData& cd, std::int64_t L, std::int64_t ell,
                                 LinearSystem system, std::int64_t M = 0);

std::string to_string(const IntVector& v);

}  // namespace qbailey
