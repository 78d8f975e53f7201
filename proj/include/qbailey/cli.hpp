#pragma once

// The qbailey command driver: request planning, concurrent evaluation with
// ordered emission, and the command-line front end.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbailey/report.hpp"
#include "qbailey/series.hpp"

namespace qbailey {

inline constexpr std::int64_t kDefaultOrder = 60;

// Bad parameters; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One `verify` invocation. Unset fields take per-identity defaults; lemma3
// and rho-check sweep M (and ell) when those are unset.
struct VerifyRequest {
  std::string identity;
  std::optional<std::int64_t> N;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> ell;
  std::optional<std::int64_t> M;
  std::optional<std::int64_t> L;
  std::optional<std::int64_t> r;
  std::optional<std::int64_t> s;
  std::optional<std::string> rho1;
  std::optional<std::string> rho2;
  std::int64_t order = kDefaultOrder;
  std::optional<Rational> perturb;  // add 1 to the rhs coefficient at this exponent
};

struct Task {
  IdentityReport report;  // identity, params and order filled in
  std::function<void(IdentityReport&)> body;
};

// Expand a request into tasks in deterministic parameter order. Throws
// UsageError on invalid parameters.
std::vector<Task> plan(const VerifyRequest& request);

// The acceptance matrix. "full" uses the stated truncation orders, "quick" a
// reduced version of the same matrix.
std::vector<VerifyRequest> suite_requests(const std::string& profile);

// Run with up to `jobs` workers; results keep task order. Exceptions in a
// task become an error report.
std::vector<IdentityReport> run_tasks(std::vector<Task> tasks, int jobs);

// argv without the program name. Returns the process exit code: 0 when every
// report passes, 1 when any fails or errors, 2 on usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbailey
