#include "qbailey/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "qbailey/bailey.hpp"
#include "qbailey/level_n.hpp"
#include "qbailey/qfunctions.hpp"

namespace qbailey {

namespace {

constexpr std::int64_t kClassicDenominator = 2;

std::optional<QPower> parse_rho(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::nullopt;
  try {
    return QPower::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("rho: ") + e.what());
  }
}

std::string rho_label(const std::optional<QPower>& rho) { return rho ? rho->to_string() : "inf"; }

void apply_perturbation(QSeries& rhs, const std::optional<Rational>& at, const Grid& grid) {
  if (at) rhs += QSeries::monomial(grid, grid.index(*at));
}

void note_integrality(IdentityReport& r, const LevelNWorkspace& ws) {
  if (auto n = ws.integrality_warnings()) {
    if (!r.message.empty()) r.message += "; ";
    r.message += "integrality warning: " + std::to_string(n) + " candidates with fractional m";
  }
}

Task make_task(const std::string& identity, const ReportParameters& params, std::int64_t order,
               std::int64_t denominator, std::function<void(IdentityReport&)> body) {
  IdentityReport r;
  r.identity = identity;
  r.params = params;
  r.order = order;
  r.denominator = denominator;
  return {std::move(r), std::move(body)};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

void check_perturb(const VerifyRequest& q, std::int64_t denominator) {
  if (!q.perturb) return;
  auto grid = Grid::integral(denominator, q.order);
  std::int64_t index = 0;
  try {
    index = grid.index(*q.perturb);
  } catch (const GridError&) {
    throw UsageError("perturb: exponent " + format_exponent(*q.perturb) + " is off the 1/" +
                     std::to_string(denominator) + " grid");
  }
  require(index <= grid.cutoff, "perturb: exponent " + format_exponent(*q.perturb) +
                                    " is beyond the truncation order");
}

void plan_euler(const VerifyRequest& q, std::vector<Task>& out) {
  auto ell = q.ell.value_or(0);
  require(ell >= 0, "euler: --ell must be >= 0");
  check_perturb(q, kClassicDenominator);
  ReportParameters p;
  p.ell = ell;
  auto grid = Grid::integral(kClassicDenominator, q.order);
  auto perturb = q.perturb;
  out.push_back(make_task("euler", p, q.order, grid.denominator, [=](IdentityReport& r) {
    auto pair = unit_pair(ell, quadratic_index_bound(ell, grid), grid);
    auto sides = limiting_sides(pair);
    auto one = QSeries::one(grid).truncated(grid.cutoff);
    apply_perturbation(one, perturb, grid);
    record_sides(r, sides.lhs, one, grid);
    if (r.status == Status::pass && sides.rhs != one) {
      record_sides(r, sides.rhs, one, grid);
      r.message = "beta side differs from 1";
    }
  }));
}

void plan_euler_level_n(const VerifyRequest& q, std::vector<Task>& out) {
  auto N = q.N.value_or(2);
  require(N >= 1, "euler-levelN: --N must be >= 1");
  auto D = level_n_denominator(N);
  check_perturb(q, D);
  ReportParameters p;
  p.N = N;
  auto grid = Grid::integral(D, q.order);
  auto perturb = q.perturb;
  out.push_back(make_task("euler-levelN", p, q.order, D, [=](IdentityReport& r) {
    LevelNWorkspace ws(N, grid);
    auto lhs = euler_level_n(ws);
    auto one = QSeries::one(grid).truncated(grid.cutoff);
    apply_perturbation(one, perturb, grid);
    record_sides(r, lhs, one, grid, true);
    note_integrality(r, ws);
  }));
}

void plan_ag(const VerifyRequest& q, std::vector<Task>& out) {
  auto k = q.k.value_or(1);
  auto ell = q.ell.value_or(0);
  require(k >= 1, "ag: --k must be >= 1");
  require(ell == 0 || ell == 1, "ag: --ell must be 0 or 1");
  check_perturb(q, kClassicDenominator);
  ReportParameters p;
  p.k = k;
  p.ell = ell;
  auto grid = Grid::integral(kClassicDenominator, q.order);
  auto perturb = q.perturb;
  out.push_back(make_task("ag", p, q.order, grid.denominator, [=](IdentityReport& r) {
    auto sides = ag_identity_sides(static_cast<int>(k), ell, grid);
    apply_perturbation(sides.rhs, perturb, grid);
    record_sides(r, sides.lhs, sides.rhs, grid);
  }));
}

void plan_agn(const VerifyRequest& q, std::vector<Task>& out) {
  auto N = q.N.value_or(1);
  auto k = q.k.value_or(1);
  require(N >= 1, "agn: --N must be >= 1");
  require(k >= 1, "agn: --k must be >= 1");
  auto D = level_n_denominator(N);
  check_perturb(q, D);
  ReportParameters p;
  p.N = N;
  p.k = k;
  auto grid = Grid::integral(D, q.order);
  auto perturb = q.perturb;
  out.push_back(make_task("agn", p, q.order, D, [=](IdentityReport& r) {
    LevelNWorkspace ws(N, grid);
    auto sides = agn_sides(ws, static_cast<int>(k));
    apply_perturbation(sides.rhs, perturb, grid);
    record_sides(r, sides.lhs, sides.rhs, grid, true);
    note_integrality(r, ws);
  }));
}

void plan_lemma3(const VerifyRequest& q, std::vector<Task>& out) {
  auto N = q.N.value_or(2);
  require(N >= 1, "lemma3: --N must be >= 1");
  if (q.ell) require(*q.ell >= 0 && *q.ell <= N, "lemma3: --ell must lie in [0, N]");
  if (q.M) require(*q.M >= 0, "lemma3: --M must be >= 0");
  auto D = level_n_denominator(N);
  auto grid = Grid::integral(D, q.order);
  auto ell_lo = q.ell.value_or(0), ell_hi = q.ell.value_or(N);
  auto M_lo = q.M.value_or(0), M_hi = q.M.value_or(8);
  for (auto ell = ell_lo; ell <= ell_hi; ++ell) {
    for (auto M = M_lo; M <= M_hi; ++M) {
      ReportParameters p;
      p.N = N;
      p.ell = ell;
      p.M = M;
      out.push_back(make_task("lemma3", p, q.order, D, [=](IdentityReport& r) {
        LevelNWorkspace ws(N, grid);
        auto family = ws.family(M, ell);
        auto transformed = gamma_from_delta(family.delta, ell, M, grid);
        record_tables(r, transformed, family.gamma, grid);
        note_integrality(r, ws);
      }));
    }
  }
}

void plan_pair_check(const VerifyRequest& q, std::vector<Task>& out) {
  auto ell = q.ell.value_or(0);
  auto steps = q.k.value_or(0);
  auto L = q.L.value_or(15);
  require(ell >= 0, "pair-check: --ell must be >= 0");
  require(steps >= 0, "pair-check: --k (chain steps) must be >= 0");
  require(L >= 0, "pair-check: --L must be >= 0");
  ReportParameters p;
  p.k = steps;
  p.ell = ell;
  p.L_max = L;
  auto grid = Grid::integral(kClassicDenominator, q.order);
  out.push_back(make_task("pair-check", p, q.order, grid.denominator, [=](IdentityReport& r) {
    auto pair = chain(unit_pair(ell, L, grid), static_cast<int>(steps));
    auto beta = beta_from_alpha(pair.alpha, ell, L, grid);
    record_tables(r, beta, pair.beta, grid);
  }));
}

void plan_rho_check(const VerifyRequest& q, std::vector<Task>& out) {
  auto r1 = parse_rho(q.rho1.value_or("-q"));
  auto r2 = parse_rho(q.rho2.value_or("q^2"));
  if (q.ell) require(*q.ell >= 0, "rho-check: --ell must be >= 0");
  if (q.M) require(*q.M >= 0, "rho-check: --M must be >= 0");
  std::int64_t D = kClassicDenominator;
  for (const auto& rho : {r1, r2}) {
    if (rho) D = std::lcm(D, kClassicDenominator * rho->exponent.denominator());
  }
  auto grid = Grid::integral(D, q.order);
  bool limit = !r1 && !r2;
  auto ell_lo = q.ell.value_or(0), ell_hi = q.ell.value_or(1);
  auto M_lo = q.M.value_or(0), M_hi = q.M.value_or(limit ? 8 : 6);
  for (auto ell = ell_lo; ell <= ell_hi; ++ell) {
    for (auto M = M_lo; M <= M_hi; ++M) {
      ReportParameters p;
      p.ell = ell;
      p.M = M;
      p.rho1 = rho_label(r1);
      p.rho2 = rho_label(r2);
      out.push_back(make_task("rho-check", p, q.order, D, [=](IdentityReport& r) {
        auto family = rho_delta_gamma(M, ell, r1, r2, grid);
        auto transformed = gamma_from_delta(family.delta, ell, M, grid);
        record_tables(r, transformed, family.gamma, grid);
        if (limit && r.status == Status::pass) {
          auto classic = classic_delta_gamma(M, ell, grid);
          record_tables(r, family.delta, classic.delta, grid);
          if (r.status == Status::pass) record_tables(r, family.gamma, classic.gamma, grid);
          if (r.status != Status::pass) r.message = "limit family differs from the classic family";
        }
      }));
    }
  }
}

void plan_triple_product(const VerifyRequest& q, std::vector<Task>& out) {
  auto s = q.s.value_or(3);
  auto rr = q.r.value_or(2);
  require(s >= 1, "triple-product: --s must be >= 1");
  require(rr >= 0 && rr <= s, "triple-product: --r must lie in [0, s]");
  check_perturb(q, kClassicDenominator);
  ReportParameters p;
  p.r = rr;
  p.s = s;
  auto grid = Grid::integral(kClassicDenominator, q.order);
  auto perturb = q.perturb;
  out.push_back(make_task("triple-product", p, q.order, grid.denominator, [=](IdentityReport& r) {
    auto tp = triple_product(rr, s, grid);
    apply_perturbation(tp.product_form, perturb, grid);
    record_sides(r, tp.sum_form, tp.product_form, grid);
  }));
}

// Flags each identity accepts beyond --trunc/--format/--jobs/--out/--timing.
const std::map<std::string, std::set<std::string>>& allowed_flags() {
  static const std::map<std::string, std::set<std::string>> flags = {
      {"euler", {"--N", "--ell", "--perturb"}},
      {"euler-levelN", {"--N", "--perturb"}},
      {"ag", {"--k", "--ell", "--perturb"}},
      {"agn", {"--N", "--k", "--perturb"}},
      {"lemma3", {"--N", "--ell", "--M"}},
      {"pair-check", {"--ell", "--k", "--L"}},
      {"rho-check", {"--rho1", "--rho2", "--ell", "--M"}},
      {"triple-product", {"--r", "--s", "--perturb"}},
  };
  return flags;
}

}  // namespace

std::vector<Task> plan(const VerifyRequest& request) {
  require(request.order >= 0, "--trunc must be >= 0");
  VerifyRequest q = request;
  if (q.order == 0) q.order = kDefaultOrder;
  std::vector<Task> out;
  const auto& id = q.identity;
  if (id == "euler") {
    if (q.N) {
      require(!q.ell, "euler: --ell cannot be combined with --N");
      plan_euler_level_n(q, out);
    } else {
      plan_euler(q, out);
    }
  } else if (id == "euler-levelN") {
    plan_euler_level_n(q, out);
  } else if (id == "ag") {
    plan_ag(q, out);
  } else if (id == "agn") {
    plan_agn(q, out);
  } else if (id == "lemma3") {
    plan_lemma3(q, out);
  } else if (id == "pair-check") {
    plan_pair_check(q, out);
  } else if (id == "rho-check") {
    plan_rho_check(q, out);
  } else if (id == "triple-product") {
    plan_triple_product(q, out);
  } else {
    throw UsageError("unknown identity '" + id + "'");
  }
  return out;
}

std::vector<VerifyRequest> suite_requests(const std::string& profile) {
  require(profile == "quick" || profile == "full", "unknown profile '" + profile + "'");
  bool full = profile == "full";
  std::vector<VerifyRequest> out;
  auto add = [&](VerifyRequest v, std::int64_t full_order, std::int64_t quick_order) {
    v.order = full ? full_order : quick_order;
    out.push_back(std::move(v));
  };

  for (std::int64_t ell = 0; ell <= 2; ++ell) {
    VerifyRequest v{.identity = "pair-check", .ell = ell, .L = full ? 15 : 8};
    add(v, 120, 40);
  }
  for (std::int64_t steps = 1; steps <= 3; ++steps) {
    VerifyRequest v{.identity = "pair-check", .k = steps, .ell = 0, .L = full ? 12 : 6};
    add(v, 60, 30);
  }
  {
    VerifyRequest v{.identity = "rho-check", .rho1 = "inf", .rho2 = "inf"};
    if (!full) v.M = 4;
    add(v, 80, 30);
  }
  for (std::int64_t ell = 0; ell <= 2; ++ell) add({.identity = "euler", .ell = ell}, 200, 60);
  for (std::int64_t k = 1; k <= 3; ++k) {
    for (std::int64_t ell = 0; ell <= 1; ++ell) add({.identity = "ag", .k = k, .ell = ell}, 80, 30);
  }
  for (std::int64_t N = 1; N <= 4; ++N) {
    VerifyRequest v{.identity = "lemma3", .N = N};
    if (!full) v.M = 4;
    add(v, 60, 20);
  }
  for (std::int64_t N = 1; N <= 4; ++N) add({.identity = "euler-levelN", .N = N}, 100, 30);
  const std::pair<std::int64_t, std::int64_t> agn_cases[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}};
  for (auto [N, k] : agn_cases) add({.identity = "agn", .N = N, .k = k}, 60, 20);
  const std::pair<const char*, const char*> rho_cases[] = {{"-q", "q^2"}, {"-1", "q^3"}};
  for (auto [a, b] : rho_cases) {
    VerifyRequest v{.identity = "rho-check", .rho1 = a, .rho2 = b};
    if (!full) v.M = 3;
    add(v, 60, 20);
  }
  for (std::int64_t s = 1; s <= 6; ++s) {
    for (std::int64_t r = 1; r < s; ++r) add({.identity = "triple-product", .r = r, .s = s}, 60, 30);
  }
  return out;
}

std::vector<IdentityReport> run_tasks(std::vector<Task> tasks, int jobs) {
  std::vector<IdentityReport> results(tasks.size());
  auto run_one = [&](std::size_t i) {
    auto& task = tasks[i];
    IdentityReport r = task.report;
    auto start = std::chrono::steady_clock::now();
    try {
      task.body(r);
    } catch (const std::exception& e) {
      r.status = Status::error;
      r.first_mismatch.reset();
      r.message = e.what();
    }
    auto stop = std::chrono::steady_clock::now();
    r.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    results[i] = std::move(r);
  };

  auto workers = static_cast<std::size_t>(std::max(1, jobs));
  workers = std::min(workers, tasks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) run_one(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-series verification of Bailey lemma identities.", "qbailey"};
  app.require_subcommand(1);

  std::string format = "json";
  int jobs = 1;
  std::string out_path;
  bool timing = false;
  auto add_output_flags = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "write reports to this file instead of stdout");
    sub->add_flag("--timing", timing, "include elapsed_ms in json and csv");
  };

  auto* verify = app.add_subcommand("verify", "verify one identity");
  std::string identity;
  std::int64_t N = 0, k = 0, ell = 0, M = 0, L = 0, r = 0, s = 0, order = kDefaultOrder;
  std::string rho1, rho2, perturb;
  verify->add_option("identity", identity, "identity to verify")
      ->required()
      ->check(CLI::IsMember(identity_names()));
  std::map<std::string, CLI::Option*> opts;
  opts["--N"] = verify->add_option("--N", N, "level");
  opts["--k"] = verify->add_option("--k", k, "Andrews-Gordon index, or chain steps for pair-check");
  opts["--ell"] = verify->add_option("--ell", ell, "a = q^ell");
  opts["--M"] = verify->add_option("--M", M, "family size");
  opts["--L"] = verify->add_option("--L", L, "largest L for pair-check");
  opts["--r"] = verify->add_option("--r", r, "triple product r");
  opts["--s"] = verify->add_option("--s", s, "triple product s");
  opts["--rho1"] = verify->add_option("--rho1", rho1, "signed q-power such as -q, q^2, q^(1/2), or inf");
  opts["--rho2"] = verify->add_option("--rho2", rho2, "as --rho1");
  opts["--perturb"] = verify->add_option("--perturb", perturb, "exponent=E: add 1 to the rhs at q^E");
  verify->add_option("--trunc", order, "truncation order T (0 selects the default, 60)");
  add_output_flags(verify);

  auto* suite = app.add_subcommand("suite", "run the acceptance matrix");
  std::string profile = "quick";
  suite->add_option("--profile", profile, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  add_output_flags(suite);

  auto usage = [&](const std::string& message) {
    err << "qbailey: " << message << "\n\n" << app.help();
    return 2;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  std::vector<Task> tasks;
  try {
    if (*verify) {
      VerifyRequest q;
      q.identity = identity;
      const auto& allowed = allowed_flags().at(identity);
      for (const auto& [name, opt] : opts) {
        if (opt->count() && !allowed.count(name)) {
          throw UsageError(name + " does not apply to " + identity);
        }
      }
      auto set = [&](const char* name, std::int64_t v) -> std::optional<std::int64_t> {
        return opts.at(name)->count() ? std::optional(v) : std::nullopt;
      };
      q.N = set("--N", N);
      q.k = set("--k", k);
      q.ell = set("--ell", ell);
      q.M = set("--M", M);
      q.L = set("--L", L);
      q.r = set("--r", r);
      q.s = set("--s", s);
      if (opts["--rho1"]->count()) q.rho1 = rho1;
      if (opts["--rho2"]->count()) q.rho2 = rho2;
      q.order = order;
      if (opts["--perturb"]->count()) {
        const std::string key = "exponent=";
        if (perturb.rfind(key, 0) != 0) throw UsageError("--perturb expects exponent=E");
        try {
          q.perturb = parse_exponent(perturb.substr(key.size()));
        } catch (const std::exception& e) {
          throw UsageError(std::string("--perturb: ") + e.what());
        }
      }
      tasks = plan(q);
    } else {
      for (const auto& q : suite_requests(profile)) {
        auto more = plan(q);
        std::move(more.begin(), more.end(), std::back_inserter(tasks));
      }
    }
  } catch (const UsageError& e) {
    return usage(e.what());
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "qbailey: cannot open '" << out_path << "' for writing\n";
      return 2;
    }
  }
  std::ostream& sink = out_path.empty() ? out : file;

  auto reports = run_tasks(std::move(tasks), jobs);
  emit_reports(sink, reports, *parse_format(format), {timing});
  sink.flush();
  bool all_pass = std::all_of(reports.begin(), reports.end(),
                              [](const IdentityReport& rep) { return rep.status == Status::pass; });
  return all_pass ? 0 : 1;
}

}  // namespace qbailey
