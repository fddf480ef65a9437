// Copyright 2026 The qwhit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/parse.hpp"
#include "qwhit/hhl.hpp"
#include "qwhit/kappa.hpp"
#include "qwhit/reduction.hpp"
#include "qwhit/walk.hpp"

namespace qwhit::cli {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// "-" or "" means the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw_invalid("cannot open '" + path + "' for writing");
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void emit_json(const Json& doc, const std::string& path, std::ostream& out) {
  Sink sink(path, out);
  sink.stream() << doc.dump(2) << '\n';
}

struct WalkArgs {
  int n = 0;
  std::string coin = "hadamard";
  std::string init = "basis:1:L";
};

void add_walk_options(CLI::App* sub, WalkArgs& walk) {
  sub->add_option("--n", walk.n, "Lattice size; positions 0..n, absorbing at 0 and n")->required();
  sub->add_option("--coin", walk.coin, "'hadamard' or 'a=<c>,b=<c>,theta=<rad>'")->capture_default_str();
  sub->add_option("--init", walk.init, "basis:<k>:L|R, random:<seed>, random-real:<seed>, amps:<c>,...")
      ->capture_default_str();
}

struct IterArgs {
  double eps = 1e-10;
  long max_steps = 1'000'000;
  double tol = 1e-12;
  long max_iters = 2'000'000;
};

void add_iter_options(CLI::App* sub, IterArgs& it) {
  sub->add_option("--eps", it.eps, "Residual mass at which iteration stops")->capture_default_str();
  sub->add_option("--max-steps", it.max_steps, "Step cap for iteration")->capture_default_str();
  sub->add_option("--tol", it.tol, "Relative residual target for cgnr / neumann")->capture_default_str();
  sub->add_option("--max-iters", it.max_iters, "Iteration cap for cgnr / neumann")->capture_default_str();
}

struct HhlArgs {
  int clock = 8;
  double t0 = 0.0;
  double c = 0.0;
  long shots = 0;
  std::string estimator = "hadamard";
  std::uint64_t seed = 1;
  CLI::Option* t0_opt = nullptr;
  CLI::Option* c_opt = nullptr;
};

void add_hhl_options(CLI::App* sub, HhlArgs& h) {
  sub->add_option("--clock", h.clock, "Clock qubits (1..14)")->capture_default_str();
  h.t0_opt = sub->add_option("--t0", h.t0, "Evolution time; default keeps +-sigma_max inside the clock range");
  h.c_opt = sub->add_option("--C", h.c, "Rotation constant; default 0.9 * sigma_min");
  sub->add_option("--shots", h.shots, "Shots per estimate; 0 reads amplitudes exactly")->capture_default_str();
  sub->add_option("--estimator", h.estimator, "hadamard or swap")->capture_default_str();
  sub->add_option("--seed", h.seed, "Sampling seed")->capture_default_str();
}

hhl::HhlConfig make_hhl_config(const HhlArgs& h) {
  hhl::HhlConfig cfg;
  cfg.clock_qubits = h.clock;
  if (h.t0_opt->count() > 0) cfg.evolution_time = h.t0;
  if (h.c_opt->count() > 0) cfg.rotation_constant = h.c;
  cfg.shots = h.shots;
  if (h.estimator == "hadamard") {
    cfg.estimator = hhl::Estimator::kHadamardTest;
  } else if (h.estimator == "swap") {
    cfg.estimator = hhl::Estimator::kSwapTest;
  } else {
    throw_invalid("estimator must be hadamard or swap");
  }
  cfg.seed = h.seed;
  cfg.qubit_budget = qubit_budget_from_env();
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------- hit

struct HitArgs {
  WalkArgs walk;
  IterArgs iter;
  std::string method = "direct";
  bool timing = false;
  std::string output;
};

int cmd_hit(const HitArgs& args, std::ostream& out, std::ostream& err) {
  const WalkSpec spec(args.walk.n, parse_coin(args.walk.coin));
  const InitialState init = parse_init(args.walk.init);
  init.transient_amplitudes(spec);

  Json doc;
  doc["command"] = "hit";
  doc["method"] = args.method;
  doc["n"] = spec.n();
  doc["coin"] = coin_json(spec.coin());
  doc["init"] = args.walk.init;

  const auto start = Clock::now();
  bool converged = false;
  if (args.method == "iterate") {
    const HitResult r = hitting_prob_iterative(spec, init, {args.iter.eps, args.iter.max_steps});
    doc["p0"] = r.p0;
    doc["pn"] = r.pn;
    doc["residual"] = r.residual;
    doc["steps"] = r.steps;
    doc["converged"] = r.converged;
    doc["decay_stalled"] = r.decay_stalled;
    converged = r.converged;
  } else {
    ReductionOptions options;
    options.tol = args.iter.tol;
    options.max_iters = args.iter.max_iters;
    const ReductionResult r = hitting_prob_direct(spec, init, parse_solver_kind(args.method), options);
    doc["p0"] = r.p0;
    doc["pn"] = r.pn;
    doc["residual"] = r.residual_norm;
    doc["steps"] = r.iterations;
    doc["converged"] = r.converged;
    converged = r.converged;
  }
  if (args.timing) doc["wall_seconds"] = seconds_since(start);
  emit_json(doc, args.output, out);
  if (!converged) {
    err << "qwhit: not converged: method " << args.method << " stopped before reaching its tolerance\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// -------------------------------------------------------- sweep-kappa

struct SweepArgs {
  std::string coin = "hadamard";
  int n_min = 3;
  int n_max = 60;
  double tol = 1e-6;
  long max_iters = 200'000;
  std::string inner = "auto";
  std::string eigensolver = "lanczos";
  std::string csv = "-";
  std::string summary = "-";
  int random_coins = 0;
  std::uint64_t seed = 1;
  std::string constraint = "unitary";
};

SigmaOptions make_sigma_options(const SweepArgs& args) {
  SigmaOptions options;
  options.tol = args.tol;
  options.max_iters = args.max_iters;
  if (args.inner == "auto") {
    options.inner = InnerSolve::kAuto;
  } else if (args.inner == "direct") {
    options.inner = InnerSolve::kDirect;
  } else if (args.inner == "cgnr") {
    options.inner = InnerSolve::kCgnr;
  } else {
    throw_invalid("inner must be auto, direct or cgnr");
  }
  if (args.eigensolver == "lanczos") {
    options.method = SigmaMethod::kLanczos;
  } else if (args.eigensolver == "power") {
    options.method = SigmaMethod::kPower;
  } else {
    throw_invalid("eigensolver must be lanczos or power");
  }
  return options;
}

// Fit fields plus the per-n failures of one sweep.
Json sweep_summary(const std::vector<KappaSample>& samples) {
  Json doc;
  Json failures = Json::array();
  for (const auto& s : samples) {
    if (!s.ok) failures.push_back({{"n", s.n}, {"error", s.error}});
  }
  try {
    const FitResult fit = fit_exponent(samples);
    doc["exponent"] = fit.exponent;
    doc["log_coefficient"] = fit.log_coefficient;
    doc["rms_log_residual"] = fit.rms_log_residual;
  } catch (const InvalidArgument& e) {
    doc["exponent"] = nullptr;
    doc["log_coefficient"] = nullptr;
    doc["rms_log_residual"] = nullptr;
    doc["fit_error"] = e.what();
  }
  doc["failures"] = std::move(failures);
  return doc;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  const SigmaOptions options = make_sigma_options(args);
  if (args.random_coins < 0) throw_invalid("random-coins must be >= 0");
  if (args.n_min < 3 || args.n_max < args.n_min) throw_invalid("sweep range must satisfy 3 <= n_min <= n_max");

  Json doc;
  doc["command"] = "sweep-kappa";
  doc["n_min"] = args.n_min;
  doc["n_max"] = args.n_max;
  doc["tol"] = args.tol;

  long total = 0;
  long succeeded = 0;
  const auto tally = [&](const std::vector<KappaSample>& samples) {
    for (const auto& s : samples) {
      ++total;
      if (s.ok) ++succeeded;
    }
  };

  Sink csv(args.csv, out);
  std::ostream& csv_out = csv.stream();
  if (args.random_coins == 0) {
    const Coin coin = parse_coin(args.coin);
    const auto samples = sweep_kappa(coin, args.n_min, args.n_max, options);
    tally(samples);
    write_kappa_csv(csv_out, samples);
    doc["mode"] = "single";
    doc["coin"] = coin_json(coin);
    doc.update(sweep_summary(samples));
  } else {
    const CoinConstraint constraint = parse_constraint(args.constraint);
    std::mt19937_64 rng(args.seed);
    doc["mode"] = "random-coins";
    doc["seed"] = args.seed;
    doc["constraint"] = args.constraint;
    Json coins = Json::array();
    std::optional<double> max_exponent;
    const auto old_precision = csv_out.precision(17);
    csv_out << "coin,n,kappa,sigma_max,sigma_min,iters_max,iters_min\n";
    for (int i = 0; i < args.random_coins; ++i) {
      const Coin coin = random_biased_coin(rng, constraint);
      const auto samples = sweep_kappa(coin, args.n_min, args.n_max, options);
      tally(samples);
      for (const auto& s : samples) {
        csv_out << i << ',' << s.n << ',' << s.kappa << ',' << s.sigma_max << ',' << s.sigma_min << ','
                << s.iters_max << ',' << s.iters_min << '\n';
      }
      Json entry = {{"index", i}};
      entry.update(coin_json(coin));
      entry.update(sweep_summary(samples));
      if (entry["exponent"].is_number()) {
        const double e = entry["exponent"].get<double>();
        max_exponent = max_exponent ? std::max(*max_exponent, e) : e;
      }
      coins.push_back(std::move(entry));
    }
    csv_out.precision(old_precision);
    doc["coins"] = std::move(coins);
    doc["max_exponent"] = max_exponent ? Json(*max_exponent) : Json(nullptr);
  }
  doc["samples"] = total;
  doc["succeeded"] = succeeded;
  csv_out.flush();

  emit_json(doc, args.summary, out);
  if (static_cast<double>(succeeded) < 0.9 * static_cast<double>(total)) {
    err << "qwhit: not converged: " << (total - succeeded) << " of " << total << " sweep points failed\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// ------------------------------------------------------------ compare

struct CompareArgs {
  WalkArgs walk;
  IterArgs iter;
  HhlArgs hhl;
  std::string methods = "iterate,direct,cgnr";
  bool no_timing = false;
  std::string output;
};

struct CompareRow {
  std::string method;
  double p0 = 0.0;
  double wall_seconds = 0.0;
  long iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

constexpr double kClassicalAgreement = 1e-6;
constexpr double kHhlAgreement = 0.05;

int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> kKnown = {"iterate", "direct", "cgnr", "neumann", "hhl"};
  const auto methods = split_list(args.methods);
  std::set<std::string> seen;
  for (const auto& m : methods) {
    if (kKnown.count(m) == 0) throw_invalid("unknown method '" + m + "'");
    if (!seen.insert(m).second) throw_invalid("method '" + m + "' listed twice");
  }
  if (seen.count("hhl") > 0 && args.walk.n > 5) throw_invalid("hhl budget: n ≤ 5");

  const WalkSpec spec(args.walk.n, parse_coin(args.walk.coin));
  const InitialState init = parse_init(args.walk.init);
  init.transient_amplitudes(spec);
  std::optional<hhl::HhlConfig> hhl_cfg;
  if (seen.count("hhl") > 0) hhl_cfg = make_hhl_config(args.hhl);

  std::vector<CompareRow> rows;
  for (const auto& m : methods) {
    CompareRow row;
    row.method = m;
    const auto start = Clock::now();
    if (m == "iterate") {
      const HitResult r = hitting_prob_iterative(spec, init, {args.iter.eps, args.iter.max_steps});
      row.p0 = r.p0;
      row.iterations = r.steps;
      row.residual = r.residual;
      row.converged = r.converged;
    } else if (m == "hhl") {
      const hhl::HhlOutcome r = hhl::q_hitting_prob(spec, init, *hhl_cfg);
      row.p0 = r.p_estimate;
      row.iterations = r.shots_used;
      row.residual = r.standard_error;
      row.converged = true;
      for (const auto& w : r.warnings) err << "qwhit: warning: hhl: " << w << '\n';
    } else {
      ReductionOptions options;
      options.tol = args.iter.tol;
      options.max_iters = args.iter.max_iters;
      const ReductionResult r = hitting_prob_direct(spec, init, parse_solver_kind(m), options);
      row.p0 = r.p0;
      row.iterations = r.iterations;
      row.residual = r.residual_norm;
      row.converged = r.converged;
    }
    row.wall_seconds = args.no_timing ? 0.0 : seconds_since(start);
    rows.push_back(row);
  }

  Sink sink(args.output, out);
  std::ostream& csv = sink.stream();
  const auto old_precision = csv.precision(17);
  csv << "method,p0,wall_seconds,iterations,residual,converged,max_abs_delta_p0,flag\n";
  bool all_converged = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool is_hhl = rows[i].method == "hhl";
    double worst = 0.0;
    bool flagged = false;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (i == j) continue;
      const bool other_hhl = rows[j].method == "hhl";
      if (is_hhl && other_hhl) continue;
      const double delta = std::abs(rows[i].p0 - rows[j].p0);
      const double limit = (is_hhl || other_hhl) ? kHhlAgreement : kClassicalAgreement;
      worst = std::max(worst, delta);
      if (delta > limit) {
        flagged = true;
        if (i < j) {
          err << "qwhit: warning: " << rows[i].method << " and " << rows[j].method
              << " disagree: |dp0| = " << delta << " > " << limit << '\n';
        }
      }
    }
    all_converged = all_converged && rows[i].converged;
    csv << rows[i].method << ',' << rows[i].p0 << ',' << rows[i].wall_seconds << ',' << rows[i].iterations << ','
        << rows[i].residual << ',' << (rows[i].converged ? 1 : 0) << ',' << worst << ','
        << (flagged ? "disagree" : "ok") << '\n';
  }
  csv.precision(old_precision);
  csv.flush();
  if (!all_converged) {
    err << "qwhit: not converged: at least one method stopped before reaching its tolerance\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- hhl

struct HhlCommandArgs {
  WalkArgs walk;
  HhlArgs hhl;
  bool timing = false;
  std::string output;
};

int cmd_hhl(const HhlCommandArgs& args, std::ostream& out, std::ostream& err) {
  const WalkSpec spec(args.walk.n, parse_coin(args.walk.coin));
  const InitialState init = parse_init(args.walk.init);
  init.transient_amplitudes(spec);
  const hhl::HhlConfig cfg = make_hhl_config(args.hhl);

  const auto start = Clock::now();
  const hhl::HhlOutcome r = hhl::q_hitting_prob(spec, init, cfg);
  const double wall = seconds_since(start);

  Json doc;
  doc["p_estimate"] = r.p_estimate;
  doc["mu"] = r.mu;
  doc["success_probability"] = r.success_probability;
  doc["shots"] = r.shots_used;
  doc["standard_error"] = r.standard_error;
  doc["clock_qubits"] = r.clock_qubits;
  doc["clamped_by"] = r.clamped_by;
  doc["evolution_time"] = r.evolution_time;
  doc["rotation_constant"] = r.rotation_constant;
  doc["total_qubits"] = r.total_qubits;
  doc["warnings"] = r.warnings;
  doc["config"] = {{"command", "hhl"},
                   {"n", spec.n()},
                   {"coin", coin_json(spec.coin())},
                   {"init", args.walk.init},
                   {"estimator", args.hhl.estimator},
                   {"shots_per_estimate", cfg.shots},
                   {"seed", cfg.seed},
                   {"qubit_budget", cfg.qubit_budget}};
  if (args.timing) doc["wall_seconds"] = wall;
  for (const auto& w : r.warnings) err << "qwhit: warning: " << w << '\n';
  emit_json(doc, args.output, out);
  return kExitOk;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hitting probabilities of one-dimensional coined quantum walks with two absorbing boundaries",
               "qwhit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  HitArgs hit;
  auto* hit_cmd = app.add_subcommand("hit", "Hitting probability by one method, as JSON");
  add_walk_options(hit_cmd, hit.walk);
  add_iter_options(hit_cmd, hit.iter);
  hit_cmd->add_option("--method", hit.method, "iterate, direct, cgnr or neumann")->capture_default_str();
  hit_cmd->add_flag("--timing", hit.timing, "Add wall_seconds to the output");
  hit_cmd->add_option("--output", hit.output, "Write JSON here instead of stdout");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep-kappa", "Condition-number sweep over n, CSV plus fit summary");
  sweep_cmd->add_option("--coin", sweep.coin, "Coin for single-sweep mode")->capture_default_str();
  sweep_cmd->add_option("--n-min", sweep.n_min)->capture_default_str();
  sweep_cmd->add_option("--n-max", sweep.n_max)->capture_default_str();
  sweep_cmd->add_option("--tol", sweep.tol, "Relative tolerance of the singular value estimates")
      ->capture_default_str();
  sweep_cmd->add_option("--max-iters", sweep.max_iters, "Operator applications per estimate")
      ->capture_default_str();
  sweep_cmd->add_option("--inner", sweep.inner, "auto, direct or cgnr solves for sigma_min")
      ->capture_default_str();
  sweep_cmd->add_option("--eigensolver", sweep.eigensolver, "lanczos or power")->capture_default_str();
  sweep_cmd->add_option("--csv", sweep.csv, "CSV destination, '-' for stdout")->capture_default_str();
  sweep_cmd->add_option("--summary", sweep.summary, "JSON summary destination, '-' for stdout")
      ->capture_default_str();
  sweep_cmd->add_option("--random-coins", sweep.random_coins, "Sweep this many seeded random coins with |a| >= 1/sqrt(2)")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Seed for the random coins")->capture_default_str();
  sweep_cmd->add_option("--constraint", sweep.constraint, "unitary or modulus-sum")->capture_default_str();

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Run several methods on one instance, CSV table");
  add_walk_options(cmp_cmd, cmp.walk);
  add_iter_options(cmp_cmd, cmp.iter);
  add_hhl_options(cmp_cmd, cmp.hhl);
  cmp_cmd->add_option("--methods", cmp.methods, "Subset of iterate,direct,cgnr,neumann,hhl")
      ->capture_default_str();
  cmp_cmd->add_flag("--no-timing", cmp.no_timing, "Report wall_seconds as 0 for reproducible output");
  cmp_cmd->add_option("--output", cmp.output, "Write CSV here instead of stdout");

  HhlCommandArgs hq;
  auto* hhl_cmd = app.add_subcommand("hhl", "Simulated quantum linear-solver route, as JSON");
  add_walk_options(hhl_cmd, hq.walk);
  add_hhl_options(hhl_cmd, hq.hhl);
  hhl_cmd->add_flag("--timing", hq.timing, "Add wall_seconds to the output");
  hhl_cmd->add_option("--output", hq.output, "Write JSON here instead of stdout");

  try {
    apply_config_file(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  } catch (const Error& e) {
    err << "qwhit: error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (hit_cmd->parsed()) return cmd_hit(hit, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, out, err);
    if (cmp_cmd->parsed()) return cmd_compare(cmp, out, err);
    return cmd_hhl(hq, out, err);
  } catch (const InvalidArgument& e) {
    err << "qwhit: error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const BudgetExceeded& e) {
    err << "qwhit: error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    err << "qwhit: numerical failure: " << e.what() << '\n';
    return kExitNotConverged;
  }
}

}  // namespace qwhit::cli
