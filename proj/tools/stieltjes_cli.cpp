// stieltjes: generate lattice instances, solve them with any model, run the
// property suites and aggregate result tables.

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "stieltjes/errors.hpp"
#include "stieltjes/instances.hpp"
#include "stieltjes/models.hpp"
#include "stieltjes/report.hpp"
#include "stieltjes/verify.hpp"

namespace fs = std::filesystem;
using namespace stieltjes;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<std::uint64_t> env_seed() {
  const char* text = std::getenv("STIELTJES_SEED");
  if (text == nullptr || *text == '\0') return std::nullopt;
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw UsageError("STIELTJES_SEED is not an unsigned integer: " + std::string(text));
  }
}

// "3", "1..5" or "1,4,7".
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const auto lo = std::stoull(text.substr(0, dots));
      const auto hi = std::stoull(text.substr(dots + 2));
      if (hi < lo) throw UsageError("empty seed range " + text);
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      std::stringstream ss(text);
      std::string part;
      while (std::getline(ss, part, ',')) seeds.push_back(std::stoull(part));
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad --seeds value '" + text + "'");
  }
  if (seeds.empty()) throw UsageError("no seeds given");
  return seeds;
}

struct GenArgs {
  Index grid = 10;
  double sigma2 = 1.0;
  std::string mu;
  std::optional<Index> k;
  std::string seeds;
  std::string out = ".";
  bool signal_csv = false;
};

int cmd_gen(const GenArgs& args) {
  if (args.grid < 4) throw UsageError("--grid must be at least 4");
  if (!(args.sigma2 > 0.0)) throw UsageError("--sigma2 must be positive");
  std::string seeds_text = args.seeds;
  if (seeds_text.empty()) seeds_text = std::to_string(env_seed().value_or(1));
  const std::vector<std::uint64_t> seeds = parse_seeds(seeds_text);
  double mu = args.sigma2 == 0.5 ? 0.25 : 0.12;
  if (args.mu == "auto") {
    GridSpec base;
    base.m = args.grid;
    base.sigma2 = args.sigma2;
    base.k = args.k.value_or(-1);
    mu = calibrate_mu(base, seeds);
    std::cerr << "calibrated mu = " << mu << '\n';
  } else if (!args.mu.empty()) {
    try {
      mu = std::stod(args.mu);
    } catch (const std::exception&) {
      throw UsageError("bad --mu value '" + args.mu + "'");
    }
    if (mu < 0.0) throw UsageError("--mu must be nonnegative");
  }
  fs::create_directories(args.out);
  for (std::uint64_t seed : seeds) {
    GridSpec spec;
    spec.m = args.grid;
    spec.sigma2 = args.sigma2;
    spec.mu = mu;
    spec.k = args.k.value_or(-1);
    if (spec.k > spec.m * spec.m) throw UsageError("--k exceeds the number of grid cells");
    spec.seed = seed;
    const Instance inst = assemble(spec);
    const fs::path path = fs::path(args.out) / (inst.meta.id + ".json");
    save_instance(inst, path);
    if (args.signal_csv) {
      write_grid_csv(true_signal(spec).x, spec.m, fs::path(args.out) / (inst.meta.id + "_signal.csv"));
      write_grid_csv(inst.meta.y, spec.m, fs::path(args.out) / (inst.meta.id + "_y.csv"));
    }
    std::cout << path.string() << '\n';
  }
  return kExitOk;
}

struct SolveArgs {
  std::string model;
  std::vector<std::string> instances;
  double tol = 1e-6;
  int max_rounds = 50;
  double round_tol = 1e-3;
  double time_limit = 600.0;
  std::string output;
  int jobs = 1;
  bool quiet = false;
};

SolveReport run_model(const Instance& inst, const SolveArgs& args) {
  ConicSettings conic;
  conic.tol = args.tol;
  if (args.model == "poly") {
    CuttingPlaneOptions options;
    options.conic = conic;
    options.max_rounds = args.max_rounds;
    options.tol_round = args.round_tol;
    options.time_limit = args.time_limit;
    return cutting_plane_solve(inst, options);
  }
  if (args.model == "pers-c") return solve_pers_c(inst, conic);
  if (args.model == "pers-b") {
    BranchAndBoundOptions options;
    options.conic = conic;
    options.time_limit = args.time_limit;
    return branch_and_bound(inst, options);
  }
  return exact_enumerate(inst);
}

int cmd_solve(const SolveArgs& args) {
  if (!(args.tol > 0.0) || !(args.round_tol > 0.0)) throw UsageError("tolerances must be positive");
  if (args.jobs < 1) throw UsageError("--jobs must be at least 1");

  std::mutex output_mutex;
  std::ofstream csv;
  if (!args.output.empty()) {
    const bool fresh = !fs::exists(args.output) || fs::file_size(args.output) == 0;
    csv.open(args.output, std::ios::app);
    if (!csv) throw std::runtime_error("cannot open " + args.output);
    if (fresh) csv << results_csv_header() << '\n' << std::flush;
  }
  if (!args.quiet) std::cout << results_csv_header() << '\n';

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < args.instances.size(); i = next++) {
      const std::string& path = args.instances[i];
      try {
        const Instance inst = load_instance(path);
        validate(inst);
        const SolveReport report = run_model(inst, args);
        if (report.status == SolveStatus::kInfeasibleLike) failed = true;
        const std::string row = results_csv_row(report);
        std::lock_guard<std::mutex> lock(output_mutex);
        if (csv.is_open()) csv << row << '\n' << std::flush;
        if (!args.quiet) std::cout << row << std::endl;
      } catch (const std::exception& e) {
        failed = true;
        std::lock_guard<std::mutex> lock(output_mutex);
        std::cerr << path << ": " << e.what() << '\n';
      }
    }
  };
  const int threads = std::min<int>(args.jobs, static_cast<int>(args.instances.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return failed ? kExitFailure : kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  Index n = 8;
  int trials = 200;
  std::optional<std::uint64_t> seed;
  std::string fault;
};

int cmd_verify(const VerifyArgs& args) {
  if (args.n < 1 || args.n > 12) throw UsageError("--n must be in [1, 12]");
  if (args.trials < 1) throw UsageError("--trials must be positive");
  VerifyOptions options;
  options.max_n = args.n;
  options.trials = args.trials;
  options.seed = args.seed ? *args.seed : env_seed().value_or(7);
  if (args.fault == "rho-sign") {
    options.fault = Fault::kRhoSign;
  } else if (!args.fault.empty()) {
    throw UsageError("unknown fault '" + args.fault + "'");
  }

  std::vector<std::string> suites;
  if (args.suite == "all") {
    suites = suite_names();
  } else {
    std::stringstream ss(args.suite);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (std::find(suite_names().begin(), suite_names().end(), part) == suite_names().end()) {
        throw UsageError("unknown suite '" + part + "'");
      }
      suites.push_back(part);
    }
  }
  for (const std::string& name : suites) {
    const SuiteResult r = run_suite(name, options);
    std::printf("%-13s %s  trials=%d checks=%ld worst=%.3g time=%.2fs\n", r.name.c_str(),
                r.passed ? "PASS" : "FAIL", r.trials, r.checks, r.worst, r.seconds);
    if (!r.passed) {
      std::cout << r.counterexample << std::endl;
      return kExitFailure;
    }
  }
  return kExitOk;
}

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string csv_out;
};

int cmd_report(const ReportArgs& args) {
  std::vector<ResultRow> rows;
  for (const std::string& path : args.inputs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    auto more = read_results_csv(in, path);
    rows.insert(rows.end(), more.begin(), more.end());
  }
  std::vector<std::string> warnings;
  const auto cells = aggregate(rows, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: missing cells for " << w << '\n';
  write_report_text(cells, std::cout);
  if (!args.csv_out.empty()) {
    std::ofstream out(args.csv_out);
    if (!out) throw std::runtime_error("cannot write " + args.csv_out);
    write_report_csv(cells, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic optimization with indicators and Stieltjes matrices"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate lattice instances");
  gen_cmd->add_option("--grid", gen.grid, "Grid side m (n = m^2)")->capture_default_str();
  gen_cmd->add_option("--sigma2", gen.sigma2, "Noise variance")->capture_default_str();
  gen_cmd->add_option("--mu", gen.mu, "Support penalty, or auto to match the signal's nonzeros (default 0.25 if sigma2 = 0.5, else 0.12)");
  gen_cmd->add_option("--k", gen.k, "Cardinality cap (default n)");
  gen_cmd->add_option("--seeds", gen.seeds, "Seeds: 3, 1..5 or 1,4,7 (default STIELTJES_SEED or 1)");
  gen_cmd->add_option("-o,--out", gen.out, "Output directory")->capture_default_str();
  gen_cmd->add_flag("--signal-csv", gen.signal_csv, "Also write the true signal and y as grid CSV");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve instances and append result rows");
  solve_cmd->add_option("--model", solve.model, "Model")
      ->required()
      ->check(CLI::IsMember({"poly", "pers-c", "pers-b", "exact"}));
  solve_cmd->add_option("--instance,instances", solve.instances, "Instance JSON files")
      ->required()
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--tol", solve.tol, "Conic solver tolerance")->capture_default_str();
  solve_cmd->add_option("--max-rounds", solve.max_rounds, "Cutting-plane rounds (poly)")
      ->capture_default_str();
  solve_cmd->add_option("--round-tol", solve.round_tol, "Relative objective change that stops poly")
      ->capture_default_str();
  solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds per instance (poly, pers-b)")
      ->capture_default_str();
  solve_cmd->add_option("-o,--output", solve.output, "Results CSV to append to");
  solve_cmd->add_option("--jobs", solve.jobs, "Instances solved concurrently")->capture_default_str();
  solve_cmd->add_flag("-q,--quiet", solve.quiet, "Do not echo rows to stdout");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run randomized property suites");
  verify_cmd->add_option("--suite", verify.suite,
                         "all, or a comma list of supermodular, validity, hull, identity, nesting")
      ->capture_default_str();
  verify_cmd->add_option("--n", verify.n, "Largest dimension")->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials, "Trials per suite")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Seed (default STIELTJES_SEED or 7)");
  verify_cmd->add_option("--inject-fault", verify.fault)->group("");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Aggregate result CSVs by (sigma2, model)");
  report_cmd->add_option("inputs", report.inputs, "Result CSV files")->check(CLI::ExistingFile);
  report_cmd->add_option("--csv", report.csv_out, "Also write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*solve_cmd) return cmd_solve(solve);
    if (*verify_cmd) return cmd_verify(verify);
    if (*report_cmd) return cmd_report(report);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
