// Command-line front end: covering-array generation, the full locating-array
// pipeline, analysis/verification of existing arrays, and exact counting.
//
// Exit codes: 0 success, 2 usage or malformed input, 3 timeout or search
// budget exhausted, 4 verification failure.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "locarray/locarray.hpp"

namespace {

using namespace locarray;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerify = 4;

int default_threads() {
  if (const char *env = std::getenv("LOCARRAY_THREADS")) {
    char *end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end && *end == '\0' && n >= 1 && n <= 1024) return static_cast<int>(n);
    std::cerr << "warning: ignoring invalid LOCARRAY_THREADS value '" << env
              << "'\n";
  }
  return 1;
}

Deadline make_deadline(double timeout_seconds) {
  return timeout_seconds > 0 ? Deadline::after(timeout_seconds)
                             : Deadline::never();
}

double wall_seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

TestArray read_input_array(const std::string &path, ArrayMetadata *meta) {
  if (path == "-") return read_array(std::cin, meta);
  return read_array_file(path, meta);
}

void write_output_array(const TestArray &a, const std::string &path, bool json,
                        const ArrayMetadata &meta) {
  if (path == "-") {
    if (json)
      write_array_json(a, meta, std::cout);
    else
      write_array(a, std::cout);
    return;
  }
  if (json)
    write_array_json_file(a, meta, path);
  else
    write_array_file(a, path);
}

DSetMode parse_mode(const std::string &name) {
  if (name == "at-most") return DSetMode::at_most;
  if (name == "exact") return DSetMode::exact;
  throw CLI::ValidationError("--dset-mode", "must be 'at-most' or 'exact'");
}

struct GenCaOptions {
  int factors = 0, levels = 0, strength = 0, lambda = 1;
  std::string method = "ipo";
  std::uint64_t seed = 0;
  int initial_rows = 0;
  bool initial_rows_set = false;
  double growth_constant = 1.0;
  std::uint64_t max_resamples = 100000;
  std::string output = "-";
  bool json = false;
  double timeout = 0;
};

int run_gen_ca(const GenCaOptions &o) {
  const Params p = make_params(o.factors, o.levels, o.strength, 1, o.lambda);
  const Deadline deadline = make_deadline(o.timeout);
  const auto t0 = std::chrono::steady_clock::now();

  ArrayMetadata meta;
  meta.seed = o.seed;
  TestArray array;
  if (o.method == "ipo") {
    array = generate_ipo(p, o.seed, deadline);
    meta.generator = "ipo";
  } else {
    LllConfig cfg;
    if (o.initial_rows_set) cfg.initial_rows = o.initial_rows;
    cfg.growth_constant = o.growth_constant;
    cfg.max_resamples = o.max_resamples;
    cfg.seed = o.seed;
    LllResult res = generate_lll(p, cfg, deadline);
    array = std::move(res.array);
    meta.generator = "lll";
    meta.resamples = static_cast<long long>(res.resamples);
  }

  const CoverageReport coverage =
      verify_ca(array, p.strength, p.redundancy, deadline);
  if (!coverage.covering()) {
    std::cerr << "error: generated array failed coverage re-verification\n";
    return kExitVerify;
  }

  meta.wall_seconds = wall_seconds_since(t0);
  write_output_array(array, o.output, o.json, meta);
  std::cerr << "gen-ca: N=" << array.rows() << " k=" << p.factors
            << " v=" << p.levels << " t=" << p.strength
            << " lambda=" << p.redundancy << " method=" << o.method
            << " seed=" << o.seed;
  if (meta.resamples >= 0) std::cerr << " resamples=" << meta.resamples;
  std::cerr << " min_coverage=" << coverage.min_coverage << " ("
            << meta.wall_seconds << "s)\n";
  return kExitOk;
}

struct GenLaOptions {
  int factors = 0, levels = 0, strength = 0, max_faults = 1, lambda = 1;
  bool strict = false;
  std::string method = "ipo";
  std::uint64_t seed = 0;
  int repetitions = 1;
  int initial_rows = 0;
  bool initial_rows_set = false;
  double growth_constant = 1.0;
  std::uint64_t max_resamples = 100000;
  int population = 100, generations = 100;
  double mutation = 0.30, crossover = 0.10;
  std::uint64_t ga_budget = 64;
  bool literal_init = false;
  std::string dset_mode = "at-most";
  int threads = default_threads();
  double timeout = 0;
  bool brute_force = false;
  std::uint64_t pair_cap = kDefaultPairCap;
  std::string output = "-";
  bool json = false;
  std::string report = "text";
  std::string report_out;
  bool progress = false;
  bool progress_generations = false;
};

int run_gen_la(const GenLaOptions &o) {
  const Params p = make_params(o.factors, o.levels, o.strength, o.max_faults,
                               o.lambda, o.strict);
  for (const std::string &w : warnings(p)) std::cerr << "warning: " << w << "\n";

  PipelineConfig config;
  config.generator = (o.method == "ipo") ? Generator::ipo : Generator::lll;
  if (o.initial_rows_set) config.lll.initial_rows = o.initial_rows;
  config.lll.growth_constant = o.growth_constant;
  config.lll.max_resamples = o.max_resamples;
  config.ga.population_size = o.population;
  config.ga.generations = o.generations;
  config.ga.mutation_rate = o.mutation;
  config.ga.crossover_rate = o.crossover;
  config.seed = o.seed;
  config.repetitions = o.repetitions;
  config.mode = parse_mode(o.dset_mode);
  config.threads = o.threads;
  config.search.max_evolve_calls = o.ga_budget;
  config.search.literal_initial_height = o.literal_init;
  config.brute_force_verify = o.brute_force;
  config.pair_cap = o.pair_cap;
  if (o.progress)
    config.phase_progress = [](const SearchPhase &phase) {
      std::cerr << "phase: height=" << phase.height
                << " success=" << (phase.success ? "yes" : "no")
                << " best_fitness=" << phase.best_fitness
                << " generations=" << phase.generations_run << "\n";
    };
  if (o.progress_generations)
    config.search.on_generation = [](int gen, int best, double mean) {
      std::cerr << "generation " << gen << ": best=" << best
                << " mean=" << mean << "\n";
    };

  const auto t0 = std::chrono::steady_clock::now();
  const PipelineResult result = run_pipeline(p, config, make_deadline(o.timeout));

  std::ostream *report_stream = &std::cerr;
  std::ofstream report_file;
  if (!o.report_out.empty()) {
    report_file.open(o.report_out, std::ios::binary);
    if (!report_file)
      throw std::invalid_argument("cannot open report file " + o.report_out);
    report_stream = &report_file;
  }
  if (o.report == "json")
    *report_stream << pipeline_to_json(result).dump(2) << "\n";
  else
    *report_stream << render_pipeline_text(result);

  if (result.verified) {
    ArrayMetadata meta;
    meta.generator = generator_name(result.generator);
    meta.seed = result.seed;
    if (result.generator == Generator::lll)
      meta.resamples = static_cast<long long>(result.lll_resamples);
    meta.wall_seconds = wall_seconds_since(t0);
    write_output_array(result.array, o.output, o.json, meta);
  }

  switch (result.status) {
  case PipelineStatus::ok:
    return kExitOk;
  case PipelineStatus::timeout:
  case PipelineStatus::budget:
    return kExitBudget;
  case PipelineStatus::verify_failed:
    return kExitVerify;
  }
  return kExitOk;
}

struct AnalyzeOptions {
  std::string input;
  int max_faults = 1;
  int lambda = 0; // 0 = take from the file header
  std::string dset_mode = "at-most";
  int threads = default_threads();
  double timeout = 0;
  std::string report = "text";
};

int run_analyze(const AnalyzeOptions &o) {
  const TestArray array = read_input_array(o.input, nullptr);
  const Params &file_params = array.params();
  const Params p =
      make_params(file_params.factors, file_params.levels, file_params.strength,
                  o.max_faults, o.lambda > 0 ? o.lambda : file_params.redundancy);

  const AnalyzeResult result = analyze_array(array, p, parse_mode(o.dset_mode),
                                             o.threads, make_deadline(o.timeout));
  if (o.report == "json")
    std::cout << analyze_to_json(result).dump(2) << "\n";
  else
    std::cout << render_analyze_text(result);
  return kExitOk;
}

struct VerifyOptions {
  std::string kind;
  std::string input;
  int max_faults = 1;
  int lambda = 0;   // 0 = take from the file header
  int strength = 0; // 0 = take from the file header
  bool strict = false;
  std::string dset_mode = "at-most";
  bool brute_force = false;
  std::uint64_t pair_cap = kDefaultPairCap;
  int threads = default_threads();
  double timeout = 0;
};

int run_verify(const VerifyOptions &o) {
  const TestArray array = read_input_array(o.input, nullptr);
  const Params &file_params = array.params();
  const int t = o.strength > 0 ? o.strength : file_params.strength;
  const int lambda = o.lambda > 0 ? o.lambda : file_params.redundancy;
  const Deadline deadline = make_deadline(o.timeout);

  if (o.kind == "ca") {
    const Params p =
        make_params(file_params.factors, file_params.levels, t, 1, lambda);
    const CoverageReport report = verify_ca(array, p.strength, p.redundancy, deadline);
    if (report.covering()) {
      std::cout << "PASS: covering array, min coverage " << report.min_coverage
                << " >= " << lambda << "\n";
      return kExitOk;
    }
    const auto &[interaction, count] = report.deficient.front();
    std::cout << "FAIL: interaction " << interaction.to_string() << " covered "
              << count << " < " << lambda << " times ("
              << report.deficient.size() << " deficient total)\n";
    return kExitVerify;
  }

  const Params p = make_params(file_params.factors, file_params.levels, t,
                               o.max_faults, lambda, o.strict);
  const LaVerdict verdict =
      verify_la(array, p, parse_mode(o.dset_mode), o.brute_force, o.threads,
                o.pair_cap, deadline);
  for (const std::string &w : verdict.warnings)
    std::cerr << "warning: " << w << "\n";
  if (verdict.locating) {
    std::cout << "PASS: locating array for d=" << p.max_faults
              << " t=" << p.strength << " lambda=" << p.redundancy << "\n";
    return kExitOk;
  }
  if (verdict.coverage_witness) {
    const auto &[interaction, count] = *verdict.coverage_witness;
    std::cout << "FAIL: interaction " << interaction.to_string() << " covered "
              << count << " < " << p.redundancy << " times\n";
  }
  if (verdict.witness) {
    std::cout << "FAIL: d-sets " << verdict.witness->first.to_string() << " and "
              << verdict.witness->second.to_string()
              << " are separated by only " << verdict.witness->residual
              << " row(s), need " << p.redundancy << "\n";
  }
  return kExitVerify;
}

struct CountOptions {
  int factors = 0, levels = 0, strength = 0, max_faults = 1;
  std::string dset_mode = "exact";
};

int run_count(const CountOptions &o) {
  const Params p = make_params(o.factors, o.levels, o.strength, o.max_faults, 1);
  const DSetMode mode = parse_mode(o.dset_mode);
  std::cout << "interactions: " << interaction_count(p).get_str() << "\n";
  std::cout << "dsets: " << dset_count(p, mode).get_str() << "\n";
  std::cout << "pairs: " << count_pairs(p, mode).get_str() << "\n";
  return kExitOk;
}

void add_param_options(CLI::App *cmd, int &k, int &v, int &t) {
  cmd->add_option("-k,--factors", k, "number of factors")->required();
  cmd->add_option("-v,--levels", v, "levels per factor")->required();
  cmd->add_option("-t,--strength", t, "interaction strength")->required();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"locarray: construction and verification of locating arrays "
               "for combinatorial interaction testing"};
  app.require_subcommand(1);

  GenCaOptions gen_ca;
  CLI::App *cmd_gen_ca =
      app.add_subcommand("gen-ca", "generate a covering array");
  add_param_options(cmd_gen_ca, gen_ca.factors, gen_ca.levels, gen_ca.strength);
  cmd_gen_ca->add_option("--lambda", gen_ca.lambda, "coverage redundancy");
  cmd_gen_ca->add_option("--method", gen_ca.method, "generator")
      ->check(CLI::IsMember({"ipo", "lll"}));
  cmd_gen_ca->add_option("--seed", gen_ca.seed, "RNG seed");
  cmd_gen_ca->add_option("--initial-rows", gen_ca.initial_rows,
                         "explicit row count for lll")
      ->check(CLI::PositiveNumber);
  cmd_gen_ca->add_option("--growth-constant", gen_ca.growth_constant,
                         "multiplier in the lll row formula");
  cmd_gen_ca->add_option("--max-resamples", gen_ca.max_resamples,
                         "lll resample cap");
  cmd_gen_ca->add_option("-o,--output", gen_ca.output,
                         "output path ('-' = stdout)");
  cmd_gen_ca->add_flag("--json", gen_ca.json, "write the array as JSON");
  cmd_gen_ca->add_option("--timeout", gen_ca.timeout, "wall-clock seconds");

  GenLaOptions gen_la;
  CLI::App *cmd_gen_la =
      app.add_subcommand("gen-la", "generate a locating array (full pipeline)");
  add_param_options(cmd_gen_la, gen_la.factors, gen_la.levels, gen_la.strength);
  cmd_gen_la->add_option("-d,--max-faults", gen_la.max_faults,
                         "largest candidate faulty-set size");
  cmd_gen_la->add_option("--lambda", gen_la.lambda, "required separation");
  cmd_gen_la->add_flag("--strict", gen_la.strict,
                       "treat existence warnings as errors");
  cmd_gen_la->add_option("--method", gen_la.method, "covering-array generator")
      ->check(CLI::IsMember({"ipo", "lll"}));
  cmd_gen_la->add_option("--seed", gen_la.seed, "master RNG seed");
  cmd_gen_la->add_option("--reps", gen_la.repetitions,
                         "pipeline repetitions, best result kept")
      ->check(CLI::PositiveNumber);
  cmd_gen_la->add_option("--initial-rows", gen_la.initial_rows,
                         "explicit row count for lll")
      ->check(CLI::PositiveNumber);
  cmd_gen_la->add_option("--growth-constant", gen_la.growth_constant,
                         "multiplier in the lll row formula");
  cmd_gen_la->add_option("--max-resamples", gen_la.max_resamples,
                         "lll resample cap");
  cmd_gen_la->add_option("--pop", gen_la.population, "GA population size");
  cmd_gen_la->add_option("--gens", gen_la.generations, "GA generations per run");
  cmd_gen_la->add_option("--mut", gen_la.mutation, "GA mutation rate");
  cmd_gen_la->add_option("--cross", gen_la.crossover, "GA crossover rate");
  cmd_gen_la->add_option("--ga-budget", gen_la.ga_budget,
                         "max evolve calls across the height search");
  cmd_gen_la->add_flag("--literal-init", gen_la.literal_init,
                       "start the height search at the largest l instead of "
                       "the residual bound");
  cmd_gen_la->add_option("--dset-mode", gen_la.dset_mode,
                         "candidate-set iteration: at-most or exact d")
      ->check(CLI::IsMember({"at-most", "exact"}));
  cmd_gen_la->add_option("--threads", gen_la.threads,
                         "worker threads for the pair scan");
  cmd_gen_la->add_option("--timeout", gen_la.timeout,
                         "wall-clock seconds across both stages");
  cmd_gen_la->add_flag("--brute-force", gen_la.brute_force,
                       "also verify with the all-pairs oracle");
  cmd_gen_la->add_option("--pair-cap", gen_la.pair_cap,
                         "refuse brute-force scans above this many pairs");
  cmd_gen_la->add_option("-o,--output", gen_la.output,
                         "array output path ('-' = stdout)");
  cmd_gen_la->add_flag("--json", gen_la.json, "write the array as JSON");
  cmd_gen_la->add_option("--report", gen_la.report, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_gen_la->add_option("--report-out", gen_la.report_out,
                         "report path (default stderr)");
  cmd_gen_la->add_flag("--progress", gen_la.progress,
                       "log every height-search phase to stderr");
  cmd_gen_la->add_flag("--progress-gens", gen_la.progress_generations,
                       "log every GA generation to stderr");

  AnalyzeOptions analyze;
  CLI::App *cmd_analyze = app.add_subcommand(
      "analyze", "stage-1 census of an existing array: buckets, non-locating "
                 "pairs, timings");
  cmd_analyze->add_option("input", analyze.input, "array file ('-' = stdin)")
      ->required();
  cmd_analyze->add_option("-d,--max-faults", analyze.max_faults,
                          "largest candidate faulty-set size");
  cmd_analyze->add_option("--lambda", analyze.lambda,
                          "override the file's redundancy");
  cmd_analyze->add_option("--dset-mode", analyze.dset_mode,
                          "candidate-set iteration: at-most or exact d")
      ->check(CLI::IsMember({"at-most", "exact"}));
  cmd_analyze->add_option("--threads", analyze.threads, "worker threads");
  cmd_analyze->add_option("--timeout", analyze.timeout, "wall-clock seconds");
  cmd_analyze->add_option("--report", analyze.report, "report format")
      ->check(CLI::IsMember({"text", "json"}));

  VerifyOptions verify;
  CLI::App *cmd_verify =
      app.add_subcommand("verify", "verify an array as a CA or LA");
  cmd_verify->add_option("kind", verify.kind, "what to verify: ca or la")
      ->required()
      ->check(CLI::IsMember({"ca", "la"}));
  cmd_verify->add_option("input", verify.input, "array file ('-' = stdin)")
      ->required();
  cmd_verify->add_option("-d,--max-faults", verify.max_faults,
                         "largest candidate faulty-set size (la)");
  cmd_verify->add_option("--lambda", verify.lambda,
                         "override the file's redundancy");
  cmd_verify->add_option("-t,--strength", verify.strength,
                         "override the file's strength");
  cmd_verify->add_flag("--strict", verify.strict,
                       "treat existence warnings as errors");
  cmd_verify->add_option("--dset-mode", verify.dset_mode,
                         "candidate-set iteration: at-most or exact d")
      ->check(CLI::IsMember({"at-most", "exact"}));
  cmd_verify->add_flag("--brute-force", verify.brute_force,
                       "use the all-pairs oracle for the pair scan");
  cmd_verify->add_option("--pair-cap", verify.pair_cap,
                         "refuse brute-force scans above this many pairs");
  cmd_verify->add_option("--threads", verify.threads, "worker threads");
  cmd_verify->add_option("--timeout", verify.timeout, "wall-clock seconds");

  CountOptions count;
  CLI::App *cmd_count = app.add_subcommand(
      "count", "exact interaction / candidate-set / pair counts");
  add_param_options(cmd_count, count.factors, count.levels, count.strength);
  cmd_count->add_option("-d,--max-faults", count.max_faults,
                        "largest candidate faulty-set size");
  cmd_count->add_option("--dset-mode", count.dset_mode,
                        "candidate-set counting: at-most or exact d")
      ->check(CLI::IsMember({"at-most", "exact"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_gen_ca->parsed()) {
      gen_ca.initial_rows_set = cmd_gen_ca->count("--initial-rows") > 0;
      return run_gen_ca(gen_ca);
    }
    if (cmd_gen_la->parsed()) {
      gen_la.initial_rows_set = cmd_gen_la->count("--initial-rows") > 0;
      return run_gen_la(gen_la);
    }
    if (cmd_analyze->parsed()) return run_analyze(analyze);
    if (cmd_verify->parsed()) return run_verify(verify);
    if (cmd_count->parsed()) return run_count(count);
  } catch (const TimeoutError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const LllFailure &e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.report.deficient.empty())
      std::cerr << "  first deficient interaction: "
                << e.report.deficient.front().first.to_string() << " covered "
                << e.report.deficient.front().second << " time(s)\n";
    return kExitBudget;
  } catch (const BudgetError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ArrayFormatError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
