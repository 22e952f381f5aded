// Acceptance gate: seven top-level criteria, one PASS/FAIL line each.
// Returns the number of failed criteria, so 0 means the gate is green.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "locarray/locarray.hpp"

using namespace locarray;

namespace {

std::string fixture(const std::string &name) {
  return std::string(LOCARRAY_FIXTURE_DIR) + "/" + name;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Check {
public:
  explicit Check(std::ostringstream &detail) : detail_(detail) {}

  // Records one requirement; appends a note only when it fails.
  void require(bool ok, const std::string &what) {
    if (ok) return;
    failed_ = true;
    if (!first_) detail_ << "; ";
    detail_ << what;
    first_ = false;
  }

  bool all_passed() const { return !failed_; }

private:
  std::ostringstream &detail_;
  bool failed_ = false;
  bool first_ = true;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---- criterion 1: fixture exactness ---------------------------------------

Outcome criterion_fixtures() {
  std::ostringstream detail;
  Check check(detail);
  const auto t0 = std::chrono::steady_clock::now();

  // Worked 6x4 covering array: the four documented row-sets (1-based rows
  // {1,6}, {2}, {4,5}, {3} are 0-based here).
  const TestArray ca = read_array_file(fixture("ca_n6_k4_v2.txt"));
  check.require(compute_rho(ca, {{{0, 0}, {2, 0}}}) == RowSet{0, 5},
                "rho({(1,0),(3,0)}) != {1,6}");
  check.require(compute_rho(ca, {{{0, 0}, {2, 1}}}) == RowSet{1},
                "rho({(1,0),(3,1)}) != {2}");
  check.require(compute_rho(ca, {{{0, 1}, {2, 0}}}) == RowSet{3, 4},
                "rho({(1,1),(3,0)}) != {4,5}");
  check.require(compute_rho(ca, {{{0, 1}, {2, 1}}}) == RowSet{2},
                "rho({(1,1),(3,1)}) != {3}");

  // Worked 7x4 locating array: verdict plus the documented pair.
  const TestArray la = read_array_file(fixture("la_n7_k4_v2.txt"));
  const Params p_la = make_params(4, 2, 2, 1, 1);
  check.require(verify_la(la, p_la).locating, "7x4 example not locating");
  const RowSet rho1 = compute_rho(la, {{{0, 0}, {2, 0}}});
  const RowSet rho2 = compute_rho(la, {{{1, 1}, {3, 0}}});
  check.require(rho1 == RowSet{3, 4}, "rho(T1) != {4,5}");
  check.require(rho2 == RowSet{0, 1}, "rho(T2) != {1,2}");
  check.require(sym_diff_size(rho1, rho2) == 4, "delta(T1,T2) != 4");

  // Row-optimal 7x15 covering array: exact coverage histogram.
  const TestArray ca15 = read_array_file(fixture("ca_n7_k15_v2.txt"));
  const CoverageReport cov = verify_ca(ca15, 2, 1);
  check.require(cov.covering(), "7x15 example not covering");
  check.require(cov.histogram ==
                    std::map<int, std::uint64_t>{{1, 165}, {2, 195}, {3, 60}},
                "7x15 coverage histogram mismatch");

  const double sec = seconds_since(t0);
  check.require(sec < 1.0, "fixture checks exceeded 1s");
  if (check.all_passed()) {
    std::ostringstream ok;
    ok << "rho-sets, locating verdict, and 165/195/60 histogram all exact ["
       << sec << "s]";
    return {true, ok.str()};
  }
  return {false, detail.str()};
}

// ---- criterion 2: counting exactness ---------------------------------------

Outcome criterion_counting() {
  std::ostringstream detail;
  Check check(detail);
  const auto t0 = std::chrono::steady_clock::now();

  const Params ref = make_params(20, 3, 2, 1, 1);
  check.require(interaction_count(ref) == 1710, "interaction count != 1710");
  check.require(count_pairs(ref, DSetMode::exact) == 1461195,
                "pair count != 1461195");

  const unsigned long d1[] = {81810,  122265, 176121, 246051,
                              334971, 446040, 582660};
  const char *d2[] = {"3346397145",   "7474303980",  "15509215260",
                      "30270424275",  "56102617935", "99475617780",
                      "169746046470"};
  for (int k = 10; k <= 16; ++k) {
    const mpz_class p1 = count_pairs(make_params(k, 3, 2, 1, 2), DSetMode::exact);
    const mpz_class p2 = count_pairs(make_params(k, 3, 2, 2, 2), DSetMode::exact);
    check.require(p1 == d1[k - 10],
                  "d=1 pair count mismatch at k=" + std::to_string(k));
    check.require(p2 == mpz_class(d2[k - 10]),
                  "d=2 pair count mismatch at k=" + std::to_string(k));
  }

  const double sec = seconds_since(t0);
  if (check.all_passed()) {
    std::ostringstream ok;
    ok << "1710 / 1461195 and all 14 tabulated pair counts exact [" << sec
       << "s]";
    return {true, ok.str()};
  }
  return {false, detail.str()};
}

// ---- criterion 3: oracle equivalence ---------------------------------------

Outcome criterion_oracle() {
  std::ostringstream detail;
  Check check(detail);
  const auto t0 = std::chrono::steady_clock::now();

  int compared = 0;
  for (int i = 0; i < 200; ++i) {
    Rng pick(mix_seed(0xACCE55, static_cast<std::uint64_t>(i)));
    const int k = 3 + static_cast<int>(uniform_below(pick, 4));      // 3..6
    const int v = 2 + static_cast<int>(uniform_below(pick, 2));      // 2..3
    int d = 1 + static_cast<int>(uniform_below(pick, 2));            // 1..2
    const int lambda = 1 + static_cast<int>(uniform_below(pick, 2)); // 1..2
    const int rows = 4 + static_cast<int>(uniform_below(pick, 9));   // 4..12

    // Keep each brute-force scan comfortably inside the time budget.
    if (d == 2 &&
        count_pairs(make_params(k, v, 2, 2, lambda), DSetMode::at_most) >
            10'000'000)
      d = 1;

    const Params p = make_params(k, v, 2, d, lambda);
    TestArray a(p, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < k; ++c) a.at(r, c) = random_level(pick, v);

    const auto fast = find_nonlocating(build_rowmap(a, p), lambda);
    const auto brute = brute_force_nonlocating(a, p);
    if (fast != brute) {
      check.require(false, "divergence at sweep index " + std::to_string(i) +
                               " (k=" + std::to_string(k) +
                               " v=" + std::to_string(v) +
                               " d=" + std::to_string(d) +
                               " lambda=" + std::to_string(lambda) +
                               " N=" + std::to_string(rows) + ")");
      break;
    }
    ++compared;
  }

  const double sec = seconds_since(t0);
  check.require(compared == 200, "completed only " + std::to_string(compared) +
                                     "/200 comparisons");
  check.require(sec < 60.0, "oracle sweep exceeded 60s");
  if (check.all_passed()) {
    std::ostringstream ok;
    ok << "200/200 random arrays: partition scan set-equal to the brute-force "
          "oracle, residuals included ["
       << sec << "s]";
    return {true, ok.str()};
  }
  return {false, detail.str()};
}

// ---- criteria 4 and 5: end-to-end runs -------------------------------------

struct EndToEndCase {
  int factors;
  int levels;
  int max_faults;
  int lambda;
  int max_rows;
  double max_seconds;
  bool brute;
};

bool run_end_to_end(const EndToEndCase &job, Check &check, std::string label,
                    std::ostringstream &summary) {
  const Params p =
      make_params(job.factors, job.levels, 2, job.max_faults, job.lambda);
  PipelineConfig config;
  config.seed = 1;
  config.brute_force_verify = job.brute;

  const auto t0 = std::chrono::steady_clock::now();
  const PipelineResult r =
      run_pipeline(p, config, Deadline::after(job.max_seconds));
  const double sec = seconds_since(t0);

  check.require(r.verified, label + " did not verify");
  check.require(r.status == PipelineStatus::ok, label + " status not ok");
  if (r.verified) {
    check.require(r.array.rows() <= job.max_rows,
                  label + " produced " + std::to_string(r.array.rows()) +
                      " rows > " + std::to_string(job.max_rows));
    // Independent re-verification outside the pipeline.
    check.require(verify_la(r.array, p).locating,
                  label + " artifact failed external verification");
  }
  check.require(sec <= job.max_seconds,
                label + " exceeded " + std::to_string(job.max_seconds) + "s");

  summary << label << " N=" << (r.verified ? r.array.rows() : -1) << " in "
          << sec << "s";
  return r.verified;
}

Outcome criterion_end_to_end_d1() {
  std::ostringstream detail;
  Check check(detail);
  std::ostringstream summary;

  run_end_to_end({10, 2, 1, 1, 40, 60.0, false}, check, "2^10", summary);
  summary << ", ";
  run_end_to_end({10, 3, 1, 1, 90, 120.0, false}, check, "3^10", summary);

  if (check.all_passed()) return {true, summary.str()};
  return {false, detail.str()};
}

Outcome criterion_end_to_end_d2() {
  std::ostringstream detail;
  Check check(detail);
  std::ostringstream summary;

  run_end_to_end({5, 3, 2, 1, 80, 600.0, true}, check, "3^5 lambda=1", summary);
  summary << ", ";
  run_end_to_end({5, 3, 2, 2, 110, 900.0, true}, check, "3^5 lambda=2",
                 summary);
  summary << " (brute-force verified)";

  if (check.all_passed()) return {true, summary.str()};
  return {false, detail.str()};
}

// ---- criterion 6: lll sanity band ------------------------------------------

Outcome criterion_lll_band() {
  std::ostringstream detail;
  Check check(detail);
  const auto t0 = std::chrono::steady_clock::now();

  // Published sizes for the randomized generator at k = 10..16; the band
  // allows up to double.
  const int published[] = {71, 72, 73, 74, 75, 75, 76};
  int band_ok = 0, total = 0, worst_nonloc = -1;

  for (int k = 10; k <= 16; ++k) {
    const Params p_ca = make_params(k, 3, 2, 1, 2);
    const Params p_scan = make_params(k, 3, 2, 1, 2); // d = 1 scan
    int small_nonloc_seeds = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      LllConfig cfg;
      cfg.seed = seed;
      const LllResult res = generate_lll(p_ca, cfg);
      ++total;

      const int n = res.array.rows();
      const bool in_band = n >= 18 && n <= 2 * published[k - 10];
      if (in_band) ++band_ok;
      check.require(in_band, "k=" + std::to_string(k) + " seed=" +
                                 std::to_string(seed) + " N=" +
                                 std::to_string(n) + " outside band");
      check.require(verify_ca(res.array, 2, 2).covering(),
                    "k=" + std::to_string(k) + " seed=" +
                        std::to_string(seed) + " not covering");

      const auto nonloc =
          find_nonlocating(build_rowmap(res.array, p_scan), 2);
      worst_nonloc = std::max(worst_nonloc, static_cast<int>(nonloc.size()));
      if (nonloc.size() <= 100) ++small_nonloc_seeds;
    }
    check.require(small_nonloc_seeds >= 8,
                  "k=" + std::to_string(k) + ": only " +
                      std::to_string(small_nonloc_seeds) +
                      "/10 seeds had <=100 non-locating pairs");
  }

  const double sec = seconds_since(t0);
  if (check.all_passed()) {
    std::ostringstream ok;
    ok << band_ok << "/" << total
       << " arrays in the size band, worst |NonLoc| at d=1 was "
       << worst_nonloc << " [" << sec << "s]";
    return {true, ok.str()};
  }
  return {false, detail.str()};
}

// ---- criterion 7: monotonicity and confirmed GA successes -------------------

Outcome criterion_monotonicity() {
  std::ostringstream detail;
  Check check(detail);
  const auto t0 = std::chrono::steady_clock::now();

  // Appending rows never creates new non-locating pairs.
  Rng rng(0x300D);
  int trials_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 3 + static_cast<int>(uniform_below(rng, 4));
    const int v = 2 + static_cast<int>(uniform_below(rng, 2));
    const int d = (k <= 4) ? 1 + static_cast<int>(uniform_below(rng, 2)) : 1;
    const int lambda = 1 + static_cast<int>(uniform_below(rng, 2));
    const Params p = make_params(k, v, 2, d, lambda);

    const int rows = 4 + static_cast<int>(uniform_below(rng, 8));
    TestArray a(p, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < k; ++c) a.at(r, c) = random_level(rng, v);
    const std::size_t before =
        find_nonlocating(build_rowmap(a, p), lambda).size();

    const int extra = 1 + static_cast<int>(uniform_below(rng, 3));
    for (int e = 0; e < extra; ++e) {
      std::vector<int> row(k);
      for (int c = 0; c < k; ++c) row[c] = random_level(rng, v);
      a.append_row(row);
    }
    const std::size_t after =
        find_nonlocating(build_rowmap(a, p), lambda).size();
    if (after <= before) {
      ++trials_ok;
    } else {
      check.require(false, "trial " + std::to_string(trial) + ": |NonLoc| " +
                               std::to_string(before) + " -> " +
                               std::to_string(after) + " after appending");
      break;
    }
  }
  check.require(trials_ok == 100, "only " + std::to_string(trials_ok) +
                                      "/100 monotonicity trials passed");

  // Every pipeline success must hold up under independent verification.
  int confirmed = 0;
  const Params cases[] = {make_params(4, 3, 2, 1, 1), make_params(5, 2, 2, 1, 2),
                          make_params(6, 2, 2, 1, 1), make_params(5, 3, 2, 1, 1)};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
      PipelineConfig config;
      config.seed = seed;
      const PipelineResult r = run_pipeline(cases[i], config);
      check.require(r.verified, "pipeline case " + std::to_string(i) +
                                    " seed " + std::to_string(seed) +
                                    " did not verify");
      if (r.verified) {
        const bool ok = verify_la(r.array, cases[i]).locating;
        check.require(ok, "pipeline case " + std::to_string(i) + " seed " +
                              std::to_string(seed) +
                              " not confirmed by verify_la");
        if (ok) ++confirmed;
      }
    }
  }

  const double sec = seconds_since(t0);
  if (check.all_passed()) {
    std::ostringstream ok;
    ok << "100/100 append trials monotone, " << confirmed
       << "/8 GA runs independently confirmed [" << sec << "s]";
    return {true, ok.str()};
  }
  return {false, detail.str()};
}

} // namespace

int main() {
  struct Criterion {
    const char *name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"criterion 1 (fixture exactness)", criterion_fixtures},
      {"criterion 2 (counting exactness)", criterion_counting},
      {"criterion 3 (oracle equivalence)", criterion_oracle},
      {"criterion 4 (end-to-end d=1)", criterion_end_to_end_d1},
      {"criterion 5 (end-to-end d=2)", criterion_end_to_end_d2},
      {"criterion 6 (randomized generator band)", criterion_lll_band},
      {"criterion 7 (monotonicity and confirmation)", criterion_monotonicity},
  };

  int failures = 0;
  for (const Criterion &c : criteria) {
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception &e) {
      outcome = {false, std::string("unexpected exception: ") + e.what()};
    }
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << c.name << ": "
              << outcome.detail << std::endl;
    if (!outcome.pass) ++failures;
  }
  return failures;
}
