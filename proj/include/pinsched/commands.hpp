#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pinsched/core.hpp"
#include "pinsched/rational.hpp"

namespace pinsched {

enum class Algo { kOracleSubset, kOraclePerm, kDpSize, kDpWeight, kVsdp, kVsdpTrim, kFptas };

std::optional<Algo> parse_algo(std::string_view tag);
std::string_view algo_tag(Algo algo);
bool needs_epsilon(Algo algo);

/// Runs one solver. Epsilon is required by vsdp-trim and fptas and rejected
/// by every other algorithm (InvalidInput either way).
SolveReport solve_command(const Instance& instance, Algo algo, const std::optional<Rational>& epsilon);

// ---------------------------------------------------------------------------
// verify

enum class Guarantee { kExact, kOnePlusEps, kOnePlusThreeEps };

struct SolverEntry {
  std::string tag;
  Guarantee guarantee = Guarantee::kExact;
  std::function<SolveReport(const Instance&, const Rational&)> run;
};

std::vector<SolverEntry> default_solvers();

enum class RowStatus { kPass, kFail, kSkipped };

struct VerifyRow {
  std::string algo;
  RowStatus status = RowStatus::kPass;
  std::optional<Wide> objective;
  std::string detail;
};

struct VerifyReport {
  Wide optimum = 0;
  std::string reference;  // which oracle produced the optimum
  std::vector<VerifyRow> rows;

  bool passed() const;
  std::vector<std::string> failures() const;
};

/// Solves with every entry and checks exact solvers for equality with the
/// oracle optimum and approximations against their bound. Solvers that raise
/// InstanceTooLarge are marked skipped. Throws InstanceTooLarge when neither
/// oracle can handle the instance.
VerifyReport verify_instance(const Instance& instance, const Rational& epsilon,
                             const std::vector<SolverEntry>& solvers = default_solvers());

std::string format_verify_table(const VerifyReport& report);

// ---------------------------------------------------------------------------
// bench

struct BenchEntry {
  std::uint64_t seed = 0;
  std::size_t n = 1;
  int k = 1;
  std::int64_t max_w = 1;
  std::int64_t max_s = 1;
  std::vector<Algo> algos;
  std::vector<Rational> epsilons;
};

// {"instances":[{"seed","n","k","max_w","max_s","algos":[...],"epsilons":["1/2",...]}]}
std::vector<BenchEntry> parse_manifest(std::string_view text);

struct BenchRow {
  std::string instance_id;
  std::size_t n = 0;
  int k = 0;
  std::string algorithm;
  std::optional<Rational> epsilon;
  Wide objective = 0;
  std::optional<Wide> oracle_objective;
  double wall_ms = 0;
  std::uint64_t cells = 0;
};

// Exact ratio objective / oracle, floor to six decimals ("1.000000").
std::string format_ratio(Wide objective, Wide oracle);

/// One row per (instance, algorithm, epsilon) in manifest order; exact
/// algorithms get a single row with an empty epsilon.
std::vector<BenchRow> run_bench(const std::vector<BenchEntry>& entries);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace pinsched
