#include <doctest.h>

#include <sstream>

#include "pinsched/commands.hpp"
#include "pinsched/io.hpp"
#include "support.hpp"

using namespace pinsched;
using pinsched::testing::instance_a;

namespace {

// Drops the wall-time column from each CSV line.
std::string without_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cols.push_back(cell);
    if (line.back() == ',') cols.push_back("");
    REQUIRE(cols.size() == 10);
    cols.erase(cols.begin() + 8);
    for (const auto& c : cols) out += c + ",";
    out += "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("solve dispatch") {
  const Instance a = instance_a(2);
  CHECK(solve_command(a, Algo::kDpSize, std::nullopt).objective == 11);
  const SolveReport f = solve_command(a, Algo::kFptas, Rational(1, 2));
  CHECK(f.objective == 11);
  CHECK(f.feasible);
  CHECK_THROWS_AS(solve_command(a, Algo::kFptas, std::nullopt), InvalidInput);
  CHECK_THROWS_AS(solve_command(a, Algo::kVsdp, Rational(1, 2)), InvalidInput);
  CHECK_THROWS_AS(solve_command(a, Algo::kVsdpTrim, Rational(3, 2)), InvalidInput);
  for (const auto tag : {"oracle-subset", "oracle-perm", "dp-size", "dp-weight", "vsdp", "vsdp-trim", "fptas"}) {
    const auto algo = parse_algo(tag);
    REQUIRE(algo);
    CHECK(algo_tag(*algo) == tag);
  }
  CHECK_FALSE(parse_algo("simplex"));
}

TEST_CASE("verify passes on the three-job example") {
  const VerifyReport r = verify_instance(instance_a(2), Rational(1, 2));
  CHECK(r.passed());
  CHECK(r.optimum == 11);
  CHECK(r.reference == "oracle-subset");
  CHECK(r.rows.size() == 7);
  CHECK(format_verify_table(r).find("FAIL") == std::string::npos);
}

TEST_CASE("verify names a corrupted solver") {
  auto solvers = default_solvers();
  solvers.push_back({"broken", Guarantee::kExact, [](const Instance& inst, const Rational&) {
                       return SolveReport::of(inst, Schedule{{2, 3, 1}}, "broken", 0);
                     }});
  solvers.push_back({"liar", Guarantee::kExact, [](const Instance& inst, const Rational&) {
                       SolveReport r = SolveReport::of(inst, Schedule{{2, 3, 1}}, "liar", 0);
                       r.objective = 11;
                       return r;
                     }});
  const VerifyReport r = verify_instance(instance_a(2), Rational(1, 2), solvers);
  CHECK_FALSE(r.passed());
  CHECK(r.failures() == std::vector<std::string>{"broken", "liar"});
  CHECK(format_verify_table(r).find("FAIL  broken") != std::string::npos);
}

TEST_CASE("verify skips the permutation oracle on larger instances") {
  const Instance inst = generate_instance(3, 11, 5, 20, 20);
  const VerifyReport r = verify_instance(inst, Rational(1));
  CHECK(r.passed());
  CHECK(r.reference == "oracle-subset");
  bool perm_skipped = false;
  for (const auto& row : r.rows)
    if (row.algo == "oracle-perm") perm_skipped = row.status == RowStatus::kSkipped;
  CHECK(perm_skipped);
}

TEST_CASE("verify passes on seeded random instances") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 2 + seed % 6;
    const Instance inst = generate_instance(seed, n, 1 + static_cast<int>(seed % n), 20, 20);
    const VerifyReport r = verify_instance(inst, seed % 2 ? Rational(1) : Rational(1, 2));
    CHECK(r.passed());
  }
}

TEST_CASE("ratio formatting") {
  CHECK(format_ratio(11, 11) == "1.000000");
  CHECK(format_ratio(8645, 7206) == "1.199694");
  CHECK(format_ratio(3, 2) == "1.500000");
  CHECK_THROWS_AS(format_ratio(1, 0), InvalidInput);
}

TEST_CASE("bench rows and determinism") {
  std::string manifest = R"({"instances":[)";
  for (int i = 0; i < 10; ++i) {
    if (i) manifest += ",";
    manifest += R"({"seed":)" + std::to_string(100 + i) + R"(,"n":)" + std::to_string(4 + i % 3) +
                R"(,"k":2,"max_w":20,"max_s":20,"algos":["dp-size","vsdp","oracle-perm"]})";
  }
  manifest += "]}";
  const auto entries = parse_manifest(manifest);
  REQUIRE(entries.size() == 10);
  const auto rows = run_bench(entries);
  CHECK(rows.size() == 30);
  for (const auto& row : rows) {
    REQUIRE(row.oracle_objective);
    CHECK(row.objective >= *row.oracle_objective);
    CHECK(format_ratio(row.objective, *row.oracle_objective) >= "1.000000");
  }
  const std::string csv = bench_csv(rows);
  CHECK(csv.rfind("instance_id,n,k,algorithm,epsilon,objective,oracle_objective,ratio,wall_time_ms,cells\n", 0) == 0);
  CHECK(without_wall_time(csv) == without_wall_time(bench_csv(run_bench(entries))));
}

TEST_CASE("bench expands epsilons") {
  const auto entries = parse_manifest(
      R"({"instances":[{"seed":1,"n":5,"k":3,"max_w":9,"max_s":9,"algos":["fptas","vsdp-trim","vsdp"],"epsilons":["1/2","1"]}]})");
  const auto rows = run_bench(entries);
  CHECK(rows.size() == 5);
  CHECK(rows[0].epsilon == Rational(1, 2));
  CHECK_FALSE(rows[4].epsilon);
  CHECK_THROWS_AS(parse_manifest(R"({"instances":[{"seed":1,"n":5,"k":3,"max_w":9,"max_s":9,"algos":["fptas"]}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(parse_manifest(R"({"instances":[{"seed":1}]})"), InvalidInput);
  CHECK_THROWS_AS(parse_manifest("nope"), InvalidInput);
}
