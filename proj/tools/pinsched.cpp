// pinsched: generate, solve, cross-check and benchmark pinned-position
// scheduling instances.
//
// Exit codes: 0 success, 1 verification failure, 2 infeasible, 3 invalid
// input or arguments.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pinsched/commands.hpp"
#include "pinsched/io.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pinsched::InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::optional<pinsched::Rational> optional_epsilon(const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    return pinsched::Rational::parse(text);
  } catch (const std::exception& e) {
    throw pinsched::InvalidInput(std::string("bad --epsilon: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-machine weighted completion time with one job pinned to position k"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::size_t n = 0;
  int k = 0;
  std::int64_t max_w = 0, max_s = 0;
  std::string out_path, in_path, algo_name, epsilon_text, manifest_path, csv_path;

  auto* gen = app.add_subcommand("gen", "Generate a reproducible random instance");
  gen->add_option("--seed", seed)->required();
  gen->add_option("--n", n)->required();
  gen->add_option("--k", k)->required();
  gen->add_option("--max-w", max_w)->required();
  gen->add_option("--max-s", max_s)->required();
  gen->add_option("--out", out_path, "Output file (stdout if omitted)");

  auto* solve = app.add_subcommand("solve", "Solve an instance with one algorithm");
  solve->add_option("--algo", algo_name, "oracle-subset|oracle-perm|dp-size|dp-weight|vsdp|vsdp-trim|fptas")
      ->required();
  solve->add_option("--epsilon", epsilon_text, "Accuracy P/Q in (0,1] for vsdp-trim and fptas");
  solve->add_option("--in", in_path)->required();
  solve->add_option("--out", out_path, "Report file (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "Run every solver and check it against the oracle");
  verify->add_option("--in", in_path)->required();
  verify->add_option("--epsilon", epsilon_text)->required();

  auto* bench = app.add_subcommand("bench", "Run a benchmark manifest and write CSV");
  bench->add_option("--manifest", manifest_path)->required();
  bench->add_option("--csv", csv_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*gen) {
      const auto inst = pinsched::generate_instance(seed, n, k, max_w, max_s);
      write_output(out_path, pinsched::emit_instance(inst, pinsched::GeneratorInfo{seed, n, k, max_w, max_s}));
      return 0;
    }
    if (*solve) {
      const auto algo = pinsched::parse_algo(algo_name);
      if (!algo) throw pinsched::InvalidInput("unknown algorithm " + algo_name);
      const auto eps = optional_epsilon(epsilon_text);
      const auto inst = pinsched::parse_instance(read_file(in_path));
      const auto report = pinsched::solve_command(inst, *algo, eps);
      write_output(out_path, pinsched::emit_report(report, eps));
      return report.feasible ? 0 : kExitInfeasible;
    }
    if (*verify) {
      const auto eps = optional_epsilon(epsilon_text);
      const auto inst = pinsched::parse_instance(read_file(in_path));
      const auto report = pinsched::verify_instance(inst, *eps);
      std::cout << pinsched::format_verify_table(report);
      if (!report.passed()) {
        for (const auto& name : report.failures()) std::cerr << "verification failed: " << name << "\n";
        return kExitVerifyFailed;
      }
      return 0;
    }
    if (*bench) {
      const auto entries = pinsched::parse_manifest(read_file(manifest_path));
      write_output(csv_path, pinsched::bench_csv(pinsched::run_bench(entries)));
      return 0;
    }
  } catch (const pinsched::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const pinsched::InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
