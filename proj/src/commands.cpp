#include "pinsched/commands.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "pinsched/exact_dp.hpp"
#include "pinsched/fptas.hpp"
#include "pinsched/io.hpp"
#include "pinsched/oracle.hpp"
#include "pinsched/vsdp.hpp"

namespace pinsched {

namespace {

constexpr std::array<std::pair<Algo, std::string_view>, 7> kAlgoTags{{
    {Algo::kOracleSubset, "oracle-subset"},
    {Algo::kOraclePerm, "oracle-perm"},
    {Algo::kDpSize, "dp-size"},
    {Algo::kDpWeight, "dp-weight"},
    {Algo::kVsdp, "vsdp"},
    {Algo::kVsdpTrim, "vsdp-trim"},
    {Algo::kFptas, "fptas"},
}};

SolveReport from_dp(const Instance& instance, const std::optional<DpSolution>& sol, std::string_view tag) {
  if (!sol) return SolveReport::infeasible(std::string(tag));
  return SolveReport::of(instance, sol->schedule, std::string(tag), sol->cells);
}

}  // namespace

std::optional<Algo> parse_algo(std::string_view tag) {
  for (const auto& [algo, name] : kAlgoTags)
    if (name == tag) return algo;
  return std::nullopt;
}

std::string_view algo_tag(Algo algo) {
  for (const auto& [a, name] : kAlgoTags)
    if (a == algo) return name;
  throw std::logic_error("unknown algorithm");
}

bool needs_epsilon(Algo algo) { return algo == Algo::kVsdpTrim || algo == Algo::kFptas; }

SolveReport solve_command(const Instance& instance, Algo algo, const std::optional<Rational>& epsilon) {
  if (needs_epsilon(algo) && !epsilon)
    throw InvalidInput(std::string(algo_tag(algo)) + " requires --epsilon");
  if (!needs_epsilon(algo) && epsilon)
    throw InvalidInput(std::string(algo_tag(algo)) + " does not take --epsilon");
  if (epsilon && (*epsilon <= Rational(0) || *epsilon > Rational(1)))
    throw InvalidInput("epsilon must lie in (0, 1]");

  const RoundingParams unit_size{Rational(1), RoundingMode::kSize};
  const RoundingParams unit_weight{Rational(1), RoundingMode::kWeight};
  switch (algo) {
    case Algo::kOracleSubset:
      return oracle_subset(instance).best;
    case Algo::kOraclePerm:
      return oracle_permutation(instance).best;
    case Algo::kDpSize:
      return from_dp(instance, f_s(PartitionState::initial(instance), instance, unit_size), "dp-size");
    case Algo::kDpWeight:
      return from_dp(instance, f_w(PartitionState::initial(instance), instance, unit_weight), "dp-weight");
    case Algo::kVsdp:
      return vsdp_exact(instance);
    case Algo::kVsdpTrim:
      return vsdp_trimmed(instance, *epsilon);
    case Algo::kFptas:
      return fptas_solve(instance, *epsilon);
  }
  throw std::logic_error("unknown algorithm");
}

std::vector<SolverEntry> default_solvers() {
  std::vector<SolverEntry> out;
  for (const auto& [algo, name] : kAlgoTags) {
    Guarantee g = Guarantee::kExact;
    if (algo == Algo::kVsdpTrim) g = Guarantee::kOnePlusEps;
    if (algo == Algo::kFptas) g = Guarantee::kOnePlusThreeEps;
    const Algo a = algo;
    out.push_back({std::string(name), g, [a](const Instance& inst, const Rational& eps) {
                     return solve_command(inst, a, needs_epsilon(a) ? std::optional<Rational>(eps) : std::nullopt);
                   }});
  }
  return out;
}

bool VerifyReport::passed() const {
  for (const auto& r : rows)
    if (r.status == RowStatus::kFail) return false;
  return true;
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const auto& r : rows)
    if (r.status == RowStatus::kFail) out.push_back(r.algo);
  return out;
}

namespace {

// objective <= (1 + factor * eps) * optimum, exact.
bool within_ratio(Wide objective, Wide optimum, const Rational& eps, std::int64_t factor) {
  const Wide den = static_cast<Wide>(eps.den());
  const Wide num = static_cast<Wide>(eps.num()) * static_cast<Wide>(factor);
  return checked_mul(objective, den) <= checked_mul(optimum, den + num);
}

}  // namespace

VerifyReport verify_instance(const Instance& instance, const Rational& epsilon,
                             const std::vector<SolverEntry>& solvers) {
  if (epsilon <= Rational(0) || epsilon > Rational(1)) throw InvalidInput("epsilon must lie in (0, 1]");
  VerifyReport report;
  if (subset_oracle_fits(instance)) {
    report.optimum = oracle_subset(instance).optimum;
    report.reference = "oracle-subset";
  } else if (instance.size() <= kPermutationOracleMaxJobs) {
    report.optimum = oracle_permutation(instance).optimum;
    report.reference = "oracle-perm";
  } else {
    throw InstanceTooLarge("instance too large for either oracle");
  }

  for (const SolverEntry& solver : solvers) {
    VerifyRow row;
    row.algo = solver.tag;
    try {
      SolveReport r = solver.run(instance, epsilon);
      row.objective = r.objective;
      if (!r.feasible) {
        row.status = RowStatus::kFail;
        row.detail = "infeasible schedule";
      } else if (objective(instance, r.schedule) != r.objective || !is_feasible(instance, r.schedule)) {
        row.status = RowStatus::kFail;
        row.detail = "reported objective does not match schedule";
      } else {
        bool ok = false;
        switch (solver.guarantee) {
          case Guarantee::kExact:
            ok = r.objective == report.optimum;
            row.detail = ok ? "= optimum" : "differs from optimum " + to_string(report.optimum);
            break;
          case Guarantee::kOnePlusEps:
            ok = within_ratio(r.objective, report.optimum, epsilon, 1);
            row.detail = ok ? "<= (1+eps) optimum" : "exceeds (1+eps) optimum";
            break;
          case Guarantee::kOnePlusThreeEps:
            ok = within_ratio(r.objective, report.optimum, epsilon, 3);
            row.detail = ok ? "<= (1+3eps) optimum" : "exceeds (1+3eps) optimum";
            break;
        }
        row.status = ok ? RowStatus::kPass : RowStatus::kFail;
      }
    } catch (const InstanceTooLarge& e) {
      row.status = RowStatus::kSkipped;
      row.detail = e.what();
    } catch (const std::exception& e) {
      row.status = RowStatus::kFail;
      row.detail = std::string("error: ") + e.what();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string format_verify_table(const VerifyReport& report) {
  std::ostringstream out;
  out << "reference " << report.reference << " optimum " << to_string(report.optimum) << "\n";
  for (const auto& r : report.rows) {
    const char* status = r.status == RowStatus::kPass ? "PASS" : r.status == RowStatus::kFail ? "FAIL" : "SKIP";
    out << status << "  " << r.algo;
    for (std::size_t i = r.algo.size(); i < 14; ++i) out << ' ';
    out << (r.objective ? to_string(*r.objective) : std::string("-")) << "  " << r.detail << "\n";
  }
  return out.str();
}

std::vector<BenchEntry> parse_manifest(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed manifest: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("instances") || !doc["instances"].is_array())
    throw InvalidInput("malformed manifest: expected {\"instances\": [...]}");
  std::vector<BenchEntry> out;
  for (const auto& e : doc["instances"]) {
    BenchEntry entry;
    try {
      entry.seed = e.at("seed").get<std::uint64_t>();
      entry.n = e.at("n").get<std::size_t>();
      entry.k = e.at("k").get<int>();
      entry.max_w = e.at("max_w").get<std::int64_t>();
      entry.max_s = e.at("max_s").get<std::int64_t>();
      for (const auto& a : e.at("algos")) {
        auto algo = parse_algo(a.get<std::string>());
        if (!algo) throw InvalidInput("unknown algorithm " + a.get<std::string>());
        entry.algos.push_back(*algo);
      }
      if (e.contains("epsilons"))
        for (const auto& eps : e["epsilons"]) entry.epsilons.push_back(Rational::parse(eps.get<std::string>()));
    } catch (const nlohmann::json::exception& ex) {
      throw InvalidInput(std::string("malformed manifest entry: ") + ex.what());
    }
    for (Algo a : entry.algos)
      if (needs_epsilon(a) && entry.epsilons.empty())
        throw InvalidInput(std::string(algo_tag(a)) + " in manifest needs \"epsilons\"");
    out.push_back(std::move(entry));
  }
  return out;
}

std::string format_ratio(Wide objective, Wide oracle) {
  if (oracle == 0) throw InvalidInput("ratio against zero optimum");
  const Wide scaled = checked_mul(objective, 1'000'000) / oracle;
  std::string frac = to_string(scaled % 1'000'000);
  frac.insert(0, 6 - frac.size(), '0');
  return to_string(scaled / 1'000'000) + "." + frac;
}

std::vector<BenchRow> run_bench(const std::vector<BenchEntry>& entries) {
  using Clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (std::size_t idx = 0; idx < entries.size(); ++idx) {
    const BenchEntry& entry = entries[idx];
    const Instance inst = generate_instance(entry.seed, entry.n, entry.k, entry.max_w, entry.max_s);
    std::optional<Wide> oracle;
    if (subset_oracle_fits(inst)) oracle = oracle_subset(inst).optimum;
    const std::string id = "i" + std::to_string(idx) + "-s" + std::to_string(entry.seed);

    for (Algo algo : entry.algos) {
      std::vector<std::optional<Rational>> eps_list;
      if (needs_epsilon(algo))
        eps_list.assign(entry.epsilons.begin(), entry.epsilons.end());
      else
        eps_list.push_back(std::nullopt);
      for (const auto& eps : eps_list) {
        const auto start = Clock::now();
        SolveReport r = solve_command(inst, algo, eps);
        const auto stop = Clock::now();
        BenchRow row;
        row.instance_id = id;
        row.n = inst.size();
        row.k = inst.k();
        row.algorithm = std::string(algo_tag(algo));
        row.epsilon = eps;
        row.objective = r.objective;
        row.oracle_objective = oracle;
        row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        row.cells = r.work;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance_id,n,k,algorithm,epsilon,objective,oracle_objective,ratio,wall_time_ms,cells\n";
  for (const auto& r : rows) {
    out << r.instance_id << ',' << r.n << ',' << r.k << ',' << r.algorithm << ','
        << (r.epsilon ? r.epsilon->str() : "") << ',' << to_string(r.objective) << ',';
    if (r.oracle_objective)
      out << to_string(*r.oracle_objective) << ',' << format_ratio(r.objective, *r.oracle_objective);
    else
      out << ',';
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
    out << ',' << ms << ',' << r.cells << '\n';
  }
  return out.str();
}

}  // namespace pinsched
