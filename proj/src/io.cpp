#include "pinsched/io.hpp"

#include <json.hpp>

namespace pinsched {

using ordered_json = nlohmann::ordered_json;

std::int64_t draw_uniform(std::mt19937_64& rng, std::int64_t max_value) {
  if (max_value < 1) throw InvalidInput("sampling bound must be positive");
  const auto range = static_cast<std::uint64_t>(max_value);
  const std::uint64_t threshold = (0 - range) % range;
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return static_cast<std::int64_t>(x % range) + 1;
}

namespace {

std::int64_t integer_member(const nlohmann::json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) throw InvalidInput(where + ": missing \"" + name + "\"");
  if (!it->is_number_integer()) throw InvalidInput(where + ": \"" + name + "\" must be an integer");
  if (it->is_number_unsigned() && it->get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw InvalidInput(where + ": \"" + name + "\" out of range");
  return it->get<std::int64_t>();
}

}  // namespace

Instance parse_instance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("malformed document: expected an object");
  auto jobs_it = doc.find("jobs");
  if (jobs_it == doc.end() || !jobs_it->is_array()) throw InvalidInput("malformed document: \"jobs\" must be an array");

  std::vector<Job> jobs;
  jobs.reserve(jobs_it->size());
  for (std::size_t i = 0; i < jobs_it->size(); ++i) {
    const auto& entry = (*jobs_it)[i];
    const std::string where = "jobs[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw InvalidInput("malformed document: " + where + " must be an object");
    jobs.push_back({integer_member(entry, "id", where), integer_member(entry, "w", where),
                    integer_member(entry, "s", where)});
  }
  const JobId pivot = integer_member(doc, "pivot", "document");
  const std::int64_t k = integer_member(doc, "k", "document");
  // Out-of-int values map to 0 so the constructor reports "k out of range"
  // after the per-job checks.
  const int k_int = (k < 1 || k > static_cast<std::int64_t>(kMaxJobs) + 1) ? 0 : static_cast<int>(k);
  Instance inst(std::move(jobs), pivot, k_int);
  check_input_limits(inst);
  return inst;
}

std::string emit_instance(const Instance& instance, const std::optional<GeneratorInfo>& generator) {
  ordered_json doc;
  if (generator) {
    doc["generator"] = {{"prng", kPrngName},         {"sampler", kSamplerName}, {"seed", generator->seed},
                        {"n", generator->n},         {"k", generator->k},       {"max_w", generator->max_w},
                        {"max_s", generator->max_s}};
  }
  ordered_json jobs = ordered_json::array();
  for (const Job& j : instance.jobs()) jobs.push_back({{"id", j.id}, {"w", j.w}, {"s", j.s}});
  doc["jobs"] = std::move(jobs);
  doc["pivot"] = instance.pivot_id();
  doc["k"] = instance.k();
  return doc.dump() + "\n";
}

Instance generate_instance(std::uint64_t seed, std::size_t n, int k, std::int64_t max_w, std::int64_t max_s) {
  if (n < 1 || n > kMaxJobs) throw InvalidInput("n must lie in [1, 10000]");
  if (k < 1 || static_cast<std::size_t>(k) > n) throw InvalidInput("k out of range");
  if (max_w < 1 || max_w > kMaxJobValue) throw InvalidInput("max_w must lie in [1, 1e9]");
  if (max_s < 1 || max_s > kMaxJobValue) throw InvalidInput("max_s must lie in [1, 1e9]");
  std::mt19937_64 rng(seed);
  std::vector<Job> jobs;
  jobs.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    Job j;
    j.id = static_cast<JobId>(i);
    j.w = draw_uniform(rng, max_w);
    j.s = draw_uniform(rng, max_s);
    jobs.push_back(j);
  }
  return Instance(std::move(jobs), static_cast<JobId>(n), k);
}

std::string emit_report(const SolveReport& report, const std::optional<Rational>& epsilon) {
  ordered_json doc;
  doc["algo"] = report.algorithm;
  doc["feasible"] = report.feasible;
  doc["schedule"] = report.schedule.order;
  if (report.feasible)
    doc["objective"] = to_string(report.objective);
  else
    doc["objective"] = nullptr;
  if (epsilon)
    doc["epsilon"] = epsilon->str();
  else
    doc["epsilon"] = nullptr;
  return doc.dump() + "\n";
}

}  // namespace pinsched
