#pragma once

// Test-only helpers and brute-force references. Nothing here calls into the
// solvers it is used to check.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "pinsched/core.hpp"

namespace pinsched::testing {

// Jobs 1:(3,1), 2:(1,2), pivot 3:(2,1).
inline Instance instance_a(int k = 2) {
  return Instance({{1, 3, 1}, {2, 1, 2}, {3, 2, 1}}, 3, k);
}

inline Instance random_instance(std::mt19937_64& rng, std::size_t n, int k, std::int64_t max_w,
                                std::int64_t max_s) {
  std::uniform_int_distribution<std::int64_t> w(1, max_w), s(1, max_s);
  std::vector<Job> jobs;
  for (std::size_t i = 1; i <= n; ++i) jobs.push_back({static_cast<JobId>(i), w(rng), s(rng)});
  // Pivot position in the id space varies so canonical re-indexing is exercised.
  std::uniform_int_distribution<std::size_t> pick(1, n);
  return Instance(std::move(jobs), static_cast<JobId>(pick(rng)), k);
}

// Per-job completion times, summed separately from core::objective.
inline Wide objective_by_completion(const Instance& inst, const Schedule& sched) {
  std::map<JobId, Wide> completion;
  for (std::size_t pos = 0; pos < sched.order.size(); ++pos) {
    Wide c = 0;
    for (std::size_t q = 0; q <= pos; ++q) c += static_cast<Wide>(inst.job(sched.order[q]).s);
    completion[sched.order[pos]] = c;
  }
  Wide total = 0;
  for (const auto& [id, c] : completion) total += static_cast<Wide>(inst.job(id).w) * c;
  return total;
}

inline Schedule random_feasible(std::mt19937_64& rng, const Instance& inst) {
  std::vector<JobId> ids;
  for (const Job& j : inst.jobs())
    if (j.id != inst.pivot_id()) ids.push_back(j.id);
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.insert(ids.begin() + (inst.k() - 1), inst.pivot_id());
  return Schedule{ids};
}

// Brute-force optimum over permutations honoring H before and B after the
// pivot with the pivot at position k. Returns kWideMax if none exists.
inline Wide constrained_optimum(const Instance& inst, const std::vector<JobId>& before,
                                const std::vector<JobId>& after) {
  std::vector<JobId> ids;
  for (const Job& j : inst.jobs()) ids.push_back(j.id);
  std::sort(ids.begin(), ids.end());
  const std::set<JobId> h(before.begin(), before.end()), b(after.begin(), after.end());
  Wide best = kWideMax;
  do {
    auto pos = std::find(ids.begin(), ids.end(), inst.pivot_id()) - ids.begin();
    if (pos != inst.k() - 1) continue;
    bool ok = true;
    for (std::size_t q = 0; q < ids.size() && ok; ++q) {
      if (static_cast<long>(q) < pos && b.contains(ids[q])) ok = false;
      if (static_cast<long>(q) > pos && h.contains(ids[q])) ok = false;
    }
    if (!ok) continue;
    Wide v = objective_by_completion(inst, Schedule{ids});
    best = std::min(best, v);
  } while (std::next_permutation(ids.begin(), ids.end()));
  return best;
}

// Smith structure on each side of the pivot.
inline bool sides_in_smith_order(const Instance& inst, const Schedule& sched) {
  for (std::size_t q = 0; q + 1 < sched.order.size(); ++q) {
    const JobId a = sched.order[q], b = sched.order[q + 1];
    if (a == inst.pivot_id() || b == inst.pivot_id()) continue;
    if (!smith_before(inst.job(a), inst.job(b))) return false;
  }
  return true;
}

}  // namespace pinsched::testing
