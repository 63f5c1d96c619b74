#include "pinsched/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace pinsched {

std::uint64_t subset_oracle_count(const Instance& instance) {
  const std::uint64_t m = instance.size() - 1;
  std::uint64_t r = static_cast<std::uint64_t>(instance.k() - 1);
  r = std::min(r, m - r);
  // C(m, r) built incrementally; each partial product is itself a binomial.
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c = c * (m - r + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

bool subset_oracle_fits(const Instance& instance) {
  return instance.size() <= kSubsetOracleMaxJobs && subset_oracle_count(instance) <= kSubsetOracleMaxSubsets;
}

OracleResult oracle_subset(const Instance& instance) {
  if (instance.size() > kSubsetOracleMaxJobs)
    throw InstanceTooLarge("subset oracle supports at most 30 jobs, got " + std::to_string(instance.size()));
  const std::uint64_t count = subset_oracle_count(instance);
  if (count > kSubsetOracleMaxSubsets)
    throw InstanceTooLarge("subset oracle would enumerate " + std::to_string(count) + " subsets (limit 1e7)");

  const auto& others = instance.others();
  const std::size_t m = others.size();
  const std::size_t r = static_cast<std::size_t>(instance.k() - 1);

  // Lexicographic enumeration of index combinations over the Smith-ordered
  // non-pivot jobs, so both sides come out already in Smith order.
  std::vector<std::size_t> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<char> chosen(m);

  bool have = false;
  Schedule best;
  Wide best_obj = 0;
  std::uint64_t evaluated = 0;
  Schedule cand;
  cand.order.resize(instance.size());
  while (true) {
    std::fill(chosen.begin(), chosen.end(), 0);
    for (std::size_t i : pick) chosen[i] = 1;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (chosen[i]) cand.order[pos++] = others[i].id;
    cand.order[pos++] = instance.pivot_id();
    for (std::size_t i = 0; i < m; ++i)
      if (!chosen[i]) cand.order[pos++] = others[i].id;

    Wide obj = objective(instance, cand);
    ++evaluated;
    if (!have || obj < best_obj || (obj == best_obj && cand < best)) {
      have = true;
      best = cand;
      best_obj = obj;
    }

    // Advance to the next combination.
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == m - r + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }

  OracleResult out;
  out.best = SolveReport::of(instance, std::move(best), "oracle-subset", evaluated);
  out.optimum = best_obj;
  return out;
}

OracleResult oracle_permutation(const Instance& instance) {
  if (instance.size() > kPermutationOracleMaxJobs)
    throw InstanceTooLarge("permutation oracle supports at most 9 jobs, got " + std::to_string(instance.size()));

  Schedule perm;
  for (const Job& j : instance.jobs()) perm.order.push_back(j.id);
  std::sort(perm.order.begin(), perm.order.end());

  const auto pivot_pos = static_cast<std::size_t>(instance.k() - 1);
  bool have = false;
  Schedule best;
  Wide best_obj = 0;
  std::uint64_t evaluated = 0;
  // next_permutation walks in lexicographic order, so a strict improvement
  // test keeps the lexicographically smallest optimum.
  do {
    ++evaluated;
    if (perm.order[pivot_pos] != instance.pivot_id()) continue;
    Wide obj = objective(instance, perm);
    if (!have || obj < best_obj) {
      have = true;
      best = perm;
      best_obj = obj;
    }
  } while (std::next_permutation(perm.order.begin(), perm.order.end()));

  OracleResult out;
  out.best = SolveReport::of(instance, std::move(best), "oracle-perm", evaluated);
  out.optimum = best_obj;
  return out;
}

}  // namespace pinsched
