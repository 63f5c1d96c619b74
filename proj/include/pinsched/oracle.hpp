#pragma once

#include <cstdint>

#include "pinsched/core.hpp"

namespace pinsched {

// Enumeration guards. Exceeding them raises InstanceTooLarge; oracles never
// fall back to an approximate answer.
inline constexpr std::size_t kSubsetOracleMaxJobs = 30;
inline constexpr std::uint64_t kSubsetOracleMaxSubsets = 10'000'000;
inline constexpr std::size_t kPermutationOracleMaxJobs = 9;

struct OracleResult {
  SolveReport best;
  Wide optimum = 0;
};

// Number of (k-1)-subsets the subset oracle would enumerate, saturating at
// UINT64_MAX.
std::uint64_t subset_oracle_count(const Instance& instance);
bool subset_oracle_fits(const Instance& instance);

/// Minimum over every choice of k-1 jobs placed before the pivot, each side in
/// Smith order. Ties go to the lexicographically smallest schedule.
OracleResult oracle_subset(const Instance& instance);

/// Minimum over all n! permutations that put the pivot at position k. Ties go
/// to the lexicographically smallest schedule. Does not rely on Smith order.
OracleResult oracle_permutation(const Instance& instance);

}  // namespace pinsched
