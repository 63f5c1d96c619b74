#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pinsched/core.hpp"
#include "pinsched/rational.hpp"

namespace pinsched {

/// Side assignment of the non-pivot jobs: `before` (H) must precede the pivot,
/// `after` (B) must follow it, `unassigned` (U) is still open.
struct PartitionState {
  std::vector<JobId> before;
  std::vector<JobId> after;
  std::vector<JobId> unassigned;
  int k = 1;
  JobId pivot = 0;

  // H = B = {} and every non-pivot job unassigned.
  static PartitionState initial(const Instance& instance);
  // U is everything not in `before`, `after` or the pivot.
  static PartitionState with_sides(const Instance& instance, std::vector<JobId> before,
                                   std::vector<JobId> after);

  // Throws InvalidInput unless the sets partition the non-pivot jobs and
  // k/pivot agree with the instance.
  void validate(const Instance& instance) const;
};

enum class RoundingMode { kSize, kWeight };

struct RoundingParams {
  Rational lambda{1};
  RoundingMode mode = RoundingMode::kSize;
};

/// ceil(lambda * s) in size mode or ceil(lambda * w) in weight mode, exact.
std::vector<Job> apply_rounding(const std::vector<Job>& jobs, const RoundingParams& params);
Instance apply_rounding(const Instance& instance, const RoundingParams& params);

/// The size-indexed table for one guessed pivot offset L (the total size of
/// unassigned jobs placed before the pivot).
///
/// Jobs are indexed 1..m in Smith order of the (already integral) instance;
/// layer 0 is the empty prefix. Entry (e, E, j) is the best weighted
/// completion time of jobs 1..j when exactly e unassigned jobs of total size E
/// among them go before the pivot. The e dimension stops at k-1-|H|, the only
/// range the final lookup reads; E stops at L.
struct DpTable {
  static constexpr Wide kInfinity = kWideMax;

  std::int64_t L = 0;
  int e_max = 0;
  std::vector<Job> order;                 // index j-1 holds job j
  std::vector<char> side;                 // 'H', 'B' or 'U' per job index
  std::vector<Wide> before_prefix;        // [H ∩ {1..j}], size m+1
  std::vector<Wide> after_prefix;         // [B ∩ {1..j}]
  std::vector<Wide> unassigned_prefix;    // [U ∩ {1..j}]
  Wide pivot_completion = 0;              // C_c(L) = L + s_c + [H]
  std::vector<Wide> cells;

  std::size_t jobs() const { return order.size(); }
  Wide at(int e, std::int64_t E, std::size_t j) const {
    return cells[(j * static_cast<std::size_t>(e_max + 1) + static_cast<std::size_t>(e)) *
                     static_cast<std::size_t>(L + 1) +
                 static_cast<std::size_t>(E)];
  }
};

// Fills the full table for one L without any pruning. `integral` carries the
// sizes the recurrence uses (already rounded). Returns nullopt if the state is
// infeasible (|H| > k-1 or |H| + |U| < k-1).
std::optional<DpTable> build_size_table(const PartitionState& state, const Instance& integral,
                                        std::int64_t L);

struct DpSolution {
  Schedule schedule;
  Wide rounded_objective = 0;  // objective on the instance the DP saw
  std::int64_t best_L = 0;
  std::uint64_t cells = 0;     // table cells evaluated across all L
};

// Upper bound on the number of cells of the table kept for reconstruction.
inline constexpr std::uint64_t kMaxReconstructionCells = 30'000'000;

/// Exact size-indexed DP on the sizes of `integral` as given.
std::optional<DpSolution> solve_size_dp(const PartitionState& state, const Instance& integral);

/// Size-rounded DP: rounds every size to ceil(lambda * s), then runs the exact
/// DP. The schedule minimizes the objective under rounded sizes and original
/// weights, with H before and B after the pivot.
std::optional<DpSolution> f_s(const PartitionState& state, const Instance& instance,
                              const RoundingParams& params);

/// Swaps weight and size of every job, swaps H and B, and maps k to n+1-k.
std::pair<PartitionState, Instance> transpose(const PartitionState& state, const Instance& instance);

/// Weight-rounded DP via the transposed instance: the reverse of the
/// size-rounded solution on the transpose.
std::optional<DpSolution> f_w(const PartitionState& state, const Instance& instance,
                              const RoundingParams& params);

}  // namespace pinsched
