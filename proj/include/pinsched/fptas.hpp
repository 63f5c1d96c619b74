#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "pinsched/core.hpp"
#include "pinsched/exact_dp.hpp"
#include "pinsched/rational.hpp"

namespace pinsched {

/// Polynomial h(n, 1/eps) = n^a / eps^b that scales rounding factors.
struct RoundingScale {
  int n_power = 3;
  int eps_power = 2;

  Rational value(std::size_t n, const Rational& epsilon) const;
};

struct RoundingConstants {
  // Used by the size/weight sweeps: lambda = n^3 / (eps^2 * s_p).
  RoundingScale sweep{3, 2};
  // The plain one-shot rounding that motivates the sweeps: h = n^2 / eps.
  RoundingScale plain{2, 1};
};

inline constexpr RoundingConstants kRoundingConstants{};

/// One round of the approximation: the jobs still to be ordered plus the jobs
/// already pinned to the very front or back of the final schedule.
struct FptasContext {
  Instance remaining;
  Rational epsilon;
  std::size_t n_total = 0;  // size of the original instance
  std::vector<JobId> fixed_prefix;
  std::vector<JobId> fixed_suffix;

  int k() const { return remaining.k(); }
  std::int64_t total_size() const { return remaining.total_size(); }
  std::int64_t total_weight() const { return remaining.total_weight(); }
  std::int64_t open_size(const PartitionState& state) const;
  std::int64_t open_weight(const PartitionState& state) const;
  // Largest-size / largest-weight unassigned job, ties by ascending id.
  JobId largest_size(const PartitionState& state) const;
  JobId largest_weight(const PartitionState& state) const;
  // open_size <= eps * S / n and open_weight <= eps * W / n, exact.
  bool open_size_small(const PartitionState& state) const;
  bool open_weight_small(const PartitionState& state) const;
};

enum class End { kFirst, kLast };

struct Infeasible {};
struct Terminal {
  Schedule schedule;
};
struct Fixed {
  JobId job = 0;
  End end = End::kLast;
  FptasContext sub;
};
struct Continue {
  std::vector<Schedule> candidates;
};

using ProcedureOutcome = std::variant<Infeasible, Terminal, Fixed, Continue>;

struct FptasStats {
  std::uint64_t contexts = 0;
  std::uint64_t dp_calls = 0;
  std::uint64_t dp_cells = 0;
  int max_pair_depth = 0;  // nesting of the H+{v}, B+{u} recursion within a round
  std::size_t max_pinned = 0;
};

/// Terminates the context when the side counts force the answer.
ProcedureOutcome check_feasibility(const PartitionState& state, const Instance& remaining);

/// Terminal or Fixed when the unassigned jobs are small in total size or
/// weight relative to the round; Continue otherwise. Requires H and B to be
/// both empty or both non-empty.
ProcedureOutcome fix_job(const FptasContext& ctx, const PartitionState& state);

/// Rounds sizes by n^3/(eps^2 s_p) for the largest unassigned p, moving p to
/// B after each DP, then solves the residual context with U folded into H.
std::vector<Schedule> repeat_size(const FptasContext& ctx, const PartitionState& state,
                                  FptasStats* stats = nullptr);

/// Weight-side mirror of repeat_size: rounds weights by n^3/(eps^2 w_q) and
/// moves q into H until H holds k-1 jobs.
std::vector<Schedule> repeat_weight(const FptasContext& ctx, const PartitionState& state,
                                    FptasStats* stats = nullptr);

/// Best schedule of ctx.remaining under the side constraints, or nullopt if
/// none exists.
std::optional<Schedule> solve_context(const FptasContext& ctx, const PartitionState& state,
                                      FptasStats* stats = nullptr);

/// Objective at most (1 + 3 eps) times the optimum, for eps in (0, 1].
SolveReport fptas_solve(const Instance& instance, const Rational& epsilon, FptasStats* stats = nullptr);

}  // namespace pinsched
