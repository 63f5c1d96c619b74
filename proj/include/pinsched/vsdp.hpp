#pragma once

#include <cstdint>
#include <vector>

#include "pinsched/core.hpp"
#include "pinsched/rational.hpp"

namespace pinsched {

// Exact vector-set DP guards on total weight and total size.
inline constexpr std::int64_t kVsdpExactMaxTotal = 10'000;

/// One vector [i, x, y, z] of phase j: i jobs sit before the pivot with total
/// size x, the pivot and the jobs after it weigh y, and z is the objective of
/// the partial schedule over jobs 1..j plus the pivot.
struct StateVector {
  int i = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
  Wide z = 0;
  std::int32_t parent = -1;     // index into the previous phase, -1 for the root
  bool inserted_before = false; // job j was inserted right before the pivot
};

/// Geometric boxes of ratio delta over the integers.
///
/// Boundaries are ceil(delta^t), computed exactly with big integers; for an
/// integer v, delta^t <= v holds iff ceil(delta^t) <= v, so box lookups are
/// binary searches and never touch floating point. Zero gets a box of its own.
class TrimGrid {
 public:
  TrimGrid(Rational delta, Wide max_value);

  const Rational& delta() const { return delta_; }
  // ceil(delta^t) for t = 0, 1, ... up to the first boundary above max_value.
  const std::vector<Wide>& boundaries() const { return ceil_pow_; }

  // 0 for v = 0, otherwise 1 + the t with delta^t <= v < delta^(t+1).
  std::size_t box(Wide v) const;
  // ceil(log_delta v) for 1 <= v <= max_value.
  std::size_t ceil_log(Wide v) const;

 private:
  Rational delta_;
  Wide max_value_;
  std::vector<Wide> ceil_pow_;
  std::vector<char> exact_pow_;  // delta^t is an integer
};

/// The per-phase vector sets, kept when a caller asks for them.
struct VsdpTrace {
  std::vector<Job> order;                        // phase j handles order[j-1]
  std::vector<std::vector<StateVector>> phases;  // phases[0] is VS_0
};

struct TrimOptions {
  // Use delta = 1 + eps/n instead of the default 1 + eps/(2n).
  bool coarse_delta = false;
};

Rational trim_delta(const Rational& epsilon, std::size_t n, const TrimOptions& options = {});

// Upper bound on any z value: total weight times total size.
Wide vsdp_value_bound(const Instance& instance);

// Bound on the trimmed vector-set size:
// k * (ceil(log S)+2) * (ceil(log W)+2) * (ceil(log Zmax)+2), logs base delta.
std::uint64_t trimmed_state_bound(const Instance& instance, const TrimGrid& grid);

/// Exact vector-set DP. Throws InstanceTooLarge when total weight or total
/// size exceeds kVsdpExactMaxTotal.
SolveReport vsdp_exact(const Instance& instance, VsdpTrace* trace = nullptr);

/// Vector-set DP with per-phase trimming. The reported objective is the true
/// objective of the reconstructed schedule.
SolveReport vsdp_trimmed(const Instance& instance, const Rational& epsilon, VsdpTrace* trace = nullptr,
                         const TrimOptions& options = {});

}  // namespace pinsched
