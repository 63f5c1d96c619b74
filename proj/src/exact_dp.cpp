#include "pinsched/exact_dp.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace pinsched {

PartitionState PartitionState::initial(const Instance& instance) {
  return with_sides(instance, {}, {});
}

PartitionState PartitionState::with_sides(const Instance& instance, std::vector<JobId> before,
                                          std::vector<JobId> after) {
  PartitionState st;
  std::unordered_set<JobId> taken(before.begin(), before.end());
  taken.insert(after.begin(), after.end());
  for (const Job& j : instance.others())
    if (!taken.contains(j.id)) st.unassigned.push_back(j.id);
  st.before = std::move(before);
  st.after = std::move(after);
  st.k = instance.k();
  st.pivot = instance.pivot_id();
  st.validate(instance);
  return st;
}

void PartitionState::validate(const Instance& instance) const {
  if (pivot != instance.pivot_id()) throw InvalidInput("partition pivot does not match instance");
  if (k != instance.k()) throw InvalidInput("partition k does not match instance");
  std::unordered_set<JobId> seen;
  for (const auto* set : {&before, &after, &unassigned}) {
    for (JobId id : *set) {
      if (id == pivot) throw InvalidInput("pivot cannot be assigned to a side");
      if (!instance.contains(id)) throw InvalidInput("partition names unknown job " + std::to_string(id));
      if (!seen.insert(id).second) throw InvalidInput("job " + std::to_string(id) + " is in two partition sets");
    }
  }
  if (seen.size() + 1 != instance.size()) throw InvalidInput("partition does not cover every job");
}

std::vector<Job> apply_rounding(const std::vector<Job>& jobs, const RoundingParams& params) {
  if (!params.lambda.positive()) throw InvalidInput("rounding factor must be positive");
  std::vector<Job> out = jobs;
  for (Job& j : out) {
    if (params.mode == RoundingMode::kSize)
      j.s = params.lambda.ceil_mul(j.s);
    else
      j.w = params.lambda.ceil_mul(j.w);
  }
  return out;
}

Instance apply_rounding(const Instance& instance, const RoundingParams& params) {
  return Instance(apply_rounding(instance.jobs(), params), instance.pivot_id(), instance.k());
}

namespace {

// Jobs in DP order with per-prefix aggregates; shared by the fast per-L
// evaluation and the full table.
struct Prepared {
  std::vector<Job> order;
  std::vector<char> side;
  std::vector<Wide> before_prefix;
  std::vector<Wide> after_prefix;
  std::vector<std::int64_t> open_prefix;
  std::vector<int> open_count_prefix;
  int e_max = 0;
  int open_total = 0;
  std::int64_t open_size = 0;  // S^ = [U]
  Wide pivot_base = 0;         // s_c + [H]
  std::int64_t pivot_weight = 0;

  std::size_t m() const { return order.size(); }
};

std::optional<Prepared> prepare(const PartitionState& state, const Instance& integral) {
  state.validate(integral);
  std::unordered_map<JobId, char> side;
  for (JobId id : state.before) side[id] = 'H';
  for (JobId id : state.after) side[id] = 'B';
  for (JobId id : state.unassigned) side[id] = 'U';

  const int e_max = state.k - 1 - static_cast<int>(state.before.size());
  const int open_total = static_cast<int>(state.unassigned.size());
  if (e_max < 0 || e_max > open_total) return std::nullopt;

  Prepared p;
  p.order = integral.others();
  const std::size_t m = p.order.size();
  p.side.resize(m);
  p.before_prefix.assign(m + 1, 0);
  p.after_prefix.assign(m + 1, 0);
  p.open_prefix.assign(m + 1, 0);
  p.open_count_prefix.assign(m + 1, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    const Job& job = p.order[j - 1];
    const char s = side.at(job.id);
    p.side[j - 1] = s;
    p.before_prefix[j] = p.before_prefix[j - 1] + (s == 'H' ? static_cast<Wide>(job.s) : 0);
    p.after_prefix[j] = p.after_prefix[j - 1] + (s == 'B' ? static_cast<Wide>(job.s) : 0);
    p.open_prefix[j] = p.open_prefix[j - 1];
    if (s == 'U' && __builtin_add_overflow(p.open_prefix[j], job.s, &p.open_prefix[j]))
      throw std::overflow_error("total unassigned size overflow");
    p.open_count_prefix[j] = p.open_count_prefix[j - 1] + (s == 'U' ? 1 : 0);
  }
  p.e_max = e_max;
  p.open_total = open_total;
  p.open_size = p.open_prefix[m];
  p.pivot_base = checked_add(static_cast<Wide>(integral.pivot().s), p.before_prefix[m]);
  p.pivot_weight = integral.pivot().w;
  return p;
}

// Largest value any (partial) objective can take: total weight times total size.
Wide objective_bound(const Instance& integral) {
  Wide w = 0, s = 0;
  for (const Job& j : integral.jobs()) {
    w = checked_add(w, static_cast<Wide>(j.w));
    s = checked_add(s, static_cast<Wide>(j.s));
  }
  return checked_mul(w, s);
}

// Evaluates w_c * C_c(L) + dp(e_max, L, m) for one L using a single in-place
// (e, E) layer. Only cells that can still reach (e_max, L) at j = m are
// touched: E stays within [L - (size of later U jobs), min(L, [U ∩ J'])] and e
// within the matching count window. Returns the type's max when unreachable.
template <typename T>
T evaluate_offset(const Prepared& p, std::int64_t L, std::vector<T>& layer, std::uint64_t& cells) {
  constexpr T kInf = std::numeric_limits<T>::max();
  const std::size_t width = static_cast<std::size_t>(L) + 1;
  const auto rows = static_cast<std::size_t>(p.e_max) + 1;
  layer.assign(rows * width, kInf);
  layer[0] = 0;
  const T pivot_completion = static_cast<T>(L) + static_cast<T>(p.pivot_base);

  for (std::size_t j = 1; j <= p.m(); ++j) {
    const Job& job = p.order[j - 1];
    const T w = static_cast<T>(job.w);
    const std::int64_t sz = job.s;
    const std::int64_t rest = p.open_size - p.open_prefix[j];
    const std::int64_t lo = std::max<std::int64_t>(0, L - rest);
    const std::int64_t hi = std::min<std::int64_t>(L, p.open_prefix[j]);
    const int elo = std::max(0, p.e_max - (p.open_total - p.open_count_prefix[j]));
    const int ehi = std::min(p.e_max, p.open_count_prefix[j]);
    if (lo > hi || elo > ehi) return kInf;
    cells += static_cast<std::uint64_t>(hi - lo + 1) * static_cast<std::uint64_t>(ehi - elo + 1);

    const T before_off = static_cast<T>(p.before_prefix[j]);
    // Completion of an after-pivot job is C_c(L) + [U ∩ J'] - E + [B ∩ J'].
    const T after_off = pivot_completion + static_cast<T>(p.open_prefix[j]) + static_cast<T>(p.after_prefix[j]);
    const char side = p.side[j - 1];

    for (int e = ehi; e >= elo; --e) {
      T* row = layer.data() + static_cast<std::size_t>(e) * width;
      const T* below = e > 0 ? layer.data() + static_cast<std::size_t>(e - 1) * width : nullptr;
      for (std::int64_t E = lo; E <= hi; ++E) {
        const T cur = row[E];
        const T te = static_cast<T>(E);
        if (side == 'H') {
          if (cur != kInf) row[E] = cur + w * (te + before_off);
        } else if (side == 'B') {
          if (cur != kInf) row[E] = cur + w * (after_off - te);
        } else {
          T best = cur != kInf ? cur + w * (after_off - te) : kInf;
          if (below != nullptr && E >= sz) {
            const T prev = below[E - sz];
            if (prev != kInf) best = std::min(best, prev + w * (te + before_off));
          }
          row[E] = best;
        }
      }
    }
  }
  const T tail = layer[static_cast<std::size_t>(p.e_max) * width + static_cast<std::size_t>(L)];
  if (tail == kInf) return kInf;
  return tail + static_cast<T>(p.pivot_weight) * pivot_completion;
}

template <typename T>
std::pair<Wide, std::int64_t> best_offset(const Prepared& p, std::uint64_t& cells) {
  std::vector<T> layer;
  T best = std::numeric_limits<T>::max();
  std::int64_t best_L = -1;
  for (std::int64_t L = 0; L <= p.open_size; ++L) {
    const T v = evaluate_offset<T>(p, L, layer, cells);
    if (v < best) {
      best = v;
      best_L = L;
    }
  }
  if (best_L < 0) return {DpTable::kInfinity, -1};
  return {static_cast<Wide>(best), best_L};
}

DpTable fill_table(const Prepared& p, std::int64_t L) {
  constexpr Wide kInf = DpTable::kInfinity;
  DpTable t;
  t.L = L;
  t.e_max = p.e_max;
  t.order = p.order;
  t.side = p.side;
  t.before_prefix = p.before_prefix;
  t.after_prefix = p.after_prefix;
  t.unassigned_prefix.assign(p.open_prefix.begin(), p.open_prefix.end());
  t.pivot_completion = static_cast<Wide>(L) + p.pivot_base;

  const std::size_t width = static_cast<std::size_t>(L) + 1;
  const std::size_t rows = static_cast<std::size_t>(p.e_max) + 1;
  const std::size_t layer = rows * width;
  t.cells.assign(layer * (p.m() + 1), kInf);
  t.cells[0] = 0;

  for (std::size_t j = 1; j <= p.m(); ++j) {
    const Job& job = p.order[j - 1];
    const Wide w = static_cast<Wide>(job.w);
    const char side = p.side[j - 1];
    const Wide* prev = t.cells.data() + (j - 1) * layer;
    Wide* cur = t.cells.data() + j * layer;
    for (int e = 0; e <= p.e_max; ++e) {
      for (std::int64_t E = 0; E <= L; ++E) {
        const Wide te = static_cast<Wide>(E);
        const Wide same = prev[static_cast<std::size_t>(e) * width + static_cast<std::size_t>(E)];
        Wide best = kInf;
        if (side == 'H') {
          if (same != kInf) best = same + w * (te + t.before_prefix[j]);
        } else {
          if (same != kInf) {
            const Wide completion =
                t.pivot_completion + (t.unassigned_prefix[j] - te) + t.after_prefix[j];
            best = same + w * completion;
          }
          if (side == 'U' && e > 0 && E >= job.s) {
            const Wide back = prev[static_cast<std::size_t>(e - 1) * width + static_cast<std::size_t>(E - job.s)];
            if (back != kInf) best = std::min(best, back + w * (te + t.before_prefix[j]));
          }
        }
        cur[static_cast<std::size_t>(e) * width + static_cast<std::size_t>(E)] = best;
      }
    }
  }
  return t;
}

}  // namespace

std::optional<DpTable> build_size_table(const PartitionState& state, const Instance& integral,
                                        std::int64_t L) {
  if (L < 0) throw InvalidInput("negative pivot offset");
  objective_bound(integral);  // overflow check for the Wide arithmetic below
  auto p = prepare(state, integral);
  if (!p) return std::nullopt;
  return fill_table(*p, L);
}

std::optional<DpSolution> solve_size_dp(const PartitionState& state, const Instance& integral) {
  auto prepared = prepare(state, integral);
  if (!prepared) return std::nullopt;
  const Prepared& p = *prepared;

  DpSolution sol;
  const Wide bound = objective_bound(integral);
  if (bound >= (Wide{1} << 125)) throw std::overflow_error("size DP objective range exceeds 128 bits");
  // Cell values stay below a small multiple of the bound, so 64 bits suffice
  // whenever the bound is below 2^61.
  auto [best, best_L] = bound < (Wide{1} << 61) ? best_offset<std::uint64_t>(p, sol.cells)
                                                : best_offset<Wide>(p, sol.cells);
  if (best_L < 0) return std::nullopt;

  // Reconstruction re-derives each branch from the full table at the best L;
  // no parent pointers are kept.
  const std::uint64_t keep = static_cast<std::uint64_t>(p.e_max + 1) *
                             static_cast<std::uint64_t>(best_L + 1) * static_cast<std::uint64_t>(p.m() + 1);
  if (keep > kMaxReconstructionCells)
    throw InstanceTooLarge("size DP table too large to reconstruct (" + std::to_string(keep) + " cells)");
  const DpTable t = fill_table(p, best_L);
  const Wide pivot_term = static_cast<Wide>(p.pivot_weight) * t.pivot_completion;
  if (t.at(p.e_max, best_L, p.m()) + pivot_term != best)
    throw std::logic_error("size DP: table disagrees with per-offset evaluation");

  std::vector<Job> before, after;
  int e = p.e_max;
  std::int64_t E = best_L;
  for (std::size_t j = p.m(); j >= 1; --j) {
    const Job& job = p.order[j - 1];
    const char side = p.side[j - 1];
    if (side == 'H') {
      before.push_back(job);
      continue;
    }
    if (side == 'B') {
      after.push_back(job);
      continue;
    }
    const Wide here = t.at(e, E, j);
    bool went_before = false;
    if (e > 0 && E >= job.s) {
      const Wide back = t.at(e - 1, E - job.s, j - 1);
      if (back != DpTable::kInfinity &&
          back + static_cast<Wide>(job.w) * (static_cast<Wide>(E) + t.before_prefix[j]) == here)
        went_before = true;
    }
    if (went_before) {
      before.push_back(job);
      --e;
      E -= job.s;
    } else {
      after.push_back(job);
    }
  }
  if (e != 0 || E != 0) throw std::logic_error("size DP: backtracking did not reach the origin");

  sol.schedule = assemble(before, integral.pivot(), after);
  sol.rounded_objective = objective(integral, sol.schedule);
  sol.best_L = best_L;
  if (sol.rounded_objective != best) throw std::logic_error("size DP: reconstructed schedule misses the optimum");
  return sol;
}

std::optional<DpSolution> f_s(const PartitionState& state, const Instance& instance,
                              const RoundingParams& params) {
  if (params.mode != RoundingMode::kSize) throw InvalidInput("f_s requires size rounding");
  return solve_size_dp(state, apply_rounding(instance, params));
}

std::pair<PartitionState, Instance> transpose(const PartitionState& state, const Instance& instance) {
  std::vector<Job> jobs = instance.jobs();
  for (Job& j : jobs) std::swap(j.w, j.s);
  const int k_star = static_cast<int>(instance.size()) + 1 - state.k;
  Instance flipped(std::move(jobs), instance.pivot_id(), k_star);
  PartitionState st;
  st.before = state.after;
  st.after = state.before;
  st.unassigned = state.unassigned;
  st.k = k_star;
  st.pivot = state.pivot;
  return {std::move(st), std::move(flipped)};
}

std::optional<DpSolution> f_w(const PartitionState& state, const Instance& instance,
                              const RoundingParams& params) {
  if (params.mode != RoundingMode::kWeight) throw InvalidInput("f_w requires weight rounding");
  state.validate(instance);
  auto [tstate, tinst] = transpose(state, instance);
  auto sol = solve_size_dp(tstate, apply_rounding(tinst, RoundingParams{params.lambda, RoundingMode::kSize}));
  if (!sol) return std::nullopt;
  // Reversal turns the transpose's id tie-break around; re-sorting each side
  // only permutes equal-density jobs, so the rounded objective is unchanged.
  std::vector<JobId> order(sol->schedule.order.rbegin(), sol->schedule.order.rend());
  const Instance rounded = apply_rounding(instance, params);
  const auto pivot_at = static_cast<std::size_t>(instance.k() - 1);
  std::vector<Job> before, after;
  for (std::size_t q = 0; q < order.size(); ++q)
    if (q != pivot_at) (q < pivot_at ? before : after).push_back(rounded.job(order[q]));
  sol->schedule = assemble(before, rounded.pivot(), after);
  return sol;
}

}  // namespace pinsched
