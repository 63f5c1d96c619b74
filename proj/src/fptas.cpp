#include "pinsched/fptas.hpp"

#include <algorithm>
#include <unordered_set>

#include "pinsched/oracle.hpp"

namespace pinsched {

Rational RoundingScale::value(std::size_t n, const Rational& epsilon) const {
  Rational h(1);
  for (int i = 0; i < n_power; ++i) h = h * Rational(static_cast<std::int64_t>(n));
  for (int i = 0; i < eps_power; ++i) h = h / epsilon;
  return h;
}

std::int64_t FptasContext::open_size(const PartitionState& state) const {
  std::int64_t t = 0;
  for (JobId id : state.unassigned) t += remaining.job(id).s;
  return t;
}

std::int64_t FptasContext::open_weight(const PartitionState& state) const {
  std::int64_t t = 0;
  for (JobId id : state.unassigned) t += remaining.job(id).w;
  return t;
}

namespace {

template <typename Key>
JobId argmax_unassigned(const Instance& inst, const PartitionState& state, Key key) {
  if (state.unassigned.empty()) throw std::logic_error("no unassigned job");
  JobId best = state.unassigned.front();
  for (JobId id : state.unassigned) {
    const auto a = key(inst.job(id));
    const auto b = key(inst.job(best));
    if (a > b || (a == b && id < best)) best = id;
  }
  return best;
}

// lhs * n <= eps * rhs, exact.
bool within_fraction(std::int64_t lhs, std::int64_t rhs, std::size_t n, const Rational& eps) {
  const __int128 left = static_cast<__int128>(lhs) * static_cast<__int128>(n) * eps.den();
  const __int128 right = static_cast<__int128>(eps.num()) * rhs;
  return left <= right;
}

std::vector<Job> jobs_of(const Instance& inst, const std::vector<JobId>& ids) {
  std::vector<Job> out;
  out.reserve(ids.size());
  for (JobId id : ids) out.push_back(inst.job(id));
  return out;
}

std::vector<JobId> without_ids(const std::vector<JobId>& from, const std::vector<JobId>& drop) {
  std::unordered_set<JobId> gone(drop.begin(), drop.end());
  std::vector<JobId> out;
  for (JobId id : from)
    if (!gone.contains(id)) out.push_back(id);
  return out;
}

std::vector<JobId> concat(std::vector<JobId> a, const std::vector<JobId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

PartitionState make_state(const FptasContext& ctx, std::vector<JobId> before, std::vector<JobId> after,
                          std::vector<JobId> open) {
  PartitionState st;
  st.before = std::move(before);
  st.after = std::move(after);
  st.unassigned = std::move(open);
  st.k = ctx.k();
  st.pivot = ctx.remaining.pivot_id();
  return st;
}

// First `count` unassigned jobs under `ranks_first` go before the pivot along
// with H; the rest join B.
template <typename Less>
Schedule split_by(const Instance& inst, const PartitionState& state, std::size_t count, Less ranks_first) {
  std::vector<Job> open = jobs_of(inst, state.unassigned);
  std::sort(open.begin(), open.end(), ranks_first);
  std::vector<Job> before = jobs_of(inst, state.before);
  std::vector<Job> after = jobs_of(inst, state.after);
  for (std::size_t i = 0; i < open.size(); ++i) (i < count ? before : after).push_back(open[i]);
  return assemble(before, inst.pivot(), after);
}

bool better(const Instance& inst, const Schedule& a, const Schedule& b) {
  const Wide oa = objective(inst, a);
  const Wide ob = objective(inst, b);
  return oa < ob || (oa == ob && a < b);
}

std::optional<Schedule> solve_rec(const FptasContext& ctx, const PartitionState& state, FptasStats* stats,
                                  int depth);

}  // namespace

JobId FptasContext::largest_size(const PartitionState& state) const {
  return argmax_unassigned(remaining, state, [](const Job& j) { return j.s; });
}

JobId FptasContext::largest_weight(const PartitionState& state) const {
  return argmax_unassigned(remaining, state, [](const Job& j) { return j.w; });
}

bool FptasContext::open_size_small(const PartitionState& state) const {
  return within_fraction(open_size(state), total_size(), n_total, epsilon);
}

bool FptasContext::open_weight_small(const PartitionState& state) const {
  return within_fraction(open_weight(state), total_weight(), n_total, epsilon);
}

ProcedureOutcome check_feasibility(const PartitionState& state, const Instance& remaining) {
  const std::size_t need = static_cast<std::size_t>(state.k - 1);
  const std::size_t h = state.before.size();
  const std::size_t u = state.unassigned.size();
  if (h > need || h + u < need) return Infeasible{};
  if (h == need) {
    return Terminal{assemble(jobs_of(remaining, state.before), remaining.pivot(),
                             jobs_of(remaining, concat(state.after, state.unassigned)))};
  }
  if (h + u == need) {
    return Terminal{assemble(jobs_of(remaining, concat(state.before, state.unassigned)), remaining.pivot(),
                             jobs_of(remaining, state.after))};
  }
  return Continue{};
}

ProcedureOutcome fix_job(const FptasContext& ctx, const PartitionState& state) {
  if (state.before.empty() != state.after.empty())
    throw InvalidInput("fix_job requires H and B to be both empty or both non-empty");
  const Instance& inst = ctx.remaining;
  const bool size_small = ctx.open_size_small(state);
  const bool weight_small = ctx.open_weight_small(state);
  const std::size_t need = static_cast<std::size_t>(ctx.k() - 1) - state.before.size();

  if (size_small && state.after.empty()) {
    return Terminal{split_by(inst, state, need, [](const Job& a, const Job& b) {
      return a.w != b.w ? a.w > b.w : a.id < b.id;
    })};
  }
  if (weight_small && state.before.empty()) {
    return Terminal{split_by(inst, state, need, [](const Job& a, const Job& b) {
      return a.s != b.s ? a.s < b.s : a.id < b.id;
    })};
  }
  if (size_small && !state.after.empty()) {
    // Least dense job of B goes last; ties by ascending id.
    JobId pick = state.after.front();
    for (JobId id : state.after) {
      const auto c = compare_density(inst.job(id), inst.job(pick));
      if (c < 0 || (c == 0 && id < pick)) pick = id;
    }
    FptasContext sub{inst.without(pick, ctx.k()), ctx.epsilon, ctx.n_total, ctx.fixed_prefix, ctx.fixed_suffix};
    sub.fixed_suffix.insert(sub.fixed_suffix.begin(), pick);
    return Fixed{pick, End::kLast, std::move(sub)};
  }
  if (weight_small && !state.before.empty()) {
    // Densest job of H goes first.
    JobId pick = state.before.front();
    for (JobId id : state.before) {
      const auto c = compare_density(inst.job(id), inst.job(pick));
      if (c > 0 || (c == 0 && id < pick)) pick = id;
    }
    FptasContext sub{inst.without(pick, ctx.k() - 1), ctx.epsilon, ctx.n_total, ctx.fixed_prefix,
                     ctx.fixed_suffix};
    sub.fixed_prefix.push_back(pick);
    return Fixed{pick, End::kFirst, std::move(sub)};
  }
  return Continue{};
}

namespace {

std::vector<Schedule> repeat_size_rec(const FptasContext& ctx, const PartitionState& state, FptasStats* stats,
                                      int depth) {
  std::vector<Schedule> out;
  PartitionState st = state;
  const auto k = static_cast<std::size_t>(ctx.k());
  const Rational h = kRoundingConstants.sweep.value(ctx.n_total, ctx.epsilon);
  while (st.unassigned.size() + st.before.size() >= k) {
    const JobId p = ctx.largest_size(st);
    const RoundingParams params{h / Rational(ctx.remaining.job(p).s), RoundingMode::kSize};
    auto sol = f_s(st, ctx.remaining, params);
    if (stats) {
      ++stats->dp_calls;
      if (sol) stats->dp_cells += sol->cells;
    }
    if (sol) out.push_back(std::move(sol->schedule));
    st.after.push_back(p);
    st.unassigned = without_ids(st.unassigned, {p});
  }
  auto rest = solve_rec(ctx, make_state(ctx, concat(st.before, st.unassigned), st.after, {}), stats, depth);
  if (rest) out.push_back(std::move(*rest));
  return out;
}

std::vector<Schedule> repeat_weight_rec(const FptasContext& ctx, const PartitionState& state, FptasStats* stats,
                                        int depth) {
  std::vector<Schedule> out;
  PartitionState st = state;
  const auto need = static_cast<std::size_t>(ctx.k() - 1);
  const Rational h = kRoundingConstants.sweep.value(ctx.n_total, ctx.epsilon);
  while (st.before.size() < need) {
    const JobId q = ctx.largest_weight(st);
    const RoundingParams params{h / Rational(ctx.remaining.job(q).w), RoundingMode::kWeight};
    auto sol = f_w(st, ctx.remaining, params);
    if (stats) {
      ++stats->dp_calls;
      if (sol) stats->dp_cells += sol->cells;
    }
    if (sol) out.push_back(std::move(sol->schedule));
    st.before.push_back(q);
    st.unassigned = without_ids(st.unassigned, {q});
  }
  auto rest = solve_rec(ctx, make_state(ctx, st.before, concat(st.after, st.unassigned), {}), stats, depth);
  if (rest) out.push_back(std::move(*rest));
  return out;
}

std::optional<Schedule> solve_rec(const FptasContext& ctx, const PartitionState& state, FptasStats* stats,
                                  int depth) {
  state.validate(ctx.remaining);
  if (stats) {
    ++stats->contexts;
    stats->max_pair_depth = std::max(stats->max_pair_depth, depth);
    stats->max_pinned = std::max(stats->max_pinned, ctx.fixed_prefix.size() + ctx.fixed_suffix.size());
  }
  const Instance& inst = ctx.remaining;

  ProcedureOutcome feas = check_feasibility(state, inst);
  if (std::holds_alternative<Infeasible>(feas)) return std::nullopt;
  if (auto* t = std::get_if<Terminal>(&feas)) return std::move(t->schedule);

  ProcedureOutcome fixed = fix_job(ctx, state);
  if (auto* t = std::get_if<Terminal>(&fixed)) return std::move(t->schedule);
  if (auto* f = std::get_if<Fixed>(&fixed)) {
    auto sub = solve_rec(f->sub, PartitionState::initial(f->sub.remaining), stats, 0);
    if (!sub) return std::nullopt;
    Schedule out;
    if (f->end == End::kFirst) out.order.push_back(f->job);
    out.order.insert(out.order.end(), sub->order.begin(), sub->order.end());
    if (f->end == End::kLast) out.order.push_back(f->job);
    return out;
  }

  // Arbitrary feasible baseline: the Smith-first unassigned jobs fill H up to k-1.
  std::vector<Schedule> candidates;
  {
    std::vector<Job> open = smith_sort(jobs_of(inst, state.unassigned));
    std::vector<Job> before = jobs_of(inst, state.before);
    std::vector<Job> after = jobs_of(inst, state.after);
    const std::size_t need = static_cast<std::size_t>(ctx.k() - 1) - state.before.size();
    for (std::size_t i = 0; i < open.size(); ++i) (i < need ? before : after).push_back(open[i]);
    candidates.push_back(assemble(before, inst.pivot(), after));
  }
  for (auto& s : repeat_size_rec(ctx, state, stats, depth)) candidates.push_back(std::move(s));
  for (auto& s : repeat_weight_rec(ctx, state, stats, depth)) candidates.push_back(std::move(s));

  const JobId u = ctx.largest_size(state);
  const JobId v = ctx.largest_weight(state);
  if (u != v) {
    PartitionState paired =
        make_state(ctx, concat(state.before, {v}), concat(state.after, {u}), without_ids(state.unassigned, {u, v}));
    if (auto s = solve_rec(ctx, paired, stats, depth + 1)) candidates.push_back(std::move(*s));
  }

  const Schedule* best = nullptr;
  for (const Schedule& s : candidates)
    if (best == nullptr || better(inst, s, *best)) best = &s;
  return *best;
}

}  // namespace

std::vector<Schedule> repeat_size(const FptasContext& ctx, const PartitionState& state, FptasStats* stats) {
  return repeat_size_rec(ctx, state, stats, 0);
}

std::vector<Schedule> repeat_weight(const FptasContext& ctx, const PartitionState& state, FptasStats* stats) {
  return repeat_weight_rec(ctx, state, stats, 0);
}

std::optional<Schedule> solve_context(const FptasContext& ctx, const PartitionState& state, FptasStats* stats) {
  return solve_rec(ctx, state, stats, 0);
}

SolveReport fptas_solve(const Instance& instance, const Rational& epsilon, FptasStats* stats) {
  if (epsilon <= Rational(0) || epsilon > Rational(1)) throw InvalidInput("epsilon must lie in (0, 1]");
  if (instance.size() <= 3) {
    OracleResult r = oracle_permutation(instance);
    return SolveReport::of(instance, std::move(r.best.schedule), "fptas", r.best.work);
  }
  FptasContext ctx{instance, epsilon, instance.size(), {}, {}};
  FptasStats local;
  FptasStats* st = stats ? stats : &local;
  auto sched = solve_context(ctx, PartitionState::initial(instance), st);
  if (!sched) return SolveReport::infeasible("fptas");
  return SolveReport::of(instance, std::move(*sched), "fptas", st->dp_cells);
}

}  // namespace pinsched
