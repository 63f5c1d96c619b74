#include <doctest.h>

#include <algorithm>
#include <random>

#include "pinsched/exact_dp.hpp"
#include "pinsched/fptas.hpp"
#include "pinsched/oracle.hpp"
#include "support.hpp"

using namespace pinsched;
using pinsched::testing::instance_a;

namespace {

FptasContext context_of(const Instance& inst, Rational eps) { return {inst, eps, inst.size(), {}, {}}; }

Wide best_of(const Instance& inst, const std::vector<Schedule>& schedules) {
  Wide best = kWideMax;
  for (const Schedule& s : schedules) {
    CHECK(is_feasible(inst, s));
    best = std::min(best, objective(inst, s));
  }
  return best;
}

// objective <= (1 + factor * eps) * optimum, cross-multiplied.
bool within(Wide obj, Wide opt, const Rational& eps, std::int64_t factor) {
  const Wide den = static_cast<Wide>(eps.den());
  return obj * den <= opt * (den + static_cast<Wide>(factor * eps.num()));
}

// The ratio-17/16 family: s = (1, 2, 40h), w = (40h, 40h+1, 1), pivot 3, k = 3.
Instance counterexample(std::int64_t h) {
  return Instance({{1, 40 * h, 1}, {2, 40 * h + 1, 2}, {3, 1, 40 * h}}, 3, 3);
}

}  // namespace

TEST_CASE("feasibility check outcomes") {
  const Instance a = instance_a(2);
  const auto done = check_feasibility(PartitionState::with_sides(a, {1}, {2}), a);
  REQUIRE(std::holds_alternative<Terminal>(done));
  CHECK(std::get<Terminal>(done).schedule.order == std::vector<JobId>{1, 3, 2});

  CHECK(std::holds_alternative<Infeasible>(check_feasibility(PartitionState::with_sides(a, {1, 2}, {}), a)));
  CHECK(std::holds_alternative<Continue>(check_feasibility(PartitionState::initial(a), a)));

  const Instance a3 = instance_a(3);
  const auto fill = check_feasibility(PartitionState::with_sides(a3, {}, {}), a3);
  REQUIRE(std::holds_alternative<Terminal>(fill));
  CHECK(std::get<Terminal>(fill).schedule.order == std::vector<JobId>{1, 2, 3});
  CHECK(std::holds_alternative<Infeasible>(check_feasibility(PartitionState::with_sides(a3, {}, {1}), a3)));
}

TEST_CASE("fix_job: small open size with no sides picks the heaviest jobs") {
  const Instance inst({{1, 5, 1}, {2, 7, 1}, {3, 1, 1}, {4, 1, 100}}, 4, 2);
  const auto out = fix_job(context_of(inst, Rational(1)), PartitionState::initial(inst));
  REQUIRE(std::holds_alternative<Terminal>(out));
  CHECK(std::get<Terminal>(out).schedule.order == std::vector<JobId>{2, 4, 1, 3});
}

TEST_CASE("fix_job: small open weight with no sides picks the shortest jobs") {
  const Instance inst({{1, 1, 5}, {2, 1, 3}, {3, 1, 4}, {4, 100, 1}}, 4, 3);
  const auto out = fix_job(context_of(inst, Rational(1)), PartitionState::initial(inst));
  REQUIRE(std::holds_alternative<Terminal>(out));
  CHECK(std::get<Terminal>(out).schedule.order == std::vector<JobId>{2, 3, 4, 1});
}

TEST_CASE("fix_job: small open size pins the least dense after-job last") {
  const Instance inst({{1, 3, 1}, {2, 1, 2}, {5, 2, 2}, {6, 1, 1}, {4, 1, 100}}, 4, 2);
  const auto out = fix_job(context_of(inst, Rational(1)), PartitionState::with_sides(inst, {5}, {1, 2}));
  REQUIRE(std::holds_alternative<Fixed>(out));
  const Fixed& f = std::get<Fixed>(out);
  CHECK(f.job == 2);
  CHECK(f.end == End::kLast);
  CHECK(f.sub.k() == 2);
  CHECK_FALSE(f.sub.remaining.contains(2));
  CHECK(f.sub.n_total == 5);
  CHECK(f.sub.fixed_suffix == std::vector<JobId>{2});
}

TEST_CASE("fix_job: small open weight pins the densest before-job first") {
  const Instance inst({{1, 3, 1}, {5, 2, 2}, {2, 1, 2}, {6, 1, 50}, {4, 100, 1}}, 4, 4);
  const auto out = fix_job(context_of(inst, Rational(1)), PartitionState::with_sides(inst, {1, 5}, {2}));
  REQUIRE(std::holds_alternative<Fixed>(out));
  const Fixed& f = std::get<Fixed>(out);
  CHECK(f.job == 1);
  CHECK(f.end == End::kFirst);
  CHECK(f.sub.k() == 3);
  CHECK(f.sub.fixed_prefix == std::vector<JobId>{1});
}

TEST_CASE("fix_job: large open mass continues; one-sided input is rejected") {
  const Instance a = instance_a(2);
  CHECK(std::holds_alternative<Continue>(fix_job(context_of(a, Rational(1)), PartitionState::initial(a))));
  const Instance inst({{1, 3, 1}, {2, 1, 2}, {5, 2, 2}, {4, 1, 1}}, 4, 2);
  CHECK_THROWS_AS(fix_job(context_of(inst, Rational(1)), PartitionState::with_sides(inst, {5}, {})), InvalidInput);
}

TEST_CASE("sweep rounding factors on the three-job example") {
  // Largest size 2 and largest weight 3 with n = 3, eps = 1.
  const Rational h = kRoundingConstants.sweep.value(3, Rational(1));
  CHECK(h / Rational(2) == Rational(27, 2));
  CHECK(h / Rational(3) == Rational(9));
  CHECK(kRoundingConstants.plain.value(3, Rational(1, 4)) == Rational(36));
}

TEST_CASE("repeat_size and repeat_weight on the three-job example") {
  const Instance a = instance_a(2);
  const FptasContext ctx = context_of(a, Rational(1));
  FptasStats stats;
  const auto by_size = repeat_size(ctx, PartitionState::initial(a), &stats);
  CHECK(stats.dp_calls == 1);
  CHECK(best_of(a, by_size) == 11);
  CHECK(std::find(by_size.begin(), by_size.end(), Schedule{{1, 3, 2}}) != by_size.end());

  FptasStats wstats;
  const auto by_weight = repeat_weight(ctx, PartitionState::initial(a), &wstats);
  CHECK(wstats.dp_calls == 1);
  CHECK(best_of(a, by_weight) == 11);
}

TEST_CASE("sweeps with nothing to sweep") {
  const Instance a1 = instance_a(1);
  FptasStats stats;
  const auto w = repeat_weight(context_of(a1, Rational(1)), PartitionState::initial(a1), &stats);
  CHECK(stats.dp_calls == 0);
  CHECK(w.size() == 1);

  const Instance a3 = instance_a(3);
  FptasStats s3;
  const auto tail = repeat_size(context_of(a3, Rational(1)), PartitionState::with_sides(a3, {1}, {}), &s3);
  CHECK(s3.dp_calls == 0);
  REQUIRE(tail.size() == 1);
  CHECK(tail[0].order == std::vector<JobId>{1, 2, 3});

  // With only the pivot left the loop is empty; the residual call still
  // returns the trivial schedule.
  const Instance single({{1, 2, 2}}, 1, 1);
  FptasStats s1;
  const auto lone = repeat_size(context_of(single, Rational(1)), PartitionState::initial(single), &s1);
  CHECK(s1.dp_calls == 0);
  REQUIRE(lone.size() == 1);
  CHECK(lone[0].order == std::vector<JobId>{1});
}

TEST_CASE("largest-weight ties go to the smallest id") {
  const Instance inst({{4, 2, 1}, {2, 2, 3}, {7, 2, 2}, {1, 1, 1}}, 1, 2);
  const FptasContext ctx = context_of(inst, Rational(1));
  CHECK(ctx.largest_weight(PartitionState::initial(inst)) == 2);
  CHECK(ctx.largest_size(PartitionState::initial(inst)) == 2);
}

TEST_CASE("fptas on small fixed instances") {
  CHECK(fptas_solve(instance_a(2), Rational(1, 2)).objective == 11);
  const Instance single({{1, 2, 5}}, 1, 1);
  CHECK(fptas_solve(single, Rational(1)).schedule.order == std::vector<JobId>{1});
  CHECK_THROWS_AS(fptas_solve(single, Rational(0)), InvalidInput);
  CHECK_THROWS_AS(fptas_solve(single, Rational(2)), InvalidInput);
}

TEST_CASE("fptas stays within 1+3eps with bounded recursion") {
  std::mt19937_64 rng(59);
  const Rational eps_list[] = {Rational(1, 2), Rational(1)};
  for (int trial = 0; trial < 16; ++trial) {
    const std::size_t n = 4 + trial % 4;
    const Instance inst = pinsched::testing::random_instance(rng, n, 1 + static_cast<int>(rng() % n), 20, 20);
    const Wide opt = oracle_subset(inst).optimum;
    for (const Rational& eps : eps_list) {
      FptasStats stats;
      const SolveReport r = fptas_solve(inst, eps, &stats);
      REQUIRE(r.feasible);
      CHECK(std::is_permutation(r.schedule.order.begin(), r.schedule.order.end(),
                                oracle_subset(inst).best.schedule.order.begin()));
      CHECK(within(r.objective, opt, eps, 3));
      CHECK(stats.max_pair_depth <= static_cast<int>((n + 1) / 2));
      CHECK(stats.max_pinned <= n);
    }
  }
}

TEST_CASE("one-shot rounding can cost a constant factor") {
  const Instance inst = counterexample(36);
  const Wide good = objective(inst, Schedule{{1, 2, 3}});
  const Wide bad = objective(inst, Schedule{{2, 1, 3}});
  CHECK(good == 7206);
  CHECK(bad == 8645);
  CHECK(bad * 16 >= good * 17);

  const RoundingParams params{Rational(36, 1440), RoundingMode::kSize};
  const Instance rounded = apply_rounding(inst, params);
  CHECK(rounded.job(1).s == 1);
  CHECK(rounded.job(2).s == 1);
  // The rounded sizes tie, so the heavier job 2 leads.
  const auto dp = f_s(PartitionState::initial(inst), inst, params);
  REQUIRE(dp);
  CHECK(dp->schedule.order == std::vector<JobId>{2, 1, 3});

  const SolveReport r = fptas_solve(inst, Rational(1, 4));
  CHECK(within(r.objective, good, Rational(1, 4), 3));
}

TEST_CASE("rounded optimum loses at most n/lambda per unit weight") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const Instance inst = pinsched::testing::random_instance(rng, n, 1 + static_cast<int>(rng() % n), 20, 40);
    const Rational lambda(1 + static_cast<std::int64_t>(rng() % 4), 1 + static_cast<std::int64_t>(rng() % 12));
    const auto sol = f_s(PartitionState::initial(inst), inst, {lambda, RoundingMode::kSize});
    REQUIRE(sol);
    const Wide opt = oracle_subset(inst).optimum;
    const Wide got = objective(inst, sol->schedule);
    // lambda * got <= lambda * opt + n * W
    const Wide p = static_cast<Wide>(lambda.num()), q = static_cast<Wide>(lambda.den());
    CHECK(p * got <= p * opt + q * static_cast<Wide>(n) * static_cast<Wide>(inst.total_weight()));
  }
}

TEST_CASE("pinning the least dense after-job last costs at most 1 + eps/(n - eps)") {
  std::mt19937_64 rng(67);
  const Rational eps(1);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 4 + trial % 4;
    const Instance inst = pinsched::testing::random_instance(rng, n, 1 + static_cast<int>(rng() % n), 20, 30);
    const auto best = oracle_subset(inst);
    const auto& order = best.best.schedule.order;
    const auto pivot_at = static_cast<std::size_t>(inst.k() - 1);

    // Smallest jobs stay open while their size fits; the others take their
    // side from the optimum.
    std::vector<Job> by_size = inst.others();
    std::sort(by_size.begin(), by_size.end(), [](const Job& a, const Job& b) { return a.s < b.s; });
    std::int64_t open = 0;
    std::vector<JobId> before, after;
    for (const Job& j : by_size) {
      if ((open + j.s) * static_cast<std::int64_t>(n) <= inst.total_size()) {
        open += j.s;
        continue;
      }
      const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), j.id) - order.begin());
      (pos < pivot_at ? before : after).push_back(j.id);
    }
    if (before.empty() || after.empty()) continue;
    const auto out = fix_job(context_of(inst, eps), PartitionState::with_sides(inst, before, after));
    REQUIRE(std::holds_alternative<Fixed>(out));
    const Fixed& f = std::get<Fixed>(out);
    REQUIRE(f.end == End::kLast);
    const Wide pinned = oracle_subset(f.sub.remaining).optimum +
                        static_cast<Wide>(inst.job(f.job).w) * static_cast<Wide>(inst.total_size());
    // pinned <= opt * n / (n - eps)
    const Wide nq = static_cast<Wide>(n) * static_cast<Wide>(eps.den());
    CHECK(pinned * (nq - static_cast<Wide>(eps.num())) <= best.optimum * nq);
    ++checked;
  }
  CHECK(checked >= 20);
}
