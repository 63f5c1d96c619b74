#include <doctest.h>

#include <random>

#include "pinsched/oracle.hpp"
#include "support.hpp"

using namespace pinsched;
using pinsched::testing::instance_a;

TEST_CASE("subset oracle on the three-job example") {
  const auto k2 = oracle_subset(instance_a(2));
  CHECK(k2.optimum == 11);
  CHECK(k2.best.schedule.order == std::vector<JobId>{1, 3, 2});

  const auto k1 = oracle_subset(instance_a(1));
  CHECK(k1.optimum == 12);
  CHECK(k1.best.schedule.order == std::vector<JobId>{3, 1, 2});

  const auto k3 = oracle_subset(instance_a(3));
  CHECK(k3.optimum == 14);
  CHECK(k3.best.schedule.order == std::vector<JobId>{1, 2, 3});
  CHECK(k3.best.feasible);
  CHECK(k3.best.algorithm == "oracle-subset");
}

TEST_CASE("permutation oracle agrees with the subset oracle") {
  const auto perm = oracle_permutation(instance_a(2));
  CHECK(perm.optimum == 11);
  CHECK(perm.best.schedule == oracle_subset(instance_a(2)).best.schedule);

  const Instance single({{4, 5, 4}}, 4, 1);
  CHECK(oracle_permutation(single).optimum == 20);
  CHECK(oracle_subset(single).optimum == 20);
}

TEST_CASE("oracle guards refuse oversized instances") {
  std::vector<Job> jobs;
  for (int i = 1; i <= 10; ++i) jobs.push_back({i, 1, 1});
  const Instance ten(jobs, 1, 5);
  CHECK_THROWS_AS(oracle_permutation(ten), InstanceTooLarge);
  CHECK(subset_oracle_fits(ten));
  CHECK(subset_oracle_count(ten) == 126);  // C(9, 4)

  jobs.clear();
  for (int i = 1; i <= 31; ++i) jobs.push_back({i, 1, 1});
  const Instance wide(jobs, 1, 2);
  CHECK_FALSE(subset_oracle_fits(wide));
  CHECK_THROWS_AS(oracle_subset(wide), InstanceTooLarge);
}

TEST_CASE("oracle schedules are feasible and report their own objective") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const int k = 1 + static_cast<int>(rng() % n);
    const Instance inst = pinsched::testing::random_instance(rng, n, k, 20, 20);
    const auto sub = oracle_subset(inst);
    const auto perm = oracle_permutation(inst);
    CHECK(sub.optimum == perm.optimum);
    CHECK(sub.best.schedule == perm.best.schedule);
    CHECK(is_feasible(inst, sub.best.schedule));
    CHECK(pinsched::testing::objective_by_completion(inst, sub.best.schedule) == sub.optimum);
    CHECK(pinsched::testing::sides_in_smith_order(inst, sub.best.schedule));
  }
}

TEST_CASE("raising any weight never lowers the optimum") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const int k = 1 + static_cast<int>(rng() % n);
    const Instance inst = pinsched::testing::random_instance(rng, n, k, 15, 15);
    std::vector<Job> jobs = inst.jobs();
    jobs[rng() % n].w += 1 + static_cast<std::int64_t>(rng() % 5);
    const Instance heavier(jobs, inst.pivot_id(), k);
    CHECK(oracle_subset(heavier).optimum >= oracle_subset(inst).optimum);
  }
}
