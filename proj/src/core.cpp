#include "pinsched/core.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace pinsched {

std::strong_ordering compare_density(const Job& a, const Job& b) {
  return static_cast<__int128>(a.w) * b.s <=> static_cast<__int128>(b.w) * a.s;
}

bool smith_before(const Job& a, const Job& b) {
  auto c = compare_density(a, b);
  if (c != 0) return c > 0;
  return a.id < b.id;
}

Instance::Instance(std::vector<Job> jobs, JobId pivot, int k)
    : jobs_(std::move(jobs)), pivot_(pivot), k_(k) {
  if (jobs_.empty()) throw InvalidInput("instance has no jobs");
  index_.reserve(jobs_.size());
  for (std::size_t i = 0; i < jobs_.size(); ++i) {
    const Job& j = jobs_[i];
    if (j.id <= 0) throw InvalidInput("non-positive job id " + std::to_string(j.id));
    if (j.w <= 0) throw InvalidInput("non-positive weight on job " + std::to_string(j.id));
    if (j.s <= 0) throw InvalidInput("non-positive processing time on job " + std::to_string(j.id));
    if (!index_.emplace(j.id, i).second) throw InvalidInput("duplicate job id " + std::to_string(j.id));
  }
  if (!index_.contains(pivot_)) throw InvalidInput("missing pivot job " + std::to_string(pivot_));
  if (k_ < 1 || static_cast<std::size_t>(k_) > jobs_.size()) throw InvalidInput("k out of range");

  others_.reserve(jobs_.size() - 1);
  for (const Job& j : jobs_)
    if (j.id != pivot_) others_.push_back(j);
  std::sort(others_.begin(), others_.end(), smith_before);
}

const Job& Instance::job(JobId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InvalidInput("unknown job id " + std::to_string(id));
  return jobs_[it->second];
}

Instance Instance::without(JobId id, int k) const {
  if (id == pivot_) throw InvalidInput("cannot remove the pivot job");
  std::vector<Job> rest;
  rest.reserve(jobs_.size() - 1);
  for (const Job& j : jobs_)
    if (j.id != id) rest.push_back(j);
  if (rest.size() == jobs_.size()) throw InvalidInput("unknown job id " + std::to_string(id));
  return Instance(std::move(rest), pivot_, k);
}

std::int64_t Instance::total_weight() const {
  std::int64_t t = 0;
  for (const Job& j : jobs_)
    if (__builtin_add_overflow(t, j.w, &t)) throw std::overflow_error("total weight overflow");
  return t;
}

std::int64_t Instance::total_size() const {
  std::int64_t t = 0;
  for (const Job& j : jobs_)
    if (__builtin_add_overflow(t, j.s, &t)) throw std::overflow_error("total size overflow");
  return t;
}

void check_input_limits(const Instance& instance) {
  if (instance.size() > kMaxJobs) throw InvalidInput("too many jobs (limit 10000)");
  for (const Job& j : instance.jobs()) {
    if (j.w > kMaxJobValue) throw InvalidInput("weight above 1e9 on job " + std::to_string(j.id));
    if (j.s > kMaxJobValue) throw InvalidInput("processing time above 1e9 on job " + std::to_string(j.id));
  }
}

void check_permutation(const Instance& instance, const Schedule& schedule) {
  if (schedule.order.size() != instance.size())
    throw InvalidInput("schedule length " + std::to_string(schedule.order.size()) + " != " +
                       std::to_string(instance.size()) + " jobs");
  std::unordered_set<JobId> seen;
  seen.reserve(schedule.order.size());
  for (JobId id : schedule.order) {
    if (!instance.contains(id)) throw InvalidInput("schedule names unknown job " + std::to_string(id));
    if (!seen.insert(id).second) throw InvalidInput("schedule repeats job " + std::to_string(id));
  }
}

Wide objective(const Instance& instance, const Schedule& schedule) {
  check_permutation(instance, schedule);
  Wide t = 0;
  Wide total = 0;
  for (JobId id : schedule.order) {
    const Job& j = instance.job(id);
    t = checked_add(t, static_cast<Wide>(j.s));
    total = checked_add(total, checked_mul(static_cast<Wide>(j.w), t));
  }
  return total;
}

bool is_feasible(const Instance& instance, const Schedule& schedule) {
  check_permutation(instance, schedule);
  auto it = std::find(schedule.order.begin(), schedule.order.end(), instance.pivot_id());
  return it - schedule.order.begin() == instance.k() - 1;
}

std::vector<Job> smith_sort(std::vector<Job> jobs) {
  std::stable_sort(jobs.begin(), jobs.end(), smith_before);
  return jobs;
}

Schedule assemble(std::span<const Job> before, const Job& pivot, std::span<const Job> after) {
  Schedule out;
  out.order.reserve(before.size() + after.size() + 1);
  for (const Job& j : smith_sort({before.begin(), before.end()})) out.order.push_back(j.id);
  out.order.push_back(pivot.id);
  for (const Job& j : smith_sort({after.begin(), after.end()})) out.order.push_back(j.id);
  return out;
}

SolveReport SolveReport::of(const Instance& instance, Schedule schedule, std::string algorithm,
                            std::uint64_t work) {
  SolveReport r;
  r.objective = pinsched::objective(instance, schedule);
  r.feasible = is_feasible(instance, schedule);
  r.schedule = std::move(schedule);
  r.algorithm = std::move(algorithm);
  r.work = work;
  return r;
}

SolveReport SolveReport::infeasible(std::string algorithm) {
  SolveReport r;
  r.algorithm = std::move(algorithm);
  return r;
}

}  // namespace pinsched
