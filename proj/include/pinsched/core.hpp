#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pinsched/rational.hpp"
#include "pinsched/wide.hpp"

namespace pinsched {

using JobId = std::int64_t;

// Input caps that keep every objective inside 128-bit arithmetic.
inline constexpr std::int64_t kMaxJobValue = 1'000'000'000;
inline constexpr std::size_t kMaxJobs = 10'000;

/// Raised when an instance, schedule or parameter violates its contract.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the brute-force oracles when their enumeration guard fails.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Job {
  JobId id = 0;
  std::int64_t w = 1;  // weight
  std::int64_t s = 1;  // processing time

  Rational density() const { return Rational(w, s); }
  bool operator==(const Job&) const = default;
};

// Exact density comparison by cross-multiplication: w_a * s_b vs w_b * s_a.
std::strong_ordering compare_density(const Job& a, const Job& b);

// Smith order: non-increasing density, ties by ascending id.
bool smith_before(const Job& a, const Job& b);

/// A job set with one pivot job that must be the k-th job of the schedule.
///
/// Jobs keep the order they were given in; `others()` yields the non-pivot
/// jobs in Smith order, which is the canonical indexing every solver uses (the
/// pivot is logically last). Only structural validity is checked here; the
/// input caps (kMaxJobValue, kMaxJobs) are checked by `check_input_limits`, so
/// rounded and transposed instances may exceed them.
class Instance {
 public:
  Instance(std::vector<Job> jobs, JobId pivot, int k);

  const std::vector<Job>& jobs() const { return jobs_; }
  std::size_t size() const { return jobs_.size(); }
  int k() const { return k_; }
  JobId pivot_id() const { return pivot_; }
  const Job& pivot() const { return job(pivot_); }

  bool contains(JobId id) const { return index_.contains(id); }
  const Job& job(JobId id) const;

  // Non-pivot jobs in Smith order.
  const std::vector<Job>& others() const { return others_; }

  Instance with_k(int k) const { return Instance(jobs_, pivot_, k); }
  // Drops a non-pivot job; the caller supplies the position for the smaller instance.
  Instance without(JobId id, int k) const;

  std::int64_t total_weight() const;
  std::int64_t total_size() const;

  bool operator==(const Instance& o) const {
    return jobs_ == o.jobs_ && pivot_ == o.pivot_ && k_ == o.k_;
  }

 private:
  std::vector<Job> jobs_;
  JobId pivot_;
  int k_;
  std::unordered_map<JobId, std::size_t> index_;
  std::vector<Job> others_;
};

// Throws InvalidInput if weights/sizes exceed kMaxJobValue or n exceeds kMaxJobs.
void check_input_limits(const Instance& instance);

struct Schedule {
  std::vector<JobId> order;

  bool operator==(const Schedule&) const = default;
  auto operator<=>(const Schedule&) const = default;
};

// Throws InvalidInput unless the schedule is a permutation of the instance's ids.
void check_permutation(const Instance& instance, const Schedule& schedule);

// Total weighted completion time without idle time.
Wide objective(const Instance& instance, const Schedule& schedule);

// True iff exactly k-1 jobs precede the pivot.
bool is_feasible(const Instance& instance, const Schedule& schedule);

std::vector<Job> smith_sort(std::vector<Job> jobs);

// smith_sort(before) ++ [pivot] ++ smith_sort(after).
Schedule assemble(std::span<const Job> before, const Job& pivot, std::span<const Job> after);

struct SolveReport {
  Schedule schedule;
  Wide objective = 0;
  std::string algorithm;
  bool feasible = false;
  // Table cells or states touched; informational only.
  std::uint64_t work = 0;

  // Builds a report whose objective and feasibility are recomputed from the schedule.
  static SolveReport of(const Instance& instance, Schedule schedule, std::string algorithm,
                        std::uint64_t work = 0);
  static SolveReport infeasible(std::string algorithm);
};

}  // namespace pinsched
