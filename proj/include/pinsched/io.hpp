#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "pinsched/core.hpp"
#include "pinsched/rational.hpp"

namespace pinsched {

// Names written into generated instance files. The sampler draws 64-bit words
// from std::mt19937_64 and maps them to [1, max] by rejecting the low
// (2^64 mod range) words, then taking the remainder. Jobs are drawn in id
// order, weight before size.
inline constexpr std::string_view kPrngName = "mt19937_64";
inline constexpr std::string_view kSamplerName = "lemire-rejection-v1";

struct GeneratorInfo {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  int k = 0;
  std::int64_t max_w = 0;
  std::int64_t max_s = 0;
};

// Uniform draw in [1, max_value] per the sampler above.
std::int64_t draw_uniform(std::mt19937_64& rng, std::int64_t max_value);

/// Parses {"jobs":[{"id","w","s"}...],"pivot":id,"k":int}. Unknown members
/// (such as "generator") are ignored. Throws InvalidInput naming the first
/// violated constraint.
Instance parse_instance(std::string_view text);

std::string emit_instance(const Instance& instance, const std::optional<GeneratorInfo>& generator = std::nullopt);

/// Pivot is job n; ids are 1..n. Identical arguments give identical instances.
Instance generate_instance(std::uint64_t seed, std::size_t n, int k, std::int64_t max_w, std::int64_t max_s);

// {"algo","feasible","schedule","objective","epsilon"}; the objective is a
// decimal string.
std::string emit_report(const SolveReport& report, const std::optional<Rational>& epsilon);

}  // namespace pinsched
