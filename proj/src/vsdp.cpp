#include "pinsched/vsdp.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

namespace pinsched {

namespace {

using BigInt = boost::multiprecision::cpp_int;

Wide to_wide(const BigInt& v) {
  const BigInt mask = (BigInt(1) << 64) - 1;
  const auto lo = static_cast<std::uint64_t>(v & mask);
  const auto hi = static_cast<std::uint64_t>((v >> 64) & mask);
  return (static_cast<Wide>(hi) << 64) | lo;
}

}  // namespace

TrimGrid::TrimGrid(Rational delta, Wide max_value) : delta_(delta), max_value_(max_value) {
  if (delta_ <= Rational(1)) throw InvalidInput("trim ratio must exceed 1");
  const Wide cap = std::max<Wide>(max_value_, 1);
  const BigInt limit = BigInt(1) << 127;
  const BigInt a = delta_.num();
  const BigInt d = delta_.den();
  BigInt num = 1, den = 1;
  while (true) {
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    const BigInt c = r == 0 ? q : q + 1;
    if (c >= limit) throw std::overflow_error("trim grid exceeds 128 bits");
    ceil_pow_.push_back(to_wide(c));
    exact_pow_.push_back(r == 0 ? 1 : 0);
    // Stop once floor(delta^t) passes the range so ceil_log can always answer.
    if (q > BigInt(0) && to_wide(q) > cap) break;
    num *= a;
    den *= d;
  }
}

std::size_t TrimGrid::box(Wide v) const {
  if (v == 0) return 0;
  if (v > max_value_) throw InvalidInput("value outside trim grid range");
  auto it = std::upper_bound(ceil_pow_.begin(), ceil_pow_.end(), v);
  return static_cast<std::size_t>(it - ceil_pow_.begin());
}

std::size_t TrimGrid::ceil_log(Wide v) const {
  if (v == 0 || v > std::max<Wide>(max_value_, 1)) throw InvalidInput("value outside trim grid range");
  // delta^t >= v  <=>  floor(delta^t) >= v for integer v.
  for (std::size_t t = 0; t < ceil_pow_.size(); ++t) {
    const Wide floor_pow = exact_pow_[t] ? ceil_pow_[t] : ceil_pow_[t] - 1;
    if (floor_pow >= v) return t;
  }
  throw std::logic_error("trim grid does not cover value");
}

Rational trim_delta(const Rational& epsilon, std::size_t n, const TrimOptions& options) {
  if (epsilon <= Rational(0) || epsilon > Rational(1)) throw InvalidInput("epsilon must lie in (0, 1]");
  const auto scale = static_cast<std::int64_t>(options.coarse_delta ? n : 2 * n);
  return Rational(1) + epsilon / Rational(scale);
}

Wide vsdp_value_bound(const Instance& instance) {
  return checked_mul(static_cast<Wide>(instance.total_weight()), static_cast<Wide>(instance.total_size()));
}

std::uint64_t trimmed_state_bound(const Instance& instance, const TrimGrid& grid) {
  auto term = [&](Wide v) { return static_cast<std::uint64_t>(grid.ceil_log(v)) + 2; };
  return static_cast<std::uint64_t>(instance.k()) * term(static_cast<Wide>(instance.total_size())) *
         term(static_cast<Wide>(instance.total_weight())) * term(vsdp_value_bound(instance));
}

namespace {

using Phase = std::vector<StateVector>;

// Keeps one state per (i, x, y), the one with least z.
Phase dedupe_exact(Phase states) {
  std::vector<std::size_t> idx(states.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& s = states[a];
    const auto& t = states[b];
    return std::tie(s.i, s.x, s.y, s.z) < std::tie(t.i, t.x, t.y, t.z);
  });
  Phase out;
  out.reserve(states.size());
  for (std::size_t n = 0; n < idx.size(); ++n) {
    const auto& s = states[idx[n]];
    if (!out.empty() && out.back().i == s.i && out.back().x == s.x && out.back().y == s.y) continue;
    out.push_back(s);
  }
  return out;
}

// One representative per (i, box(x), box(y), box(z)): least z, then x, then y.
Phase trim(Phase states, const TrimGrid& grid) {
  struct Keyed {
    std::size_t bx, by, bz;
    std::size_t at;
  };
  std::vector<Keyed> keys;
  keys.reserve(states.size());
  for (std::size_t n = 0; n < states.size(); ++n) {
    const auto& s = states[n];
    keys.push_back({grid.box(static_cast<Wide>(s.x)), grid.box(static_cast<Wide>(s.y)), grid.box(s.z), n});
  }
  std::stable_sort(keys.begin(), keys.end(), [&](const Keyed& a, const Keyed& b) {
    const auto& s = states[a.at];
    const auto& t = states[b.at];
    return std::tie(s.i, a.bx, a.by, a.bz, s.z, s.x, s.y) < std::tie(t.i, b.bx, b.by, b.bz, t.z, t.x, t.y);
  });
  Phase out;
  out.reserve(states.size());
  for (std::size_t n = 0; n < keys.size(); ++n) {
    if (n > 0) {
      const auto& p = keys[n - 1];
      const auto& q = keys[n];
      if (states[p.at].i == states[q.at].i && p.bx == q.bx && p.by == q.by && p.bz == q.bz) continue;
    }
    out.push_back(states[keys[n].at]);
  }
  return out;
}

SolveReport run_vector_sets(const Instance& instance, const TrimGrid* grid, const std::string& algorithm,
                            VsdpTrace* trace) {
  const std::vector<Job>& order = instance.others();
  const Job& pivot = instance.pivot();
  const std::size_t m = order.size();
  const int need = instance.k() - 1;

  std::vector<Phase> phases;
  phases.reserve(m + 1);
  StateVector root;
  root.y = pivot.w;
  root.z = static_cast<Wide>(pivot.w) * static_cast<Wide>(pivot.s);
  phases.push_back({root});
  std::uint64_t work = 1;

  Wide prefix = 0;  // sizes of jobs 1..j
  for (std::size_t j = 1; j <= m; ++j) {
    const Job& job = order[j - 1];
    prefix += static_cast<Wide>(job.s);
    const Wide w = static_cast<Wide>(job.w);
    const Wide s = static_cast<Wide>(job.s);
    const Wide appended_completion = static_cast<Wide>(pivot.s) + prefix;
    const int later = static_cast<int>(m - j);

    const Phase& prev = phases.back();
    Phase next;
    next.reserve(prev.size() * 2);
    for (std::size_t at = 0; at < prev.size(); ++at) {
      const StateVector& st = prev[at];
      // Append after everything.
      if (st.i + later >= need) {
        StateVector a = st;
        a.y = st.y + job.w;
        a.z = checked_add(st.z, checked_mul(w, appended_completion));
        a.parent = static_cast<std::int32_t>(at);
        a.inserted_before = false;
        next.push_back(a);
      }
      // Insert right before the pivot; the pivot and every later job shift by s_j.
      if (st.i + 1 <= need) {
        StateVector b = st;
        b.i = st.i + 1;
        b.x = st.x + job.s;
        b.z = checked_add(st.z, checked_add(checked_mul(w, static_cast<Wide>(b.x)),
                                            checked_mul(static_cast<Wide>(st.y), s)));
        b.parent = static_cast<std::int32_t>(at);
        b.inserted_before = true;
        next.push_back(b);
      }
    }
    next = grid ? trim(std::move(next), *grid) : dedupe_exact(std::move(next));
    work += next.size();
    phases.push_back(std::move(next));
  }

  const Phase& last = phases.back();
  std::int64_t best = -1;
  for (std::size_t at = 0; at < last.size(); ++at) {
    const auto& s = last[at];
    if (s.i != need) continue;
    if (best < 0 || std::tie(s.z, s.x, s.y) < std::tie(last[best].z, last[best].x, last[best].y))
      best = static_cast<std::int64_t>(at);
  }
  if (best < 0) throw std::logic_error("vector-set DP produced no state with k-1 jobs before the pivot");

  std::vector<Job> before, after;
  std::int32_t at = static_cast<std::int32_t>(best);
  for (std::size_t j = m; j >= 1; --j) {
    const StateVector& st = phases[j][static_cast<std::size_t>(at)];
    (st.inserted_before ? before : after).push_back(order[j - 1]);
    at = st.parent;
  }
  std::reverse(before.begin(), before.end());
  std::reverse(after.begin(), after.end());
  Schedule sched;
  for (const Job& j : before) sched.order.push_back(j.id);
  sched.order.push_back(pivot.id);
  for (const Job& j : after) sched.order.push_back(j.id);

  SolveReport report = SolveReport::of(instance, std::move(sched), algorithm, work);
  if (report.objective != last[static_cast<std::size_t>(best)].z)
    throw std::logic_error("vector-set DP: stored z disagrees with the reconstructed schedule");
  if (trace) {
    trace->order = order;
    trace->phases = std::move(phases);
  }
  return report;
}

}  // namespace

SolveReport vsdp_exact(const Instance& instance, VsdpTrace* trace) {
  if (instance.total_weight() > kVsdpExactMaxTotal || instance.total_size() > kVsdpExactMaxTotal)
    throw InstanceTooLarge("exact vector-set DP needs total weight and total size <= 10000");
  return run_vector_sets(instance, nullptr, "vsdp", trace);
}

SolveReport vsdp_trimmed(const Instance& instance, const Rational& epsilon, VsdpTrace* trace,
                         const TrimOptions& options) {
  const TrimGrid grid(trim_delta(epsilon, instance.size(), options), vsdp_value_bound(instance));
  return run_vector_sets(instance, &grid, "vsdp-trim", trace);
}

}  // namespace pinsched
