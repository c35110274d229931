#include "fmlinv/sweep.hpp"

#include <exception>

namespace fmlinv {

namespace {

// Exceptions must not escape an OpenMP region, so both loops share this.
SweepOutcome guarded(const InstanceCheck& check, std::uint64_t seed) {
  try {
    SweepOutcome out = check(seed);
    out.seed = seed;
    return out;
  } catch (const std::exception& e) {
    return {seed, false, true, std::string("exception: ") + e.what()};
  }
}

}  // namespace

std::vector<SweepOutcome> sweep_serial(const InstanceCheck& check, std::uint64_t first_seed, std::size_t count) {
  std::vector<SweepOutcome> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = guarded(check, first_seed + i);
  return out;
}

std::vector<SweepOutcome> sweep_parallel(const InstanceCheck& check, std::uint64_t first_seed, std::size_t count) {
  std::vector<SweepOutcome> out(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = guarded(check, first_seed + static_cast<std::uint64_t>(i));
  return out;
}

SweepSummary summarize(const std::vector<SweepOutcome>& outcomes) {
  SweepSummary s;
  s.total = outcomes.size();
  for (const auto& o : outcomes) {
    if (!o.applicable) continue;
    ++s.applicable;
    if (!o.ok) {
      if (s.failures == 0) s.first_failure = "seed " + std::to_string(o.seed) + ": " + o.detail;
      ++s.failures;
    }
  }
  return s;
}

}  // namespace fmlinv
