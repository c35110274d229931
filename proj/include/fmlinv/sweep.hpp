#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fmlinv {

// Randomized verification runs many independent seeded instances. The
// serial loop is the reference; the OpenMP loop must produce identical
// outcomes in the same order.

struct SweepOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  bool applicable = true;  // false when the seed produced no usable instance
  std::string detail;

  friend bool operator==(const SweepOutcome&, const SweepOutcome&) = default;
};

/// Must be safe to call concurrently for different seeds.
using InstanceCheck = std::function<SweepOutcome(std::uint64_t seed)>;

std::vector<SweepOutcome> sweep_serial(const InstanceCheck& check, std::uint64_t first_seed, std::size_t count);

std::vector<SweepOutcome> sweep_parallel(const InstanceCheck& check, std::uint64_t first_seed, std::size_t count);

struct SweepSummary {
  std::size_t total = 0;
  std::size_t applicable = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
};

SweepSummary summarize(const std::vector<SweepOutcome>& outcomes);

}  // namespace fmlinv
