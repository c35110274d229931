#pragma once

#include "fmlinv/subspace.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace fmlinv {

struct FiltrationStep {
  long jump = 0;   // Fil^jump = space, constant until the next listed jump
  Subspace space;

  friend bool operator==(const FiltrationStep&, const FiltrationStep&) = default;
};

// Descending exhaustive separated Z-filtration, stored only where it
// changes. Fil^i is the whole space below the first listed jump.
class Filtration {
 public:
  Filtration() = default;
  /// Stores the steps verbatim; structural checks live in validate_module.
  Filtration(std::size_t ambient, std::vector<FiltrationStep> steps);

  /// Canonical filtration from Fil^i = at(i) for lo <= i <= hi, where at(lo)
  /// must be the whole space and at(hi) must be zero.
  static Filtration from_function(std::size_t ambient, long lo, long hi, const std::function<Subspace(long)>& at);

  /// A single jump: Fil^i = everything for i <= weight, zero above.
  static Filtration pure(std::size_t ambient, long weight);

  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<FiltrationStep>& steps() const { return steps_; }

  Subspace at(long i) const;

  /// Listed jump indices (ascending for a well-formed filtration).
  std::vector<long> levels() const;
  long lowest_level() const;
  long highest_level() const;

  /// Same filtration with redundant steps dropped and the first step the
  /// largest index where Fil is the whole space.
  Filtration canonical() const;

  friend bool operator==(const Filtration&, const Filtration&) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<FiltrationStep> steps_;
};

/// Jump multiset of any filtered subquotient whose Fil^i has dimension
/// dim_at(i): weight w appears dim_at(w) - dim_at(w + 1) times. Only the
/// levels of the ambient filtration can carry a drop. `total` is the
/// dimension of the subquotient. Sorted ascending.
std::vector<long> jump_multiset(const std::vector<long>& levels, std::size_t total,
                                const std::function<std::size_t(long)>& dim_at);

}  // namespace fmlinv
