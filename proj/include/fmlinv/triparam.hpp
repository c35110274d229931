#pragma once

#include "fmlinv/refinement.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace fmlinv {

/// Rank-one parameter: the value delta(p) and the weight coefficient w.
struct Character {
  Scalar value_at_p;
  Scalar weight;

  friend bool operator==(const Character&, const Character&) = default;
};

/// delta_i(p) = alpha_i p^{-k_i}, w_i = -k_i.
std::vector<Character> parameters_from_invariants(const std::vector<Scalar>& alphas, const std::vector<long>& ks,
                                                  long p);

std::vector<Character> refinement_to_parameters(const Refinement& r);

/// Inverse of parameters_from_invariants. Throws DomainError(NonIntegerWeight)
/// with the offending index.
std::pair<std::vector<Scalar>, std::vector<long>> parameters_to_invariants(const std::vector<Character>& chars, long p);

/// Unit upper-triangular ell with f_i = e_i + sum_{j<i} ell(j,i) e_j
/// compatible with the Hodge filtration.
struct HodgeTransform {
  Matrix ell;
  std::vector<long> weights;  // strictly increasing

  const Scalar& entry(std::size_t j, std::size_t i) const { return ell(j - 1, i - 1); }
};

struct MaxMonodromyResult {
  Flag flag;
  HodgeTransform transform;
  std::vector<Scalar> l_values;  // ell_{s,s+1} for s = 1 .. n-1
  /// L_{F,s} from the refinement route; nullopt where it was not found.
  std::vector<std::optional<Scalar>> refine_l_values;

  bool routes_agree() const;
};

/// Requires rank N = n - 1. Throws DomainError with WrongMonodromyRank,
/// NoRationalEigenvector, NotSemisimple or WeightsNotStrict.
MaxMonodromyResult max_monodromy_refinement(const FilteredModule& m);

}  // namespace fmlinv
