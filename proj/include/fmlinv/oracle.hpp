#pragma once

#include "fmlinv/module.hpp"
#include "fmlinv/refinement.hpp"

#include <vector>

// Brute-force cross-checks. Nothing here calls the refinement or
// admissibility pipelines; only matrices, subspaces and root finding.

namespace fmlinv {

/// Pairs (s, t) with N F_{t-1} ∩ F_s = N F_{t-1} ∩ F_{s-1} and
/// N F_t ∩ F_s ≠ N F_t ∩ F_{s-1}, sorted by s.
std::vector<CriticalPair> oracle_critical_indices(const Refinement& r);

/// The e_s-coefficient of the filtration jump line inside span(e_s, e_t)
/// (a piece of F_t/F_{s-1}), normalized to unit e_t-coefficient. Works in
/// flag coordinates. Throws DomainError(NoJumpLine) unless that piece has
/// two distinct weights with the top one transverse to e_s.
Scalar oracle_l_invariant(const Refinement& r, std::size_t s, const SDecomposition& dec);

struct OracleAdmissibility {
  bool admissible = false;
  long t_hodge = 0;
  long t_newton = 0;
  std::size_t subsets_tested = 0;  // eigenline subsets that were N-stable
};

/// Tests all 2^n eigenline subsets. Throws DomainError(RepeatedEigenvalues)
/// or DomainError(IrrationalEigenvalues).
OracleAdmissibility oracle_admissible(const FilteredModule& m);

}  // namespace fmlinv
