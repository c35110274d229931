#pragma once

#include "fmlinv/eigen.hpp"
#include "fmlinv/filtration.hpp"
#include "fmlinv/matrix.hpp"
#include "fmlinv/subspace.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fmlinv {

/// Filtered (phi, N)-module over Q: invertible Frobenius, nilpotent
/// monodromy with N phi = p phi N, and a descending Z-filtration that is
/// not required to be stable under either operator.
struct FilteredModule {
  long p = 2;
  Matrix phi;
  Matrix monodromy;
  Filtration filtration;

  std::size_t dim() const { return phi.rows(); }

  friend bool operator==(const FilteredModule&, const FilteredModule&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_module(const FilteredModule& m);

struct HodgeData {
  std::vector<long> weights;  // ascending, with multiplicity
  long t_hodge = 0;
};

struct NewtonData {
  std::vector<long> slopes;  // ascending, with multiplicity
  long t_newton = 0;
};

HodgeData hodge_data(const FilteredModule& m);

/// Throws DomainError(IrrationalEigenvalues) when the characteristic
/// polynomial of phi does not split over Q.
NewtonData newton_data(const FilteredModule& m);

/// Hodge data of the filtration induced on a subspace (Fil^i ∩ w).
HodgeData induced_hodge_data(const FilteredModule& m, const Subspace& w);

/// v_p(det(phi restricted to w)); w must be phi-stable.
long restricted_newton_number(const FilteredModule& m, const Subspace& w);

/// Every phi- and N-stable subspace, sorted by (dimension, basis).
/// Requires n pairwise-distinct rational eigenvalues.
std::vector<Subspace> stable_subspaces(const FilteredModule& m);

enum class AdmissibilityVerdict { Admissible, NotAdmissible, CheckedOnCandidates };

const char* to_string(AdmissibilityVerdict v);

struct SubobjectCheck {
  Subspace space;
  long t_hodge = 0;
  long t_newton = 0;
  bool holds = false;  // t_hodge <= t_newton
};

struct AdmissibilityReport {
  AdmissibilityVerdict verdict = AdmissibilityVerdict::NotAdmissible;
  /// True when the verdict is a proof: a full enumeration was possible, or
  /// a violated inequality was found.
  bool certifying = false;
  long t_hodge = 0;
  long t_newton = 0;
  std::vector<SubobjectCheck> checks;
  std::vector<Subspace> skipped_candidates;  // not phi,N-stable
  std::string note;
};

AdmissibilityReport is_admissible(const FilteredModule& m, const std::vector<Subspace>& extra_candidates = {});

/// phi* = (phi^T)^-1, N* = -N^T, Fil^i(D*) = (Fil^{1-i} D)^perp.
FilteredModule dual_module(const FilteredModule& m);

/// Throws DomainError(PrimeMismatch) when the primes differ.
FilteredModule tensor(const FilteredModule& a, const FilteredModule& b);

struct SubQuotient {
  FilteredModule sub;
  FilteredModule quotient;
  /// Canonical basis of w (sub coordinates) and the standard vectors at the
  /// non-pivot columns of w (quotient coordinates).
  std::vector<Vector> sub_basis;
  std::vector<std::size_t> quotient_coordinates;
};

/// Throws DomainError(NotStable) unless w is phi- and N-stable.
SubQuotient induced_sub_quotient(const FilteredModule& m, const Subspace& w);

/// Unit object: phi = [1], N = [0], single Hodge weight 0.
FilteredModule unit_module(long p);

}  // namespace fmlinv
