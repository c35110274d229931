#pragma once

#include "fmlinv/module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fmlinv {

// Indices s, t, i, j in this header are 1-based, as in F_1 .. F_n.

/// A full flag of phi- and N-stable subspaces together with the eigenvalue
/// and Hodge weight carried by each graded line.
struct Refinement {
  FilteredModule base;
  Flag flag;
  std::vector<Scalar> alphas;
  std::vector<long> ks;
  std::vector<Scalar> spectrum;  // distinct eigenvalues of phi

  std::size_t dim() const { return base.dim(); }
  const Scalar& alpha(std::size_t i) const { return alphas.at(i - 1); }
  long k(std::size_t i) const { return ks.at(i - 1); }
  const Subspace& step(std::size_t i) const { return flag.step(i); }
};

/// Throws DomainError(NotStable, index = first bad step) or
/// DomainError(NotSemisimple).
Refinement make_refinement(const FilteredModule& m, const Flag& flag);

struct GradedTarget {
  std::size_t j = 0;
  Scalar coeff;  // N_F(class of v_i) = coeff * (class of v_j)

  friend bool operator==(const GradedTarget&, const GradedTarget&) = default;
};

struct GradedMonodromy {
  std::vector<std::optional<GradedTarget>> targets;  // entry i-1 describes gr_i

  /// Matrix of N_F in the graded basis of flag-vector classes.
  Matrix matrix() const;
};

/// N_F, read on the classes of the flag vectors.
GradedMonodromy graded_monodromy(const Refinement& r);

struct CriticalPair {
  std::size_t s = 0;
  std::size_t t = 0;
  friend auto operator<=>(const CriticalPair&, const CriticalPair&) = default;
};

/// Pairs (s, t_F(s)) sorted by s.
std::vector<CriticalPair> critical_indices(const Refinement& r);

/// t_F(s), or nullopt when s is not critical.
std::optional<std::size_t> critical_target(const Refinement& r, std::size_t s);

/// Eigen-projection of each flag vector onto its graded eigenvalue,
/// normalized to leading coefficient 1.
std::vector<Vector> perfect_basis(const Refinement& r);

/// Compatible with the flag and phi(e_i) = alpha_i e_i.
bool is_perfect_basis(const Refinement& r, const std::vector<Vector>& basis);

// An s-decomposition F_t/F_{s-1} = E e_s ⊕ L ⊕ E e_t, stored through lifts:
// e_s, e_t are vectors of D and L is stored as its preimage in F_{t-1}
// (which contains F_{s-1}).
struct SDecomposition {
  std::size_t s = 0;
  std::size_t t = 0;
  Vector e_s;
  Vector e_t;
  Subspace middle_lift;

  int case_sub = 3;   // 1, 2 or 3 for the piece E e_s ⊕ E e_t
  int case_quot = 3;  // 1, 2 or 3 standing for 1', 2', 3' on the quotient by L
  std::optional<long> k_prime_t;
  std::optional<long> k_prime_s;
  std::optional<Scalar> l_dec;
  std::optional<Scalar> l_dec_prime;

  bool perfect() const {
    return case_sub == 1 && case_quot == 1 && k_prime_s && k_prime_t && *k_prime_s < *k_prime_t;
  }
};

/// Reasons (e_s, e_t, middle_lift) fails to be an s-decomposition for the
/// critical pair (s, t); empty when valid.
std::vector<std::string> decomposition_violations(const Refinement& r, std::size_t s, std::size_t t, const Vector& e_s,
                                                  const Vector& e_t, const Subspace& middle_lift);

/// Validates and fills the case classification. Throws
/// DomainError(InvalidDecomposition) when the data is not an s-decomposition.
SDecomposition classify_decomposition(const Refinement& r, std::size_t s, const Vector& e_s, const Vector& e_t,
                                      const Subspace& middle_lift);

/// The deterministic s-decomposition: e_t is the alpha_t-projection of the
/// flag-vector lift with N(e_t) in F_s, e_s = N(e_t), and L uses the
/// echelon-first hyperplane completion. Throws DomainError(NotCritical).
SDecomposition s_decomposition(const Refinement& r, std::size_t s);

enum class StrongVerdict { StronglyCritical, NotDetected, NotStronglyCritical };

const char* to_string(StrongVerdict v);

struct LInvariantEntry {
  std::size_t s = 0;
  std::size_t t = 0;
  StrongVerdict verdict = StrongVerdict::NotDetected;
  std::optional<Scalar> l_invariant;
  SDecomposition decomposition;  // the decomposition the verdict was read from
};

/// For t = s + 1 the verdict is exact (k_s < k_t). For t > s + 1 a perfect
/// canonical or supplied decomposition proves strong criticality; otherwise
/// the verdict is NotDetected. Throws DomainError(NotCritical).
LInvariantEntry strong_criticality(const Refinement& r, std::size_t s,
                                   const std::vector<SDecomposition>& supplied = {});

struct LInvariantReport {
  std::vector<LInvariantEntry> entries;  // one per critical s, ascending
};

LInvariantReport l_invariant_report(const Refinement& r);

/// Throws DomainError(NotStronglyCritical) unless the verdict for s is
/// StronglyCritical.
std::vector<Vector> s_perfect_basis(const Refinement& r, std::size_t s);

/// Every violated s-perfect condition (plus the lambda_{i,s} = 0 consequence
/// for s < i < t); empty when the basis is s-perfect.
std::vector<std::string> s_perfect_violations(const Refinement& r, std::size_t s, const std::vector<Vector>& basis);

/// Coefficients of N(e_i) on e_1 .. e_{i-1} for a perfect basis (0-based
/// result index j-1).
Vector monodromy_coefficients(const Refinement& r, const std::vector<Vector>& basis, std::size_t i);

/// Refinement on dual_module(base) with steps (F_{n-i})^perp. Flag vectors
/// are the dual basis of the flag vectors, in reverse order.
Refinement dual_refinement(const Refinement& r);

/// Every refinement when phi has n distinct rational eigenvalues, as flags
/// of normalized eigenvectors; eigenlines are ordered by eigenvalue and the
/// output is lexicographic in that order. Throws RepeatedEigenvalues.
std::vector<Flag> enumerate_refinements(const FilteredModule& m);

}  // namespace fmlinv
