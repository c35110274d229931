#pragma once

#include "fmlinv/matrix.hpp"
#include "fmlinv/subspace.hpp"

#include <vector>

namespace fmlinv {

/// Coefficients in ascending degree order.
using Polynomial = std::vector<Scalar>;

/// det(x I - m), monic.
Polynomial characteristic_polynomial(const Matrix& m);

Scalar evaluate(const Polynomial& poly, const Scalar& x);

struct RationalRoot {
  Scalar value;
  unsigned multiplicity = 0;
};

/// All rational roots with multiplicity, sorted by value.
std::vector<RationalRoot> rational_roots(const Polynomial& poly);

struct Eigenspace {
  Scalar eigenvalue;
  unsigned algebraic_multiplicity = 0;
  Subspace space;
};

struct EigenDecomposition {
  std::vector<Eigenspace> spaces;  // sorted by eigenvalue
  bool splits = false;             // all roots rational
  bool semisimple = false;         // splits and eigenspaces span

  std::vector<Scalar> distinct_eigenvalues() const;
  /// Eigenvalues repeated by algebraic multiplicity, ascending.
  std::vector<Scalar> eigenvalue_multiset() const;
  bool distinct() const;
};

EigenDecomposition eigen_decomposition(const Matrix& m);

/// Projection of v onto the alpha-eigenspace along the others, via the
/// Lagrange projector prod_{b != alpha} (m - b)/(alpha - b). Requires m to
/// be semisimple with exactly `eigenvalues` as its distinct spectrum.
Vector eigen_projection(const Matrix& m, const std::vector<Scalar>& eigenvalues, const Scalar& alpha,
                        const Vector& v);

/// True iff prod over distinct eigenvalues (m - a) vanishes.
bool annihilated_by_distinct_roots(const Matrix& m, const std::vector<Scalar>& eigenvalues);

}  // namespace fmlinv
