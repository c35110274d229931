#pragma once

#include "fmlinv/matrix.hpp"
#include "fmlinv/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fmlinv {

// A subspace of E^n stored by its unique reduced echelon basis. Two
// subspaces are equal iff their stored bases coincide.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);
  static Subspace span(std::size_t ambient, const std::vector<Vector>& generators);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == ambient_; }

  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Matrix basis_matrix() const { return Matrix::from_rows(basis_, ambient_); }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Row space of `rows` in canonical form.
Subspace canonicalize(const Matrix& rows);

/// Throw std::invalid_argument on ambient mismatch.
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

/// Functionals vanishing on `a`, in dual coordinates.
Subspace annihilator(const Subspace& a);

/// Coefficients of v on the canonical basis of `a`, or nullopt when
/// v is not a member.
std::optional<Vector> solve_in_span(const Subspace& a, const Vector& v);

/// map(a) under the column-action convention.
Subspace image(const Matrix& map, const Subspace& a);

/// {x : map x in a}.
Subspace preimage(const Matrix& map, const Subspace& a);

/// Does map send `a` into itself?
bool is_stable(const Matrix& map, const Subspace& a);

/// Some coefficients c with sum_k c_k generators[k] = target, or nullopt.
std::optional<Vector> solve_combination(const std::vector<Vector>& generators, const Vector& target);

/// Total order used for deterministic output: by dimension, then
/// lexicographically on the canonical basis.
bool canonical_less(const Subspace& a, const Subspace& b);

// Full flag 0 = F_0 < F_1 < ... < F_n = E^n, with F_i spanned by the first
// i stored vectors.
class Flag {
 public:
  Flag() = default;
  /// Throws std::invalid_argument unless the vectors form a basis.
  explicit Flag(std::vector<Vector> vectors);

  std::size_t ambient_dim() const { return vectors_.size(); }
  const std::vector<Vector>& vectors() const { return vectors_; }
  /// 1-based, as in F_1 .. F_n.
  const Vector& vector(std::size_t i) const { return vectors_.at(i - 1); }
  /// F_i for 0 <= i <= n.
  const Subspace& step(std::size_t i) const { return steps_.at(i); }
  /// Columns are the flag vectors.
  Matrix basis_matrix() const { return Matrix::from_columns(vectors_, vectors_.size()); }

 private:
  std::vector<Vector> vectors_;
  std::vector<Subspace> steps_;
};

}  // namespace fmlinv
