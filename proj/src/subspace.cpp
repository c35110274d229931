#include "fmlinv/subspace.hpp"

#include <stdexcept>

namespace fmlinv {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("subspaces live in different ambient spaces");
}

}  // namespace

Subspace Subspace::zero(std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < ambient; ++i) rows.push_back(unit_vector(ambient, i));
  return span(ambient, rows);
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& generators) {
  Subspace s;
  s.ambient_ = ambient;
  if (generators.empty()) return s;
  const Matrix reduced = rref(Matrix::from_rows(generators, ambient), &s.pivots_);
  s.basis_ = reduced.row_list();
  return s;
}

bool Subspace::contains(const Vector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector length does not match ambient dimension");
  return solve_in_span(*this, v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  require_same_ambient(*this, other);
  for (const auto& b : other.basis()) {
    if (!contains(b)) return false;
  }
  return true;
}

Subspace canonicalize(const Matrix& rows) { return Subspace::span(rows.cols(), rows.row_list()); }

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  std::vector<Vector> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient_dim(), rows);
}

Subspace annihilator(const Subspace& a) {
  if (a.is_zero()) return Subspace::full(a.ambient_dim());
  return Subspace::span(a.ambient_dim(), kernel_basis(a.basis_matrix()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return annihilator(sum(annihilator(a), annihilator(b)));
}

std::optional<Vector> solve_in_span(const Subspace& a, const Vector& v) {
  if (v.size() != a.ambient_dim()) throw std::invalid_argument("vector length does not match ambient dimension");
  // With a reduced echelon basis the only candidate coefficients are the
  // entries of v at the pivot columns.
  Vector coeffs(a.dim());
  Vector residual = v;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    coeffs[r] = v[a.pivots()[r]];
    if (coeffs[r] == 0) continue;
    const Vector& row = a.basis()[r];
    for (std::size_t c = 0; c < residual.size(); ++c) residual[c] -= coeffs[r] * row[c];
  }
  if (!is_zero(residual)) return std::nullopt;
  return coeffs;
}

Subspace image(const Matrix& map, const Subspace& a) {
  if (map.cols() != a.ambient_dim()) throw std::invalid_argument("map domain does not match subspace");
  std::vector<Vector> images;
  images.reserve(a.dim());
  for (const auto& b : a.basis()) images.push_back(map.apply(b));
  return Subspace::span(map.rows(), images);
}

Subspace preimage(const Matrix& map, const Subspace& a) {
  if (map.rows() != a.ambient_dim()) throw std::invalid_argument("map codomain does not match subspace");
  const Subspace ann = annihilator(a);
  if (ann.is_zero()) return Subspace::full(map.cols());
  // x is in the preimage iff every functional of ann(a) kills map x.
  return Subspace::span(map.cols(), kernel_basis(ann.basis_matrix() * map));
}

bool is_stable(const Matrix& map, const Subspace& a) {
  for (const auto& b : a.basis()) {
    if (!a.contains(map.apply(b))) return false;
  }
  return true;
}

std::optional<Vector> solve_combination(const std::vector<Vector>& generators, const Vector& target) {
  if (generators.empty()) {
    if (is_zero(target)) return Vector{};
    return std::nullopt;
  }
  return solve(Matrix::from_columns(generators, target.size()), target);
}

bool canonical_less(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (std::size_t r = 0; r < a.dim(); ++r) {
    if (a.basis()[r] != b.basis()[r]) return lex_less(a.basis()[r], b.basis()[r]);
  }
  return false;
}

Flag::Flag(std::vector<Vector> vectors) : vectors_(std::move(vectors)) {
  const std::size_t n = vectors_.size();
  steps_.reserve(n + 1);
  steps_.push_back(Subspace::zero(n));
  std::vector<Vector> prefix;
  for (std::size_t i = 0; i < n; ++i) {
    if (vectors_[i].size() != n) throw std::invalid_argument("flag vector has the wrong length");
    prefix.push_back(vectors_[i]);
    steps_.push_back(Subspace::span(n, prefix));
    if (steps_.back().dim() != i + 1) throw std::invalid_argument("flag vectors are linearly dependent");
  }
}

}  // namespace fmlinv
