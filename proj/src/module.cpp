#include "fmlinv/module.hpp"

#include "fmlinv/errors.hpp"

#include <algorithm>
#include <numeric>

namespace fmlinv {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<Vector> kron_span(const Subspace& a, const Subspace& b) {
  std::vector<Vector> out;
  for (const auto& u : a.basis())
    for (const auto& w : b.basis()) {
      Vector v(u.size() * w.size());
      for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) v[i * w.size() + j] = u[i] * w[j];
      out.push_back(std::move(v));
    }
  return out;
}

/// Matrix of `map` restricted to the phi-stable subspace w, in the
/// canonical basis of w.
Matrix restrict_to(const Matrix& map, const Subspace& w) {
  Matrix out(w.dim(), w.dim());
  for (std::size_t c = 0; c < w.dim(); ++c) {
    auto coeffs = solve_in_span(w, map.apply(w.basis()[c]));
    if (!coeffs) throw DomainError(ErrorCode::NotStable, "subspace is not stable under the operator");
    for (std::size_t r = 0; r < w.dim(); ++r) out(r, c) = (*coeffs)[r];
  }
  return out;
}

// Quotient by w, with coordinates read at the non-pivot columns of w's
// reduced echelon basis.
struct QuotientMap {
  const Subspace& w;
  std::vector<std::size_t> free_columns;

  explicit QuotientMap(const Subspace& space) : w(space) {
    std::vector<bool> pivot(w.ambient_dim(), false);
    for (auto c : w.pivots()) pivot[c] = true;
    for (std::size_t c = 0; c < w.ambient_dim(); ++c)
      if (!pivot[c]) free_columns.push_back(c);
  }

  Vector operator()(const Vector& x) const {
    Vector reduced = x;
    for (std::size_t r = 0; r < w.dim(); ++r) {
      const Scalar coeff = x[w.pivots()[r]];
      if (coeff == 0) continue;
      const Vector& row = w.basis()[r];
      for (std::size_t c = 0; c < reduced.size(); ++c) reduced[c] -= coeff * row[c];
    }
    Vector out;
    out.reserve(free_columns.size());
    for (auto c : free_columns) out.push_back(reduced[c]);
    return out;
  }
};

}  // namespace

ValidationReport validate_module(const FilteredModule& m) {
  ValidationReport report;
  auto& v = report.violations;
  const std::size_t n = m.phi.rows();

  if (!is_prime(m.p)) v.push_back("p = " + std::to_string(m.p) + " is not prime");
  if (!m.phi.is_square()) v.push_back("phi is not square");
  if (m.monodromy.rows() != n || m.monodromy.cols() != n) v.push_back("monodromy has the wrong shape");
  if (!v.empty() && (!m.phi.is_square() || m.monodromy.rows() != n || m.monodromy.cols() != n)) return report;

  if (determinant(m.phi) == 0) v.push_back("phi is not invertible");
  if (!matrix_power(m.monodromy, static_cast<unsigned>(n)).is_zero()) v.push_back("monodromy is not nilpotent");
  if (m.monodromy * m.phi != Scalar(m.p) * (m.phi * m.monodromy)) v.push_back("N·phi != p·phi·N");

  const auto& steps = m.filtration.steps();
  if (m.filtration.ambient_dim() != n) {
    v.push_back("filtration ambient dimension differs from the module dimension");
    return report;
  }
  if (n == 0) return report;
  if (steps.empty()) {
    v.push_back("filtration has no steps");
    return report;
  }
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (steps[k].space.ambient_dim() != n) {
      v.push_back("filtration step " + std::to_string(k) + " lives in the wrong ambient space");
      return report;
    }
  }
  if (!steps.front().space.is_full()) v.push_back("first filtration step is not the whole space (not exhaustive)");
  if (!steps.back().space.is_zero()) v.push_back("last filtration step is not zero (not separated)");
  for (std::size_t k = 1; k < steps.size(); ++k) {
    if (steps[k].jump <= steps[k - 1].jump)
      v.push_back("filtration jumps not strictly increasing at step " + std::to_string(k));
    if (!steps[k - 1].space.contains(steps[k].space) || steps[k - 1].space == steps[k].space)
      v.push_back("filtration spaces not strictly decreasing at step " + std::to_string(k));
  }
  return report;
}

HodgeData induced_hodge_data(const FilteredModule& m, const Subspace& w) {
  HodgeData data;
  data.weights = jump_multiset(m.filtration.levels(), w.dim(),
                               [&](long i) { return intersect(m.filtration.at(i), w).dim(); });
  data.t_hodge = std::accumulate(data.weights.begin(), data.weights.end(), 0L);
  return data;
}

HodgeData hodge_data(const FilteredModule& m) { return induced_hodge_data(m, Subspace::full(m.dim())); }

NewtonData newton_data(const FilteredModule& m) {
  const auto eig = eigen_decomposition(m.phi);
  if (!eig.splits) throw DomainError(ErrorCode::IrrationalEigenvalues, "characteristic polynomial of phi does not split over Q");
  NewtonData data;
  for (const auto& alpha : eig.eigenvalue_multiset()) data.slopes.push_back(valuation(alpha, m.p));
  std::sort(data.slopes.begin(), data.slopes.end());
  data.t_newton = std::accumulate(data.slopes.begin(), data.slopes.end(), 0L);
  return data;
}

long restricted_newton_number(const FilteredModule& m, const Subspace& w) {
  if (w.is_zero()) return 0;
  return valuation(determinant(restrict_to(m.phi, w)), m.p);
}

std::vector<Subspace> stable_subspaces(const FilteredModule& m) {
  const auto eig = eigen_decomposition(m.phi);
  if (!eig.splits) throw DomainError(ErrorCode::IrrationalEigenvalues, "phi has irrational eigenvalues");
  if (!eig.distinct()) throw DomainError(ErrorCode::RepeatedEigenvalues, "stable-subspace enumeration needs distinct eigenvalues");

  const std::size_t n = m.dim();
  std::vector<Vector> lines;
  for (const auto& s : eig.spaces) lines.push_back(s.space.basis().front());

  // N sends the alpha-line into the alpha/p-line, so closure under N is a
  // property of the index set.
  std::vector<std::optional<std::size_t>> successor(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector image = m.monodromy.apply(lines[i]);
    if (is_zero(image)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (Subspace::span(n, {lines[j]}).contains(image)) {
        successor[i] = j;
        break;
      }
    }
  }

  std::vector<Subspace> out;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    bool closed = true;
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < n && closed; ++i) {
      if ((mask >> i & 1UL) == 0) continue;
      gens.push_back(lines[i]);
      if (successor[i] && (mask >> *successor[i] & 1UL) == 0) closed = false;
    }
    if (closed) out.push_back(Subspace::span(n, gens));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

const char* to_string(AdmissibilityVerdict v) {
  switch (v) {
    case AdmissibilityVerdict::Admissible: return "Admissible";
    case AdmissibilityVerdict::NotAdmissible: return "NotAdmissible";
    case AdmissibilityVerdict::CheckedOnCandidates: return "CheckedOnCandidates";
  }
  return "Unknown";
}

AdmissibilityReport is_admissible(const FilteredModule& m, const std::vector<Subspace>& extra_candidates) {
  AdmissibilityReport report;
  const std::size_t n = m.dim();
  report.t_hodge = hodge_data(m).t_hodge;
  report.t_newton = valuation(determinant(m.phi), m.p);

  const auto eig = eigen_decomposition(m.phi);
  const bool enumerable = eig.splits && eig.distinct();
  std::vector<Subspace> candidates;
  if (enumerable) {
    candidates = stable_subspaces(m);
  } else {
    report.note = eig.splits ? "phi has repeated eigenvalues; checked on supplied candidates only"
                             : "phi has irrational eigenvalues; checked on supplied candidates only";
    for (const auto& c : extra_candidates) {
      if (is_stable(m.phi, c) && is_stable(m.monodromy, c)) {
        if (std::find(candidates.begin(), candidates.end(), c) == candidates.end()) candidates.push_back(c);
      } else {
        report.skipped_candidates.push_back(c);
      }
    }
    std::sort(candidates.begin(), candidates.end(), canonical_less);
  }

  bool all_hold = report.t_hodge == report.t_newton;
  for (const auto& c : candidates) {
    if (c.is_zero() || c.dim() == n) continue;
    SubobjectCheck check{c, induced_hodge_data(m, c).t_hodge, restricted_newton_number(m, c), false};
    check.holds = check.t_hodge <= check.t_newton;
    all_hold = all_hold && check.holds;
    report.checks.push_back(std::move(check));
  }

  if (!all_hold) {
    report.verdict = AdmissibilityVerdict::NotAdmissible;
    report.certifying = true;
  } else if (enumerable) {
    report.verdict = AdmissibilityVerdict::Admissible;
    report.certifying = true;
  } else {
    report.verdict = AdmissibilityVerdict::CheckedOnCandidates;
    report.certifying = false;
  }
  return report;
}

FilteredModule dual_module(const FilteredModule& m) {
  const std::size_t n = m.dim();
  FilteredModule d;
  d.p = m.p;
  auto inv = inverse(m.phi);
  if (!inv) throw DomainError(ErrorCode::InvalidInput, "phi is not invertible");
  d.phi = inv->transpose();
  d.monodromy = -m.monodromy.transpose();
  if (n == 0) {
    d.filtration = Filtration(0, {});
    return d;
  }
  const long lo = m.filtration.lowest_level();
  const long hi = m.filtration.highest_level();
  d.filtration = Filtration::from_function(n, 1 - hi, 2 - lo,
                                           [&](long i) { return annihilator(m.filtration.at(1 - i)); });
  return d;
}

FilteredModule tensor(const FilteredModule& a, const FilteredModule& b) {
  if (a.p != b.p) throw DomainError(ErrorCode::PrimeMismatch, "tensor product of modules over different primes");
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  FilteredModule t;
  t.p = a.p;
  t.phi = kronecker(a.phi, b.phi);
  t.monodromy = kronecker(a.monodromy, Matrix::identity(nb)) + kronecker(Matrix::identity(na), b.monodromy);
  const std::size_t n = na * nb;
  if (n == 0) {
    t.filtration = Filtration(0, {});
    return t;
  }
  const long a_lo = a.filtration.lowest_level() - 1;
  const long a_hi = a.filtration.highest_level();
  const long lo = a_lo + b.filtration.lowest_level() - 1;
  const long hi = a_hi + b.filtration.highest_level();
  t.filtration = Filtration::from_function(n, lo, hi, [&](long i) {
    std::vector<Vector> gens;
    for (long x = a_lo; x <= a_hi; ++x) {
      auto part = kron_span(a.filtration.at(x), b.filtration.at(i - x));
      gens.insert(gens.end(), part.begin(), part.end());
    }
    return Subspace::span(n, gens);
  });
  return t;
}

SubQuotient induced_sub_quotient(const FilteredModule& m, const Subspace& w) {
  if (!is_stable(m.phi, w) || !is_stable(m.monodromy, w))
    throw DomainError(ErrorCode::NotStable, "subspace is not stable under phi and N");
  const std::size_t n = m.dim();
  const std::size_t k = w.dim();
  const bool has_levels = !m.filtration.steps().empty();
  const long lo = has_levels ? m.filtration.lowest_level() - 1 : 0;
  const long hi = has_levels ? m.filtration.highest_level() : 0;

  SubQuotient out;
  out.sub_basis = w.basis();
  out.sub.p = m.p;
  out.sub.phi = restrict_to(m.phi, w);
  out.sub.monodromy = restrict_to(m.monodromy, w);
  if (k == 0) {
    out.sub.filtration = Filtration(0, {});
  } else {
    out.sub.filtration = Filtration::from_function(k, lo, hi, [&](long i) {
      std::vector<Vector> coords;
      const Subspace piece = intersect(m.filtration.at(i), w);
      for (const auto& b : piece.basis()) coords.push_back(*solve_in_span(w, b));
      return Subspace::span(k, coords);
    });
  }

  const QuotientMap q(w);
  const std::size_t qn = n - k;
  out.quotient_coordinates = q.free_columns;
  out.quotient.p = m.p;
  out.quotient.phi = Matrix(qn, qn);
  out.quotient.monodromy = Matrix(qn, qn);
  for (std::size_t c = 0; c < qn; ++c) {
    const Vector u = unit_vector(n, q.free_columns[c]);
    const Vector phi_u = q(m.phi.apply(u));
    const Vector n_u = q(m.monodromy.apply(u));
    for (std::size_t r = 0; r < qn; ++r) {
      out.quotient.phi(r, c) = phi_u[r];
      out.quotient.monodromy(r, c) = n_u[r];
    }
  }
  if (qn == 0) {
    out.quotient.filtration = Filtration(0, {});
  } else {
    out.quotient.filtration = Filtration::from_function(qn, lo, hi, [&](long i) {
      std::vector<Vector> coords;
      const Subspace step = m.filtration.at(i);
      for (const auto& b : step.basis()) coords.push_back(q(b));
      return Subspace::span(qn, coords);
    });
  }
  return out;
}

FilteredModule unit_module(long p) {
  return {p, Matrix::identity(1), Matrix(1, 1), Filtration::pure(1, 0)};
}

}  // namespace fmlinv
