#include "fmlinv/oracle.hpp"

#include "fmlinv/errors.hpp"

namespace fmlinv {

std::vector<CriticalPair> oracle_critical_indices(const Refinement& r) {
  const std::size_t n = r.flag.ambient_dim();
  const Matrix& N = r.base.monodromy;
  std::vector<Subspace> n_steps;
  for (std::size_t i = 0; i <= n; ++i) n_steps.push_back(image(N, r.flag.step(i)));

  std::vector<CriticalPair> out;
  for (std::size_t s = 1; s <= n; ++s) {
    for (std::size_t t = s + 1; t <= n; ++t) {
      const bool quiet_before =
          intersect(n_steps[t - 1], r.flag.step(s)).dim() == intersect(n_steps[t - 1], r.flag.step(s - 1)).dim();
      const bool grows_at_t =
          intersect(n_steps[t], r.flag.step(s)).dim() > intersect(n_steps[t], r.flag.step(s - 1)).dim();
      if (quiet_before && grows_at_t) out.push_back({s, t});
    }
  }
  return out;
}

Scalar oracle_l_invariant(const Refinement& r, std::size_t s, const SDecomposition& dec) {
  const std::size_t n = r.flag.ambient_dim();
  const std::size_t t = dec.t;
  if (s < 1 || t <= s || t > n) throw DomainError(ErrorCode::IndexOutOfRange, "bad critical pair", s);

  // Rows s..t of the inverse flag matrix: coordinates on F_t modulo F_{s-1}.
  const Matrix to_flag = *inverse(r.flag.basis_matrix());
  const std::size_t m = t - s + 1;
  Matrix project(m, n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = 0; c < n; ++c) project(a, c) = to_flag(s - 1 + a, c);

  const Vector es = project.apply(dec.e_s);
  const Vector et = project.apply(dec.e_t);
  const Subspace plane = Subspace::span(m, {es, et});
  if (plane.dim() != 2) throw DomainError(ErrorCode::NoJumpLine, "e_s and e_t are dependent modulo F_{s-1}", s);

  const Filtration& fil = r.base.filtration;
  for (long level = fil.lowest_level(); level <= fil.highest_level(); ++level) {
    const Subspace piece = intersect(image(project, intersect(fil.at(level), r.flag.step(t))), plane);
    if (piece.dim() != 1) continue;
    const auto c = solve_combination({et, es}, piece.basis().front());
    if (!c || (*c)[0] == 0) break;
    return (*c)[1] / (*c)[0];
  }
  throw DomainError(ErrorCode::NoJumpLine, "span(e_s, e_t) has no jump line through e_t", s);
}

OracleAdmissibility oracle_admissible(const FilteredModule& m) {
  const std::size_t n = m.phi.rows();
  const auto roots = rational_roots(characteristic_polynomial(m.phi));
  std::size_t found = 0;
  for (const auto& root : roots) {
    found += root.multiplicity;
    if (root.multiplicity > 1) throw DomainError(ErrorCode::RepeatedEigenvalues, "repeated Frobenius eigenvalue");
  }
  if (found != n) throw DomainError(ErrorCode::IrrationalEigenvalues, "characteristic polynomial does not split");

  std::vector<Vector> lines;
  std::vector<long> slopes;
  for (const auto& root : roots) {
    const auto kernel = kernel_basis(m.phi - root.value * Matrix::identity(n));
    lines.push_back(kernel.front());
    slopes.push_back(valuation(root.value, m.p));
  }

  const Filtration& fil = m.filtration;
  auto hodge_number = [&](const Subspace& w) {
    long total = 0;
    for (long i = fil.lowest_level() - 1; i <= fil.highest_level(); ++i) {
      const long drop = static_cast<long>(intersect(fil.at(i), w).dim()) -
                        static_cast<long>(intersect(fil.at(i + 1), w).dim());
      total += i * drop;
    }
    return total;
  };

  OracleAdmissibility out;
  out.admissible = true;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    std::vector<Vector> gens;
    long newton = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1UL << i)) {
        gens.push_back(lines[i]);
        newton += slopes[i];
      }
    }
    const Subspace w = Subspace::span(n, gens);
    bool stable = true;
    for (const auto& g : gens) stable = stable && w.contains(m.monodromy.apply(g));
    if (!stable) continue;
    ++out.subsets_tested;
    const long hodge = hodge_number(w);
    if (mask + 1 == (1UL << n)) {
      out.t_hodge = hodge;
      out.t_newton = newton;
      if (hodge != newton) out.admissible = false;
    } else if (hodge > newton) {
      out.admissible = false;
    }
  }
  return out;
}

}  // namespace fmlinv
