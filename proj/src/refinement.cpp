#include "fmlinv/refinement.hpp"

#include "fmlinv/errors.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fmlinv {

namespace {

std::vector<Scalar> distinct_values(std::vector<Scalar> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<Vector> span_with(const Subspace& base, std::initializer_list<const Vector*> extra) {
  std::vector<Vector> gens = base.basis();
  for (const Vector* v : extra) gens.push_back(*v);
  return gens;
}

/// Largest w with pred(w) for a predicate that is true far below the first
/// level and can only change at the filtration levels.
long top_weight(const std::vector<long>& levels, const std::function<bool(long)>& pred) {
  for (long level : levels) {
    if (!pred(level)) return level - 1;
  }
  throw std::logic_error("vector lies in every filtration step");
}

/// x = a e_t + b e_s + (element of base); returns b / a.
Scalar line_coefficient(const Vector& x, const Vector& e_s, const Vector& e_t, const Subspace& base) {
  std::vector<Vector> gens{e_t, e_s};
  gens.insert(gens.end(), base.basis().begin(), base.basis().end());
  const auto c = solve_combination(gens, x);
  if (!c || (*c)[0] == 0) throw std::logic_error("jump line is not transverse to e_s");
  return (*c)[1] / (*c)[0];
}

/// A basis vector of `space` outside `base` (space ⊋ base).
Vector vector_outside(const Subspace& space, const Subspace& base) {
  for (const auto& b : space.basis())
    if (!base.contains(b)) return b;
  throw std::logic_error("space does not exceed base");
}

}  // namespace

Refinement make_refinement(const FilteredModule& m, const Flag& flag) {
  const std::size_t n = m.dim();
  if (flag.ambient_dim() != n) throw DomainError(ErrorCode::InvalidInput, "flag dimension differs from module dimension");
  for (std::size_t i = 1; i <= n; ++i) {
    if (!is_stable(m.phi, flag.step(i)) || !is_stable(m.monodromy, flag.step(i)))
      throw DomainError(ErrorCode::NotStable, "flag step " + std::to_string(i) + " is not stable under phi and N", i);
  }

  Refinement r;
  r.base = m;
  r.flag = flag;
  const Matrix basis = flag.basis_matrix();
  const Matrix to_flag = *inverse(basis);
  for (std::size_t i = 1; i <= n; ++i) {
    const Vector coords = to_flag.apply(m.phi.apply(flag.vector(i)));
    r.alphas.push_back(coords[i - 1]);
    const Subspace& upper = flag.step(i);
    const Subspace& lower = flag.step(i - 1);
    const auto weights = jump_multiset(m.filtration.levels(), 1, [&](long l) {
      const Subspace fil = m.filtration.at(l);
      return intersect(fil, upper).dim() - intersect(fil, lower).dim();
    });
    r.ks.push_back(weights.front());
  }
  r.spectrum = distinct_values(r.alphas);
  if (!annihilated_by_distinct_roots(m.phi, r.spectrum))
    throw DomainError(ErrorCode::NotSemisimple, "phi is not semisimple");
  return r;
}

Matrix GradedMonodromy::matrix() const {
  const std::size_t n = targets.size();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    if (targets[i]) g(targets[i]->j - 1, i) = targets[i]->coeff;
  return g;
}

GradedMonodromy graded_monodromy(const Refinement& r) {
  const std::size_t n = r.dim();
  const Matrix& N = r.base.monodromy;
  GradedMonodromy out;
  out.targets.resize(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const Subspace before = image(N, r.step(i - 1));
    const Subspace after = image(N, r.step(i));
    if (before == after) continue;

    std::size_t j = 1;
    while (!sum(before, r.step(j)).contains(after)) ++j;

    // N(v_i) = sum_k c_k N(v_k) + sum_l d_l v_l with k < i, l <= j; only the
    // class of the F_j part modulo F_{j-1} is determined, i.e. d_j.
    std::vector<Vector> gens;
    for (std::size_t k = 1; k < i; ++k) gens.push_back(N.apply(r.flag.vector(k)));
    for (std::size_t l = 1; l <= j; ++l) gens.push_back(r.flag.vector(l));
    const auto c = solve_combination(gens, N.apply(r.flag.vector(i)));
    if (!c) throw std::logic_error("graded monodromy: minimal step does not contain N(v_i)");
    out.targets[i - 1] = GradedTarget{j, (*c)[(i - 1) + (j - 1)]};
  }
  return out;
}

std::vector<CriticalPair> critical_indices(const Refinement& r) {
  std::vector<CriticalPair> out;
  const auto g = graded_monodromy(r);
  for (std::size_t i = 0; i < g.targets.size(); ++i)
    if (g.targets[i]) out.push_back({g.targets[i]->j, i + 1});
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> critical_target(const Refinement& r, std::size_t s) {
  for (const auto& pair : critical_indices(r))
    if (pair.s == s) return pair.t;
  return std::nullopt;
}

std::vector<Vector> perfect_basis(const Refinement& r) {
  std::vector<Vector> out;
  for (std::size_t i = 1; i <= r.dim(); ++i)
    out.push_back(normalize_leading(eigen_projection(r.base.phi, r.spectrum, r.alpha(i), r.flag.vector(i))));
  return out;
}

bool is_perfect_basis(const Refinement& r, const std::vector<Vector>& basis) {
  const std::size_t n = r.dim();
  if (basis.size() != n) return false;
  std::vector<Vector> prefix;
  for (std::size_t i = 1; i <= n; ++i) {
    prefix.push_back(basis[i - 1]);
    if (Subspace::span(n, prefix) != r.step(i)) return false;
    if (r.base.phi.apply(basis[i - 1]) != scale(r.alpha(i), basis[i - 1])) return false;
  }
  return true;
}

std::vector<std::string> decomposition_violations(const Refinement& r, std::size_t s, std::size_t t, const Vector& e_s,
                                                  const Vector& e_t, const Subspace& middle_lift) {
  std::vector<std::string> v;
  const std::size_t n = r.dim();
  if (s < 1 || t <= s || t > n) {
    v.push_back("indices out of range");
    return v;
  }
  if (e_s.size() != n || e_t.size() != n || middle_lift.ambient_dim() != n) {
    v.push_back("vectors live in the wrong ambient space");
    return v;
  }
  const Matrix& phi = r.base.phi;
  const Matrix& N = r.base.monodromy;
  const Subspace& below = r.step(s - 1);

  if (!r.step(s).contains(e_s) || below.contains(e_s)) v.push_back("e_s does not span F_s/F_{s-1}");
  if (!r.step(t).contains(e_t) || r.step(t - 1).contains(e_t)) v.push_back("e_t is not in F_t \\ F_{t-1}");
  if (!below.contains(subtract(N.apply(e_t), e_s))) v.push_back("N(e_t) != e_s modulo F_{s-1}");
  if (!below.contains(subtract(phi.apply(e_t), scale(r.alpha(t), e_t)))) v.push_back("phi(e_t) != alpha_t e_t modulo F_{s-1}");

  if (!middle_lift.contains(below) || !r.step(t - 1).contains(middle_lift) || middle_lift.dim() + 2 != t)
    v.push_back("L is not a (t-s-1)-dimensional subspace of F_{t-1}/F_{s-1}");
  else if (middle_lift.contains(e_s) || Subspace::span(n, span_with(middle_lift, {&e_s})) != r.step(t - 1))
    v.push_back("E e_s ⊕ L is not F_{t-1}/F_{s-1}");
  if (!is_stable(phi, middle_lift) || !is_stable(N, middle_lift)) v.push_back("L is not stable under phi and N");

  const Subspace pair = Subspace::span(n, span_with(below, {&e_s, &e_t}));
  if (!is_stable(phi, pair) || !is_stable(N, pair)) v.push_back("E e_s ⊕ E e_t is not stable under phi and N");
  return v;
}

SDecomposition classify_decomposition(const Refinement& r, std::size_t s, const Vector& e_s, const Vector& e_t,
                                      const Subspace& middle_lift) {
  const auto t = critical_target(r, s);
  if (!t) throw DomainError(ErrorCode::NotCritical, "index " + std::to_string(s) + " is not critical", s);
  const auto violations = decomposition_violations(r, s, *t, e_s, e_t, middle_lift);
  if (!violations.empty()) throw DomainError(ErrorCode::InvalidDecomposition, violations.front(), s);

  const std::size_t n = r.dim();
  const auto& fil = r.base.filtration;
  const auto levels = fil.levels();
  const Subspace& below = r.step(s - 1);
  const Subspace& top = r.step(*t);
  auto fil_in_top = [&](long i) { return intersect(fil.at(i), top); };

  SDecomposition d;
  d.s = s;
  d.t = *t;
  d.e_s = e_s;
  d.e_t = e_t;
  d.middle_lift = middle_lift;
  const long k_s = r.k(s);
  const long k_t = r.k(*t);

  // Sub piece E e_s ⊕ E e_t inside F_t/F_{s-1}.
  const Subspace pair = Subspace::span(n, span_with(below, {&e_s, &e_t}));
  auto pair_fil = [&](long i) { return intersect(sum(fil_in_top(i), below), pair); };
  const auto pair_weights = jump_multiset(levels, 2, [&](long i) { return pair_fil(i).dim() - below.dim(); });
  const long pair_ks = top_weight(levels, [&](long i) { return sum(fil_in_top(i), below).contains(e_s); });
  if (pair_ks != k_s) throw std::logic_error("induced weight of e_s disagrees with k_s");
  const long other_t = pair_weights[0] == k_s ? pair_weights[1] : pair_weights[0];
  if (other_t > k_s) {
    d.case_sub = 1;
    d.k_prime_t = other_t;
    d.l_dec = line_coefficient(vector_outside(pair_fil(other_t), below), e_s, e_t, below);
  } else if (other_t < k_s) {
    d.case_sub = 2;
    d.k_prime_t = other_t;
  } else {
    d.case_sub = 3;
  }

  // Quotient piece (F_t/F_{s-1})/L = F_t / middle_lift.
  auto quot_fil = [&](long i) { return sum(fil_in_top(i), middle_lift); };
  const auto quot_weights = jump_multiset(levels, 2, [&](long i) { return quot_fil(i).dim() - middle_lift.dim(); });
  const long quot_ks = top_weight(levels, [&](long i) { return quot_fil(i).contains(e_s); });
  const bool has_kt = quot_weights[0] == k_t || quot_weights[1] == k_t;
  const long other_s = quot_weights[0] == k_t ? quot_weights[1] : quot_weights[0];
  if (!has_kt || other_s != quot_ks) throw std::logic_error("quotient weights inconsistent with k_t");
  if (quot_ks < k_t) {
    d.case_quot = 1;
    d.k_prime_s = quot_ks;
    d.l_dec_prime = line_coefficient(vector_outside(quot_fil(k_t), middle_lift), e_s, e_t, middle_lift);
  } else if (quot_ks > k_t) {
    d.case_quot = 2;
    d.k_prime_s = quot_ks;
  } else {
    d.case_quot = 3;
  }

  if (d.perfect() && *d.l_dec != *d.l_dec_prime)
    throw std::logic_error("perfect s-decomposition with L_dec != L'_dec");
  return d;
}

SDecomposition s_decomposition(const Refinement& r, std::size_t s) {
  const auto t_opt = critical_target(r, s);
  if (!t_opt) throw DomainError(ErrorCode::NotCritical, "index " + std::to_string(s) + " is not critical", s);
  const std::size_t t = *t_opt;
  const std::size_t n = r.dim();
  const Matrix& N = r.base.monodromy;

  // Lift of v_t with N(x) in F_s: N(v_t) = sum_{k<t} c_k N(v_k) + (F_s part).
  std::vector<Vector> gens;
  for (std::size_t k = 1; k < t; ++k) gens.push_back(N.apply(r.flag.vector(k)));
  const auto& fs = r.step(s).basis();
  gens.insert(gens.end(), fs.begin(), fs.end());
  const auto c = solve_combination(gens, N.apply(r.flag.vector(t)));
  if (!c) throw std::logic_error("critical pair without a lift into F_s");
  Vector x = r.flag.vector(t);
  for (std::size_t k = 1; k < t; ++k) x = subtract(x, scale((*c)[k - 1], r.flag.vector(k)));

  const Vector e_t = normalize_leading(eigen_projection(r.base.phi, r.spectrum, r.alpha(t), x));
  const Vector e_s = N.apply(e_t);

  std::vector<Vector> basis = perfect_basis(r);
  basis[s - 1] = e_s;
  basis[t - 1] = e_t;

  // Hyperplane of the alpha_s-part of F_{t-1}/F_{s-1} through N(alpha_t-part),
  // avoiding e_s; completed by perfect-basis vectors in flag order.
  const Subspace& below = r.step(s - 1);
  std::vector<Vector> hyper = below.basis();
  std::size_t alpha_s_count = 0;
  for (std::size_t i = s; i < t; ++i) {
    if (r.alpha(i) == r.alpha(t)) hyper.push_back(N.apply(basis[i - 1]));
    if (r.alpha(i) == r.alpha(s)) ++alpha_s_count;
  }
  Subspace h = Subspace::span(n, hyper);
  const std::size_t target = below.dim() + alpha_s_count - 1;
  if (h.contains(e_s)) throw std::logic_error("N of the alpha_t part captures e_s");
  for (std::size_t i = s; i < t && h.dim() < target; ++i) {
    if (r.alpha(i) != r.alpha(s)) continue;
    Subspace candidate = Subspace::span(n, span_with(h, {&basis[i - 1]}));
    if (candidate.dim() == h.dim() || candidate.contains(e_s)) continue;
    h = std::move(candidate);
  }
  if (h.dim() != target) throw std::logic_error("hyperplane completion failed");

  std::vector<Vector> middle = h.basis();
  for (std::size_t i = s; i < t; ++i)
    if (r.alpha(i) != r.alpha(s)) middle.push_back(basis[i - 1]);
  return classify_decomposition(r, s, e_s, e_t, Subspace::span(n, middle));
}

const char* to_string(StrongVerdict v) {
  switch (v) {
    case StrongVerdict::StronglyCritical: return "StronglyCritical";
    case StrongVerdict::NotDetected: return "NotDetected";
    case StrongVerdict::NotStronglyCritical: return "NotStronglyCritical";
  }
  return "Unknown";
}

LInvariantEntry strong_criticality(const Refinement& r, std::size_t s, const std::vector<SDecomposition>& supplied) {
  LInvariantEntry entry;
  entry.decomposition = s_decomposition(r, s);
  entry.s = s;
  entry.t = entry.decomposition.t;

  if (entry.t == s + 1) {
    const bool strong = r.k(s) < r.k(entry.t);
    if (strong != entry.decomposition.perfect())
      throw std::logic_error("adjacent critical pair: perfection disagrees with k_s < k_t");
    entry.verdict = strong ? StrongVerdict::StronglyCritical : StrongVerdict::NotStronglyCritical;
    if (strong) entry.l_invariant = entry.decomposition.l_dec;
    return entry;
  }

  if (entry.decomposition.perfect()) {
    entry.verdict = StrongVerdict::StronglyCritical;
    entry.l_invariant = entry.decomposition.l_dec;
    return entry;
  }
  for (const auto& d : supplied) {
    if (d.s != s) continue;
    const SDecomposition checked = classify_decomposition(r, s, d.e_s, d.e_t, d.middle_lift);
    if (checked.perfect()) {
      entry.verdict = StrongVerdict::StronglyCritical;
      entry.l_invariant = checked.l_dec;
      entry.decomposition = checked;
      return entry;
    }
  }
  entry.verdict = StrongVerdict::NotDetected;
  return entry;
}

LInvariantReport l_invariant_report(const Refinement& r) {
  LInvariantReport report;
  for (const auto& pair : critical_indices(r)) report.entries.push_back(strong_criticality(r, pair.s));
  return report;
}

Vector monodromy_coefficients(const Refinement& r, const std::vector<Vector>& basis, std::size_t i) {
  const std::vector<Vector> lower(basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(i - 1));
  const auto c = solve_combination(lower, r.base.monodromy.apply(basis[i - 1]));
  if (!c) throw std::logic_error("N(e_i) is not in the span of e_1 .. e_{i-1}");
  return *c;
}

std::vector<Vector> s_perfect_basis(const Refinement& r, std::size_t s) {
  const LInvariantEntry entry = strong_criticality(r, s);
  if (entry.verdict != StrongVerdict::StronglyCritical)
    throw DomainError(ErrorCode::NotStronglyCritical, "index " + std::to_string(s) + " is not strongly critical", s);
  const SDecomposition& d = entry.decomposition;
  const std::size_t t = d.t;
  const std::size_t n = r.dim();
  const Matrix& phi = r.base.phi;

  const std::vector<Vector> perfect = perfect_basis(r);
  std::vector<Vector> basis(n);
  for (std::size_t i = 1; i < s; ++i) basis[i - 1] = perfect[i - 1];
  basis[t - 1] = eigen_projection(phi, r.spectrum, r.alpha(t), d.e_t);
  basis[s - 1] = r.base.monodromy.apply(basis[t - 1]);
  for (std::size_t i = s + 1; i < t; ++i) {
    const Vector lift = vector_outside(intersect(d.middle_lift, r.step(i)), r.step(i - 1));
    basis[i - 1] = normalize_leading(eigen_projection(phi, r.spectrum, r.alpha(i), lift));
  }
  for (std::size_t i = t + 1; i <= n; ++i) {
    basis[i - 1] = perfect[i - 1];
    const Vector mu = monodromy_coefficients(r, basis, i);
    if (mu[s - 1] != 0) basis[i - 1] = subtract(basis[i - 1], scale(mu[s - 1], basis[t - 1]));
  }

  const auto violations = s_perfect_violations(r, s, basis);
  if (!violations.empty()) throw std::logic_error("s-perfect construction failed: " + violations.front());
  return basis;
}

std::vector<std::string> s_perfect_violations(const Refinement& r, std::size_t s, const std::vector<Vector>& basis) {
  std::vector<std::string> v;
  const std::size_t n = r.dim();
  if (!is_perfect_basis(r, basis)) {
    v.push_back("basis is not perfect for the refinement");
    return v;
  }
  const auto t_opt = critical_target(r, s);
  if (!t_opt) {
    v.push_back("s is not critical");
    return v;
  }
  const std::size_t t = *t_opt;
  if (r.base.monodromy.apply(basis[t - 1]) != basis[s - 1]) v.push_back("N(e_t) != e_s");

  std::vector<Vector> middle = r.step(s - 1).basis();
  for (std::size_t i = s + 1; i < t; ++i) middle.push_back(basis[i - 1]);
  const Subspace middle_lift = Subspace::span(n, middle);
  if (!decomposition_violations(r, s, t, basis[s - 1], basis[t - 1], middle_lift).empty()) {
    v.push_back("induced decomposition is not an s-decomposition");
  } else if (!classify_decomposition(r, s, basis[s - 1], basis[t - 1], middle_lift).perfect()) {
    v.push_back("induced s-decomposition is not perfect");
  }

  for (std::size_t i = s + 1; i <= n; ++i) {
    if (i == t) continue;
    if (monodromy_coefficients(r, basis, i)[s - 1] != 0)
      v.push_back("lambda_{" + std::to_string(i) + "," + std::to_string(s) + "} != 0");
  }
  return v;
}

Refinement dual_refinement(const Refinement& r) {
  const std::size_t n = r.dim();
  const FilteredModule dual = dual_module(r.base);
  const Matrix rows = *inverse(r.flag.basis_matrix());
  std::vector<Vector> vectors;
  for (std::size_t i = n; i-- > 0;) vectors.push_back(rows.row(i));
  Refinement d = make_refinement(dual, Flag(std::move(vectors)));
  for (std::size_t i = 1; i <= n; ++i) {
    if (d.alpha(i) != Scalar(1) / r.alpha(n + 1 - i) || d.k(i) != -r.k(n + 1 - i))
      throw std::logic_error("dual refinement orderings do not match");
  }
  return d;
}

std::vector<Flag> enumerate_refinements(const FilteredModule& m) {
  const auto eig = eigen_decomposition(m.phi);
  if (!eig.splits) throw DomainError(ErrorCode::IrrationalEigenvalues, "phi has irrational eigenvalues");
  if (!eig.distinct()) throw DomainError(ErrorCode::RepeatedEigenvalues, "refinement enumeration needs distinct eigenvalues");
  const std::size_t n = m.dim();
  std::vector<Vector> lines;
  for (const auto& s : eig.spaces) lines.push_back(s.space.basis().front());

  std::vector<Flag> out;
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  std::function<void()> extend = [&]() {
    if (order.size() == n) {
      std::vector<Vector> vectors;
      for (auto i : order) vectors.push_back(lines[i]);
      out.emplace_back(std::move(vectors));
      return;
    }
    std::vector<Vector> prefix;
    for (auto i : order) prefix.push_back(lines[i]);
    const Subspace current = Subspace::span(n, prefix);
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      // Adding the line keeps the prefix N-stable iff N of it lands inside.
      const Subspace next = Subspace::span(n, span_with(current, {&lines[i]}));
      if (!next.contains(m.monodromy.apply(lines[i]))) continue;
      used[i] = true;
      order.push_back(i);
      extend();
      order.pop_back();
      used[i] = false;
    }
  };
  extend();
  return out;
}

}  // namespace fmlinv
