#include "checks.hpp"

#include "generators.hpp"

#include "fmlinv/deform.hpp"
#include "fmlinv/oracle.hpp"
#include "fmlinv/triparam.hpp"

#include <algorithm>
#include <sstream>

namespace fmlinv::testing {

namespace {

SweepOutcome pass(std::uint64_t seed) { return {seed, true, true, ""}; }

SweepOutcome skip(std::uint64_t seed, std::string why) { return {seed, true, false, std::move(why)}; }

SweepOutcome fail(std::uint64_t seed, std::string why) { return {seed, false, true, std::move(why)}; }

std::string pair_text(std::size_t s, std::size_t t) {
  std::ostringstream os;
  os << "(" << s << "," << t << ")";
  return os.str();
}

// General random instances, optionally mixed with planted maximal-monodromy
// modules (whose critical pairs are all adjacent).
Refinement strongly_critical_candidate(Rng& rng, bool allow_planted) {
  const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 3, 5));
  if (allow_planted && uniform_int(rng, 0, 3) == 0) {
    const PlantedMaxMonodromy planted = random_max_monodromy(rng, n, 2);
    return make_refinement(planted.module, max_monodromy_refinement(planted.module).flag);
  }
  RandomOptions o;
  o.n = n;
  o.chain_bias = 0.8;
  const RandomInstance inst = random_instance(rng, o);
  return make_refinement(inst.module, inst.flag);
}

}  // namespace

SweepOutcome check_decomposition_independence(std::uint64_t seed) {
  Rng rng(seed);
  // Non-adjacent pairs are where the choice of decomposition matters, so the
  // first attempts look only for those.
  for (int attempt = 0; attempt < 40; ++attempt) {
    const bool want_gap = attempt < 12;
    const Refinement r = strongly_critical_candidate(rng, !want_gap);
    std::vector<LInvariantEntry> strong;
    for (const auto& e : l_invariant_report(r).entries)
      if (e.verdict == StrongVerdict::StronglyCritical && (!want_gap || e.t > e.s + 1)) strong.push_back(e);
    if (strong.empty()) continue;
    const auto pick = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(strong.size()) - 1));
    const LInvariantEntry& e = strong[pick];

    std::vector<SDecomposition> perfect;
    for (int tries = 0; tries < 30 && perfect.size() < 2; ++tries) {
      const auto d = random_s_decomposition(r, e.s, rng);
      if (d && d->perfect()) perfect.push_back(*d);
    }
    if (perfect.size() < 2) continue;
    for (const auto& d : perfect) {
      if (d.l_dec != e.l_invariant || d.l_dec_prime != e.l_invariant)
        return fail(seed, "L differs between perfect decompositions at s=" + std::to_string(e.s));
    }
    return {seed, true, true, e.t > e.s + 1 ? "gap" : "adjacent"};
  }
  return skip(seed, "no strongly critical pair with two perfect decompositions");
}

SweepOutcome check_duality(std::uint64_t seed) {
  Rng rng(seed);
  RandomOptions o;
  o.n = static_cast<std::size_t>(uniform_int(rng, 1, 5));
  const RandomInstance inst = random_instance(rng, o);
  const Refinement r = make_refinement(inst.module, inst.flag);
  const Refinement d = dual_refinement(r);
  const std::size_t n = r.dim();

  std::vector<CriticalPair> mapped;
  for (const auto& p : critical_indices(r)) mapped.push_back({n + 1 - p.t, n + 1 - p.s});
  std::sort(mapped.begin(), mapped.end());
  if (mapped != critical_indices(d)) return fail(seed, "critical pairs do not map to (n+1-t, n+1-s)");

  const Matrix g = graded_monodromy(r).matrix();
  const Matrix gd = graded_monodromy(d).matrix();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (gd(a, b) != -g(n - 1 - b, n - 1 - a)) return fail(seed, "dual graded monodromy is not -N_F transposed");

  const auto report = l_invariant_report(r);
  const auto dual_report = l_invariant_report(d);
  for (const auto& e : report.entries) {
    const auto it = std::find_if(dual_report.entries.begin(), dual_report.entries.end(),
                                 [&](const LInvariantEntry& x) { return x.s == n + 1 - e.t; });
    if (it == dual_report.entries.end()) return fail(seed, "missing dual entry for " + pair_text(e.s, e.t));
    if (it->verdict != e.verdict) return fail(seed, "dual verdict differs at " + pair_text(e.s, e.t));
    if (it->l_invariant != e.l_invariant) return fail(seed, "dual L differs at " + pair_text(e.s, e.t));
  }

  const Refinement back = dual_refinement(d);
  if (!(back.base.phi == r.base.phi && back.base.monodromy == r.base.monodromy &&
        back.base.filtration.canonical() == r.base.filtration.canonical()))
    return fail(seed, "double dual module differs");
  for (std::size_t i = 1; i <= n; ++i)
    if (back.step(i) != r.step(i)) return fail(seed, "double dual flag differs");
  return pass(seed);
}

SweepOutcome check_colmez(std::uint64_t seed) {
  Rng rng(seed);
  const ColmezData data{small_rational(rng, 9), small_rational(rng, 9), small_rational(rng, 9)};
  const Scalar l = small_rational(rng, 9);
  const ColmezTranslation t = colmez_translate(data, l);
  const Scalar res = residual(l, 1, 2, t.family);
  if (t.expression != -res / 2) return fail(seed, "expression is not -residual/2");
  if ((t.expression == 0) != (res == 0)) return fail(seed, "vanishing conditions differ");
  if (t.family.characters[0].eps_w != 0 || t.family.characters[1].eps_w != data.d_kappa)
    return fail(seed, "weight derivatives are not (0, dkappa)");
  return pass(seed);
}

SweepOutcome check_oracle_refinement(std::uint64_t seed) {
  Rng rng(seed);
  RandomOptions o;
  o.n = static_cast<std::size_t>(uniform_int(rng, 1, 5));
  o.distinct_eigenvalues = uniform_int(rng, 0, 1) == 0;
  const RandomInstance inst = random_instance(rng, o);
  const Refinement r = make_refinement(inst.module, inst.flag);
  if (critical_indices(r) != oracle_critical_indices(r)) return fail(seed, "critical indices differ from the oracle");
  for (const auto& e : l_invariant_report(r).entries) {
    if (e.verdict != StrongVerdict::StronglyCritical) continue;
    if (oracle_l_invariant(r, e.s, e.decomposition) != *e.l_invariant)
      return fail(seed, "L differs from the oracle at s=" + std::to_string(e.s));
  }
  return pass(seed);
}

SweepOutcome check_oracle_admissibility(std::uint64_t seed) {
  Rng rng(seed);
  RandomOptions o;
  o.n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
  o.distinct_eigenvalues = true;
  const RandomInstance inst = random_instance(rng, o);
  const AdmissibilityReport rep = is_admissible(inst.module);
  const OracleAdmissibility oracle = oracle_admissible(inst.module);
  if (!rep.certifying) return fail(seed, "distinct eigenvalues gave a non-certifying verdict");
  if (oracle.admissible != (rep.verdict == AdmissibilityVerdict::Admissible))
    return fail(seed, "admissibility differs from the oracle");
  if (oracle.t_hodge != rep.t_hodge || oracle.t_newton != rep.t_newton) return fail(seed, "t_H or t_N differs");
  return pass(seed);
}

SweepOutcome check_parameter_roundtrip(std::uint64_t seed) {
  Rng rng(seed);
  static const long primes[] = {2, 3, 5, 7, 11};
  const long p = primes[uniform_int(rng, 0, 4)];
  const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 6));
  std::vector<Scalar> alphas;
  std::vector<long> ks;
  for (std::size_t i = 0; i < n; ++i) {
    alphas.push_back(nonzero_rational(rng, 12) * power(Scalar(p), uniform_int(rng, -3, 3)));
    ks.push_back(uniform_int(rng, -6, 6));
  }
  const auto chars = parameters_from_invariants(alphas, ks, p);
  for (std::size_t i = 0; i < n; ++i)
    if (chars[i].weight != -ks[i] || chars[i].value_at_p != alphas[i] * power(Scalar(p), -ks[i]))
      return fail(seed, "parameter formula violated at i=" + std::to_string(i + 1));
  const auto [a2, k2] = parameters_to_invariants(chars, p);
  if (a2 != alphas || k2 != ks) return fail(seed, "roundtrip changed (alpha, k)");
  return pass(seed);
}

InstanceCheck representative_check(const Refinement& r) {
  return [r, g = graded_monodromy(r)](std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Scalar> c;
    const Refinement moved = make_refinement(r.base, perturb_representatives(r.flag, rng, &c));
    const GradedMonodromy gm = graded_monodromy(moved);
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
      if (g.targets[i].has_value() != gm.targets[i].has_value())
        return fail(seed, "zero/nonzero changed at gr_" + std::to_string(i + 1));
      if (!g.targets[i]) continue;
      const std::size_t j = g.targets[i]->j;
      if (gm.targets[i]->j != j) return fail(seed, "target index changed at gr_" + std::to_string(i + 1));
      if (gm.targets[i]->coeff != g.targets[i]->coeff * c[i] / c[j - 1])
        return fail(seed, "coefficient class changed at gr_" + std::to_string(i + 1));
    }
    return pass(seed);
  };
}

SweepOutcome check_planted_max_monodromy(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 5));
  const PlantedMaxMonodromy planted = random_max_monodromy(rng, n, uniform_int(rng, 0, 1) == 0 ? 2 : 3);
  const MaxMonodromyResult r = max_monodromy_refinement(planted.module);
  if (r.transform.ell != planted.ell) return fail(seed, "planted ell not recovered");
  if (!r.routes_agree()) return fail(seed, "ell_{s,s+1} differs from L_{F,s}");
  return pass(seed);
}

}  // namespace fmlinv::testing
