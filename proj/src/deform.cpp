#include "fmlinv/deform.hpp"

#include "fmlinv/errors.hpp"

#include <stdexcept>

namespace fmlinv {

Vector FirstOrderFamily::coordinates() const {
  const std::size_t n = characters.size();
  Vector out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = characters[i].eps_p;
    out[n + i] = characters[i].eps_w;
  }
  return out;
}

FirstOrderFamily FirstOrderFamily::from_coordinates(const Vector& coords) {
  if (coords.size() % 2 != 0) throw std::invalid_argument("family coordinates must have even length");
  const std::size_t n = coords.size() / 2;
  FirstOrderFamily f;
  for (std::size_t i = 0; i < n; ++i) f.characters.push_back({coords[i], coords[n + i], std::nullopt, std::nullopt});
  return f;
}

Scalar residual(const Scalar& l, std::size_t s, std::size_t t, const FirstOrderFamily& family) {
  if (s < 1 || t <= s || t > family.size())
    throw DomainError(ErrorCode::IndexOutOfRange,
                      "need 1 <= s < t <= n, got s=" + std::to_string(s) + " t=" + std::to_string(t));
  const auto& cs = family.characters[s - 1];
  const auto& ct = family.characters[t - 1];
  return ct.eps_p - cs.eps_p + l * (ct.eps_w - cs.eps_w);
}

Matrix ConstraintSystem::matrix() const {
  std::vector<Vector> out;
  for (const auto& row : rows) out.push_back(row.coefficients);
  return Matrix::from_rows(out, 2 * n);
}

Vector ConstraintSystem::apply(const FirstOrderFamily& family) const {
  if (family.size() != n) throw DomainError(ErrorCode::LengthMismatch, "family length differs from module dimension");
  const Vector x = family.coordinates();
  Vector out;
  for (const auto& row : rows) out.push_back(dot(row.coefficients, x));
  return out;
}

ConstraintSystem constraint_system(const Refinement& r, const LInvariantReport& report) {
  ConstraintSystem sys;
  sys.n = r.dim();
  for (const auto& e : report.entries) {
    if (e.verdict != StrongVerdict::StronglyCritical) continue;
    if (!e.l_invariant)
      throw DomainError(ErrorCode::MissingLInvariant, "strongly critical index without an L value", e.s);
    ConstraintRow row{e.s, e.t, *e.l_invariant, zero_vector(2 * sys.n)};
    row.coefficients[e.t - 1] += 1;
    row.coefficients[e.s - 1] -= 1;
    row.coefficients[sys.n + e.t - 1] += *e.l_invariant;
    row.coefficients[sys.n + e.s - 1] -= *e.l_invariant;
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

const char* to_string(ConstraintStatus s) {
  switch (s) {
    case ConstraintStatus::Pass: return "Pass";
    case ConstraintStatus::Fail: return "Fail";
    case ConstraintStatus::Unchecked: return "Unchecked";
    case ConstraintStatus::NoConstraint: return "NoConstraint";
  }
  return "Unknown";
}

bool DeformationReport::has_unchecked() const {
  for (const auto& c : checks)
    if (c.status == ConstraintStatus::Unchecked) return true;
  return false;
}

bool DeformationReport::passed() const {
  if (!base_mismatches.empty()) return false;
  for (const auto& c : checks)
    if (c.status == ConstraintStatus::Fail) return false;
  return true;
}

DeformationReport check_deformation(const Refinement& r, const LInvariantReport& report,
                                    const FirstOrderFamily& family) {
  const std::size_t n = r.dim();
  if (family.size() != n)
    throw DomainError(ErrorCode::LengthMismatch,
                      "family has " + std::to_string(family.size()) + " characters, module dimension is " +
                          std::to_string(n));

  DeformationReport out;
  const auto base = refinement_to_parameters(r);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = family.characters[i];
    if (c.base_delta_p && *c.base_delta_p != base[i].value_at_p)
      out.base_mismatches.push_back("delta_" + std::to_string(i + 1) + "(p): family " + to_string(*c.base_delta_p) +
                                    ", refinement " + to_string(base[i].value_at_p));
    if (c.base_weight && *c.base_weight != base[i].weight)
      out.base_mismatches.push_back("w_" + std::to_string(i + 1) + ": family " + to_string(*c.base_weight) +
                                    ", refinement " + to_string(base[i].weight));
  }

  for (const auto& e : report.entries) {
    ConstraintCheck check{e.s, e.t, e.verdict, e.l_invariant, std::nullopt, ConstraintStatus::Unchecked};
    if (e.verdict == StrongVerdict::StronglyCritical) {
      if (!e.l_invariant)
        throw DomainError(ErrorCode::MissingLInvariant, "strongly critical index without an L value", e.s);
      check.residual = residual(*e.l_invariant, e.s, e.t, family);
      check.status = *check.residual == 0 ? ConstraintStatus::Pass : ConstraintStatus::Fail;
    } else if (e.verdict == StrongVerdict::NotStronglyCritical) {
      check.status = ConstraintStatus::NoConstraint;
    }
    out.checks.push_back(std::move(check));
  }
  return out;
}

ColmezTranslation colmez_translate(const ColmezData& data, const Scalar& l) {
  ColmezTranslation out;
  const Scalar& da = data.d_alpha_over_alpha;
  out.family.characters = {
      {da, 0, std::nullopt, std::nullopt},
      {-data.d_delta - da, data.d_kappa, std::nullopt, std::nullopt},
  };
  out.expression = da - l * data.d_kappa / 2 + data.d_delta / 2;
  if (out.expression != -residual(l, 1, 2, out.family) / 2)
    throw std::logic_error("rank-two expression disagrees with the residual");
  return out;
}

}  // namespace fmlinv
