#pragma once

#include "fmlinv/dual_number.hpp"
#include "fmlinv/refinement.hpp"
#include "fmlinv/triparam.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fmlinv {

/// First-order variation of one rank-one parameter:
/// delta_i(p) = delta_{i,z}(p) (1 + Z eps_p) and w_i = w_{i,z} + Z eps_w.
struct FirstOrderCharacter {
  Scalar eps_p;
  Scalar eps_w;
  std::optional<Scalar> base_delta_p;
  std::optional<Scalar> base_weight;

  DualNumber delta_p(const Scalar& base) const { return {base, base * eps_p}; }
  DualNumber weight(const Scalar& base) const { return {base, eps_w}; }
};

struct FirstOrderFamily {
  std::vector<FirstOrderCharacter> characters;  // entry i-1 is index i

  std::size_t size() const { return characters.size(); }
  /// (eps_1(p) .. eps_n(p), eps_{1,2} .. eps_{n,2}).
  Vector coordinates() const;
  static FirstOrderFamily from_coordinates(const Vector& coords);
};

/// eps_t(p) - eps_s(p) + L (eps_{t,2} - eps_{s,2}). Throws
/// DomainError(IndexOutOfRange) unless 1 <= s < t <= n.
Scalar residual(const Scalar& l, std::size_t s, std::size_t t, const FirstOrderFamily& family);

struct ConstraintRow {
  std::size_t s = 0;
  std::size_t t = 0;
  Scalar l_invariant;
  Vector coefficients;  // over the 2n family coordinates
};

struct ConstraintSystem {
  std::size_t n = 0;
  std::vector<ConstraintRow> rows;

  Matrix matrix() const;
  /// Row products with the family coordinates.
  Vector apply(const FirstOrderFamily& family) const;
};

/// One row per strongly critical s. Throws DomainError(MissingLInvariant).
ConstraintSystem constraint_system(const Refinement& r, const LInvariantReport& report);

/// NoConstraint marks critical indices that are not strongly critical.
enum class ConstraintStatus { Pass, Fail, Unchecked, NoConstraint };

const char* to_string(ConstraintStatus s);

struct ConstraintCheck {
  std::size_t s = 0;
  std::size_t t = 0;
  StrongVerdict verdict = StrongVerdict::NotDetected;
  std::optional<Scalar> l_invariant;
  std::optional<Scalar> residual;
  ConstraintStatus status = ConstraintStatus::Unchecked;
};

struct DeformationReport {
  std::vector<ConstraintCheck> checks;   // critical s ascending
  std::vector<std::string> base_mismatches;

  bool has_unchecked() const;
  /// Every checked residual is zero and the base point matches.
  bool passed() const;
};

/// Throws DomainError(LengthMismatch) or DomainError(MissingLInvariant).
DeformationReport check_deformation(const Refinement& r, const LInvariantReport& report,
                                    const FirstOrderFamily& family);

/// Two-dimensional inputs, as coefficients of dZ.
struct ColmezData {
  Scalar d_alpha_over_alpha;
  Scalar d_kappa;
  Scalar d_delta;
};

struct ColmezTranslation {
  FirstOrderFamily family;
  Scalar expression;  // dalpha/alpha - L dkappa / 2 + ddelta / 2
};

/// Builds the rank-two family and checks expression = -residual / 2.
ColmezTranslation colmez_translate(const ColmezData& data, const Scalar& l);

}  // namespace fmlinv
