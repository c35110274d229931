#include "fmlinv/deform.hpp"
#include "fmlinv/errors.hpp"

#include "fixtures.hpp"
#include "generators.hpp"

#include <doctest.h>

using namespace fmlinv;
using namespace fmlinv::testing;

namespace {

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

FirstOrderFamily family(std::initializer_list<long> eps_p, std::initializer_list<long> eps_w) {
  Vector coords = vec(eps_p);
  for (long x : eps_w) coords.emplace_back(x);
  return FirstOrderFamily::from_coordinates(coords);
}

template <typename F>
ErrorCode error_code(F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.code();
  }
  FAIL("expected a DomainError");
  return ErrorCode::InvalidInput;
}

DeformationReport check(const Refinement& r, const FirstOrderFamily& f) {
  return check_deformation(r, l_invariant_report(r), f);
}

}  // namespace

TEST_CASE("residual evaluation") {
  CHECK(residual(5, 1, 2, family({0, 0}, {0, 0})) == 0);
  const FirstOrderFamily c = family({0, -7, -5}, {0, 1, 2});
  CHECK(residual(7, 1, 2, c) == 0);
  CHECK(residual(-2, 2, 3, c) == 0);
  CHECK(residual(-2, 2, 3, family({0, -7, -3}, {0, 1, 2})) == 2);
  CHECK(error_code([&] { residual(1, 2, 2, c); }) == ErrorCode::IndexOutOfRange);
  CHECK(error_code([&] { residual(1, 1, 4, c); }) == ErrorCode::IndexOutOfRange);
  CHECK(error_code([&] { residual(1, 0, 1, c); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("character values as dual numbers") {
  const FirstOrderCharacter ch{3, 2, std::nullopt, std::nullopt};
  CHECK(ch.delta_p(5) == DualNumber(5, 15));
  CHECK(ch.delta_p(5).log_derivative() == 3);
  CHECK(ch.weight(-1) == DualNumber(-1, 2));
}

TEST_CASE("constraint systems on the fixtures") {
  const Refinement b = fixture_refinement("fixture_b.json");
  const ConstraintSystem sb = constraint_system(b, l_invariant_report(b));
  REQUIRE(sb.rows.size() == 1);
  CHECK(sb.rows[0].coefficients == vec({-1, 1, -3, 3}));

  const Refinement c = fixture_refinement("fixture_c.json");
  const ConstraintSystem sc = constraint_system(c, l_invariant_report(c));
  CHECK(sc.matrix() == Matrix::from_rows({vec({-1, 1, 0, -7, 7, 0}), vec({0, -1, 1, 0, 2, -2})}, 6));
  CHECK(sc.apply(family({0, -7, -3}, {0, 1, 2})) == vec({0, 2}));
  // Two independent rows in six unknowns.
  CHECK(kernel_basis(sc.matrix()).size() == 4);
  CHECK(kernel_basis(sb.matrix()).size() == 3);

  Workspace w = load_fixture("fixture_c.json");
  w.module.monodromy = Matrix(3, 3);
  const Refinement flat = make_refinement(w.module, w.refinement("F"));
  CHECK(constraint_system(flat, l_invariant_report(flat)).rows.empty());
  Rng rng(1);
  CHECK(check(flat, random_family(rng, 3)).passed());
}

TEST_CASE("deformation checks on the fixtures") {
  const Workspace wc = load_fixture("fixture_c.json");
  const Refinement c = make_refinement(wc.module, wc.refinement("F"));
  const DeformationReport ok = check(c, wc.family("ok"));
  CHECK(ok.passed());
  CHECK(ok.base_mismatches.empty());
  REQUIRE(ok.checks.size() == 2);
  CHECK(ok.checks[0].residual == Scalar(0));
  CHECK(ok.checks[1].status == ConstraintStatus::Pass);

  const DeformationReport bad = check(c, wc.family("perturbed"));
  CHECK_FALSE(bad.passed());
  CHECK(bad.checks[0].status == ConstraintStatus::Pass);
  CHECK(bad.checks[1].status == ConstraintStatus::Fail);
  CHECK(bad.checks[1].residual == Scalar(2));

  const Workspace wb = load_fixture("fixture_b.json");
  CHECK(check(make_refinement(wb.module, wb.refinement("F")), wb.family("ok")).passed());

  CHECK(error_code([&] { check(c, wb.family("ok")); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("base point values must match the refinement parameters") {
  const Workspace wb = load_fixture("fixture_b.json");
  const Refinement b = make_refinement(wb.module, wb.refinement("F"));
  FirstOrderFamily f = wb.family("ok");
  f.characters[1].base_weight = Scalar(5);
  const DeformationReport r = check(b, f);
  CHECK(r.checks[0].status == ConstraintStatus::Pass);
  CHECK(r.base_mismatches.size() == 1);
  CHECK_FALSE(r.passed());
}

TEST_CASE("indices that are not strongly critical impose no constraint") {
  Workspace w = load_fixture("fixture_a.json");
  w.module.filtration =
      Filtration(3, {{-1, Subspace::full(3)},
                     {0, Subspace::span(3, {vec({-5, 1, 0}), vec({1, 0, 0})})},
                     {1, Subspace::zero(3)}});
  const Refinement m = make_refinement(w.module, w.refinement("F"));
  const DeformationReport r = check(m, family({1, 2, 3}, {0, 0, 0}));
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].status == ConstraintStatus::NoConstraint);
  CHECK_FALSE(r.has_unchecked());
  CHECK(r.passed());
}

TEST_CASE("undetected indices are unchecked and a missing L is an error") {
  const Refinement c = fixture_refinement("fixture_c.json");
  LInvariantReport report = l_invariant_report(c);
  report.entries[1].verdict = StrongVerdict::NotDetected;
  report.entries[1].l_invariant.reset();
  const DeformationReport r = check_deformation(c, report, family({0, 0, 9}, {0, 0, 0}));
  CHECK(r.checks[1].status == ConstraintStatus::Unchecked);
  CHECK_FALSE(r.checks[1].residual);
  CHECK(r.has_unchecked());
  CHECK(std::string(to_string(ConstraintStatus::Unchecked)) == "Unchecked");

  report.entries[0].l_invariant.reset();
  CHECK(error_code([&] { check_deformation(c, report, family({0, 0, 0}, {0, 0, 0})); }) ==
        ErrorCode::MissingLInvariant);
}

TEST_CASE("rank-two translation examples") {
  const ColmezTranslation zero = colmez_translate({0, 0, 0}, 5);
  CHECK(zero.expression == 0);
  CHECK(residual(5, 1, 2, zero.family) == 0);

  const ColmezTranslation a = colmez_translate({3, 2, 0}, 3);
  CHECK(a.expression == 0);
  CHECK(a.family.coordinates() == vec({3, -3, 0, 2}));

  const ColmezTranslation b = colmez_translate({4, 2, 0}, 3);
  CHECK(b.expression == 1);
  CHECK(residual(3, 1, 2, b.family) == -2);
}

TEST_CASE("residuals are linear and agree with the constraint rows") {
  Rng rng(8);
  const Refinement c = fixture_refinement("fixture_c.json");
  const LInvariantReport report = l_invariant_report(c);
  const ConstraintSystem sys = constraint_system(c, report);
  for (int trial = 0; trial < 500; ++trial) {
    const FirstOrderFamily f = random_family(rng, 3);
    const FirstOrderFamily g = random_family(rng, 3);
    const Scalar a = small_rational(rng), b = small_rational(rng), l = small_rational(rng);
    Vector combo(6);
    for (std::size_t i = 0; i < 6; ++i) combo[i] = a * f.coordinates()[i] + b * g.coordinates()[i];
    const FirstOrderFamily h = FirstOrderFamily::from_coordinates(combo);
    REQUIRE(residual(l, 1, 3, h) == a * residual(l, 1, 3, f) + b * residual(l, 1, 3, g));

    const Vector products = sys.apply(f);
    const DeformationReport r = check_deformation(c, report, f);
    for (std::size_t k = 0; k < products.size(); ++k) REQUIRE(*r.checks[k].residual == products[k]);
    const bool all_zero = std::all_of(products.begin(), products.end(), [](const Scalar& x) { return x == 0; });
    REQUIRE(r.passed() == all_zero);
  }
  // Kernel vectors always pass.
  for (const auto& v : kernel_basis(sys.matrix()))
    CHECK(check_deformation(c, report, FirstOrderFamily::from_coordinates(v)).passed());
}

TEST_CASE("rank-two translation is consistent on random inputs") {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const ColmezData d{small_rational(rng), small_rational(rng), small_rational(rng)};
    const Scalar l = small_rational(rng);
    const ColmezTranslation t = colmez_translate(d, l);
    REQUIRE(t.expression == -residual(l, 1, 2, t.family) / 2);
    REQUIRE((t.expression == 0) == (residual(l, 1, 2, t.family) == 0));
  }
}
