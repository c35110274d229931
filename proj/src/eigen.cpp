#include "fmlinv/eigen.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace fmlinv {

namespace {

std::vector<std::pair<mpz_class, unsigned>> factorize(mpz_class n) {
  std::vector<std::pair<mpz_class, unsigned>> factors;
  if (n < 0) n = -n;
  for (mpz_class d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0) {
      n /= d;
      ++e;
    }
    if (e != 0) factors.emplace_back(d, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

std::vector<mpz_class> divisors(const mpz_class& n) {
  std::vector<mpz_class> out{1};
  for (const auto& [prime, exp] : factorize(n)) {
    const std::size_t existing = out.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= exp; ++k) {
      pk *= prime;
      for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

/// Divides poly by (x - root), assuming root is a root.
Polynomial deflate(const Polynomial& poly, const Scalar& root) {
  const std::size_t degree = poly.size() - 1;
  Polynomial quotient(degree);
  Scalar carry = 0;
  for (std::size_t k = degree; k-- > 0;) {
    carry = poly[k + 1] + carry * root;
    quotient[k] = carry;
  }
  return quotient;
}

}  // namespace

Polynomial characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  // Faddeev-LeVerrier: exact over Q.
  const std::size_t n = m.rows();
  Polynomial coeffs(n + 1, Scalar(0));
  coeffs[n] = 1;
  Matrix acc(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    acc = m * acc + coeffs[n - k + 1] * Matrix::identity(n);
    coeffs[n - k] = -trace(m * acc) / Scalar(static_cast<long>(k));
  }
  return coeffs;
}

Scalar evaluate(const Polynomial& poly, const Scalar& x) {
  Scalar acc = 0;
  for (std::size_t k = poly.size(); k-- > 0;) acc = acc * x + poly[k];
  return acc;
}

std::vector<RationalRoot> rational_roots(const Polynomial& input) {
  Polynomial poly = input;
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  if (poly.size() <= 1) return {};

  std::vector<RationalRoot> roots;
  unsigned zero_mult = 0;
  while (poly.size() > 1 && poly.front() == 0) {
    poly.erase(poly.begin());
    ++zero_mult;
  }
  if (zero_mult != 0) roots.push_back({Scalar(0), zero_mult});

  if (poly.size() > 1) {
    mpz_class lcm = 1;
    for (const auto& c : poly) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    const Scalar lowest = poly.front() * Scalar(lcm);
    const Scalar highest = poly.back() * Scalar(lcm);

    std::vector<Scalar> candidates;
    const auto numerators = divisors(lowest.get_num());
    const auto denominators = divisors(highest.get_num());
    for (const auto& a : numerators)
      for (const auto& b : denominators) {
        Scalar r(a, b);
        r.canonicalize();
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& r : candidates) {
      unsigned mult = 0;
      while (poly.size() > 1 && evaluate(poly, r) == 0) {
        poly = deflate(poly, r);
        ++mult;
      }
      if (mult != 0) roots.push_back({r, mult});
      if (poly.size() <= 1) break;
    }
  }
  std::sort(roots.begin(), roots.end(), [](const RationalRoot& a, const RationalRoot& b) { return a.value < b.value; });
  return roots;
}

std::vector<Scalar> EigenDecomposition::distinct_eigenvalues() const {
  std::vector<Scalar> out;
  for (const auto& s : spaces) out.push_back(s.eigenvalue);
  return out;
}

std::vector<Scalar> EigenDecomposition::eigenvalue_multiset() const {
  std::vector<Scalar> out;
  for (const auto& s : spaces)
    for (unsigned k = 0; k < s.algebraic_multiplicity; ++k) out.push_back(s.eigenvalue);
  return out;
}

bool EigenDecomposition::distinct() const {
  return std::all_of(spaces.begin(), spaces.end(), [](const Eigenspace& s) { return s.algebraic_multiplicity == 1; });
}

EigenDecomposition eigen_decomposition(const Matrix& m) {
  EigenDecomposition result;
  const std::size_t n = m.rows();
  unsigned total = 0;
  std::size_t geometric = 0;
  for (const auto& root : rational_roots(characteristic_polynomial(m))) {
    const Matrix shifted = m - root.value * Matrix::identity(n);
    Subspace space = Subspace::span(n, kernel_basis(shifted));
    geometric += space.dim();
    total += root.multiplicity;
    result.spaces.push_back({root.value, root.multiplicity, std::move(space)});
  }
  result.splits = total == n;
  result.semisimple = result.splits && geometric == n;
  return result;
}

Vector eigen_projection(const Matrix& m, const std::vector<Scalar>& eigenvalues, const Scalar& alpha,
                        const Vector& v) {
  Vector out = v;
  const std::size_t n = m.rows();
  for (const auto& beta : eigenvalues) {
    if (beta == alpha) continue;
    const Matrix factor = (Scalar(1) / (alpha - beta)) * (m - beta * Matrix::identity(n));
    out = factor.apply(out);
  }
  return out;
}

bool annihilated_by_distinct_roots(const Matrix& m, const std::vector<Scalar>& eigenvalues) {
  const std::size_t n = m.rows();
  Matrix product = Matrix::identity(n);
  for (const auto& a : eigenvalues) product = product * (m - a * Matrix::identity(n));
  return product.is_zero();
}

}  // namespace fmlinv
