#include "fmlinv/triparam.hpp"

#include "fmlinv/errors.hpp"

#include <stdexcept>

namespace fmlinv {

std::vector<Character> parameters_from_invariants(const std::vector<Scalar>& alphas, const std::vector<long>& ks,
                                                  long p) {
  if (alphas.size() != ks.size()) throw DomainError(ErrorCode::LengthMismatch, "alphas and weights differ in length");
  std::vector<Character> out;
  out.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) out.push_back({alphas[i] * power(Scalar(p), -ks[i]), Scalar(-ks[i])});
  return out;
}

std::vector<Character> refinement_to_parameters(const Refinement& r) {
  return parameters_from_invariants(r.alphas, r.ks, r.base.p);
}

std::pair<std::vector<Scalar>, std::vector<long>> parameters_to_invariants(const std::vector<Character>& chars, long p) {
  std::pair<std::vector<Scalar>, std::vector<long>> out;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const Scalar& w = chars[i].weight;
    if (w.get_den() != 1 || !w.get_num().fits_slong_p())
      throw DomainError(ErrorCode::NonIntegerWeight, "weight " + to_string(w) + " is not an integer", i + 1);
    const long k = -w.get_num().get_si();
    out.first.push_back(chars[i].value_at_p * power(Scalar(p), k));
    out.second.push_back(k);
  }
  return out;
}

bool MaxMonodromyResult::routes_agree() const {
  if (refine_l_values.size() != l_values.size()) return false;
  for (std::size_t i = 0; i < l_values.size(); ++i)
    if (!refine_l_values[i] || *refine_l_values[i] != l_values[i]) return false;
  return true;
}

MaxMonodromyResult max_monodromy_refinement(const FilteredModule& m) {
  const std::size_t n = m.dim();
  const Matrix& N = m.monodromy;
  if (rank(N) + 1 != n)
    throw DomainError(ErrorCode::WrongMonodromyRank,
                      "rank N = " + std::to_string(rank(N)) + ", expected " + std::to_string(n - 1));

  const auto eig = eigen_decomposition(m.phi);
  if (eig.splits && !eig.semisimple) throw DomainError(ErrorCode::NotSemisimple, "phi is not semisimple");
  const Subspace image_n = image(N, Subspace::full(n));
  std::optional<Vector> top;
  for (const auto& space : eig.spaces) {
    for (const auto& v : space.space.basis()) {
      if (!image_n.contains(v)) {
        top = normalize_leading(v);
        break;
      }
    }
    if (top) break;
  }
  if (!top) throw DomainError(ErrorCode::NoRationalEigenvector, "no rational phi-eigenvector outside N(D)");

  // e_i = N^{n-i} e_n.
  std::vector<Vector> chain(n);
  chain[n - 1] = *top;
  for (std::size_t i = n - 1; i-- > 0;) chain[i] = N.apply(chain[i + 1]);

  MaxMonodromyResult result;
  result.flag = Flag(chain);
  const Refinement r = make_refinement(m, result.flag);
  for (std::size_t i = 1; i < n; ++i) {
    if (r.k(i) >= r.k(i + 1))
      throw DomainError(ErrorCode::WeightsNotStrict, "Hodge weights along the chain are not strictly increasing", i);
  }

  // Strict weights make Fil^{k_i} ∩ F_i a line transverse to F_{i-1}.
  const Matrix to_chain = *inverse(result.flag.basis_matrix());
  Matrix ell = Matrix::identity(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const Subspace line = intersect(m.filtration.at(r.k(i)), r.step(i));
    if (line.dim() != 1) throw std::logic_error("Hodge-compatible line is not unique");
    const Vector coords = to_chain.apply(line.basis().front());
    const Vector f = scale(1 / coords[i - 1], coords);
    for (std::size_t j = 1; j < i; ++j) ell(j - 1, i - 1) = f[j - 1];
  }
  result.transform = HodgeTransform{ell, r.ks};
  for (std::size_t s = 1; s < n; ++s) result.l_values.push_back(ell(s - 1, s));

  const auto report = l_invariant_report(r);
  result.refine_l_values.assign(n == 0 ? 0 : n - 1, std::nullopt);
  for (const auto& entry : report.entries) {
    if (entry.t == entry.s + 1 && entry.verdict == StrongVerdict::StronglyCritical)
      result.refine_l_values[entry.s - 1] = entry.l_invariant;
  }
  return result;
}

}  // namespace fmlinv
