#pragma once

#include "fmlinv/deform.hpp"
#include "fmlinv/refinement.hpp"

#include <optional>
#include <random>

namespace fmlinv::testing {

using Rng = std::mt19937_64;

long uniform_int(Rng& rng, long lo, long hi);
Scalar small_rational(Rng& rng, long bound = 3);
Scalar nonzero_rational(Rng& rng, long bound = 3);
Matrix random_invertible(Rng& rng, std::size_t n, long bound = 2);
Vector random_combination(Rng& rng, const std::vector<Vector>& gens, std::size_t n, long bound = 3);

struct RandomOptions {
  std::size_t n = 3;
  long p = 2;
  bool distinct_eigenvalues = false;
  double chain_bias = 0.6;     // chance of alpha_i = p alpha_j for an earlier j
  double repeat_bias = 0.3;    // chance of repeating an earlier alpha (repeats allowed only)
  double monodromy_fill = 0.8; // chance a permitted N entry is nonzero
};

/// A module built from a diagonal Frobenius in a hidden perfect basis,
/// transported by a random change of basis, with a compatible flag.
struct RandomInstance {
  FilteredModule module;
  Flag flag;
};

RandomInstance random_instance(Rng& rng, const RandomOptions& options);

/// Maximal monodromy with strictly increasing weights and a planted
/// unit upper-triangular ell.
struct PlantedMaxMonodromy {
  FilteredModule module;
  Matrix ell;
  std::vector<long> weights;
};

PlantedMaxMonodromy random_max_monodromy(Rng& rng, std::size_t n, long p);

/// An s-decomposition chosen at random among those the construction can
/// reach: e_t shifted by alpha_t-eigenvectors sent into F_{s-1} by N, by
/// F_{s-1} itself and by scaling, with a random hyperplane for L.
std::optional<SDecomposition> random_s_decomposition(const Refinement& r, std::size_t s, Rng& rng);

/// The same flag with v_i replaced by c_i v_i + (random element of F_{i-1}).
/// `scales` receives the c_i.
Flag perturb_representatives(const Flag& flag, Rng& rng, std::vector<Scalar>* scales = nullptr);

FirstOrderFamily random_family(Rng& rng, std::size_t n);

}  // namespace fmlinv::testing
