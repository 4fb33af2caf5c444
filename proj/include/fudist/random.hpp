#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fudist/fu.hpp"
#include "fudist/matrix.hpp"
#include "fudist/states.hpp"

namespace fudist {

std::uint64_t splitmix64(std::uint64_t x);

/// mt19937_64 seeded through splitmix64. The uniform and normal draws are
/// computed here rather than by <random> distributions so that streams are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double uniform01();  // [0, 1), 53 bits
  double uniform(double lo, double hi);
  double normal();
  std::size_t index(std::size_t n);  // [0, n)

 private:
  std::mt19937_64 engine_;
};

/// Haar-distributed unitary (Gram–Schmidt on a complex Ginibre matrix).
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

/// Uniform on the unit sphere in R^k, sorted descending with nonnegative
/// entries: a random Schmidt coefficient vector of length k.
std::vector<double> random_schmidt_coefficients(Rng& rng, std::size_t k);

/// Pure state with random Schmidt coefficients and random local bases.
BipartiteState random_pure_state(Rng& rng, std::size_t m, std::size_t n);

/// ρ = GG†/Tr(GG†) with G of size (mn) × rank.
BipartiteState random_mixed_state(Rng& rng, std::size_t m, std::size_t n, std::size_t rank);

/// Two-qubit state with diagonal correlation matrix: either a pure
/// a0|00⟩ + a1|11⟩, or random (r_A, r_B, λ) shrunk towards I/4 until positive.
BipartiteState random_diag_t_state(Rng& rng);

}  // namespace fudist
