#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fudist/matrix.hpp"

namespace fudist {

/// A density matrix on C^M ⊗ C^N. Construction validates Hermiticity, unit
/// trace and positivity (InvariantError otherwise); instances are immutable.
class BipartiteState {
 public:
  BipartiteState(ComplexMatrix rho, std::size_t dim_a, std::size_t dim_b, const Tolerances& tol = kTol);

  const ComplexMatrix& rho() const noexcept { return rho_; }
  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t total_dim() const noexcept { return dim_a_ * dim_b_; }

  ComplexMatrix reduced_a() const { return partial_trace(rho_, dim_a_, dim_b_, Subsystem::A); }
  ComplexMatrix reduced_b() const { return partial_trace(rho_, dim_a_, dim_b_, Subsystem::B); }
  double purity() const { return fudist::purity(rho_); }

 private:
  ComplexMatrix rho_;
  std::size_t dim_a_;
  std::size_t dim_b_;
};

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& h);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // descending, Σ a_k² = 1
  ComplexMatrix basis_a;             // M × r, orthonormal columns
  ComplexMatrix basis_b;             // N × r, orthonormal columns
};

/// Bloch vectors and correlation matrix of a bipartite state with
/// generators normalized as Tr(σ_i σ_j) = 2δ_ij.
struct FanoForm {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::vector<double> r_a;  // M² − 1
  std::vector<double> r_b;  // N² − 1
  RealMatrix t;             // (M² − 1) × (N² − 1)
};

/// Traceless Hermitian SU(d) generators, Tr(σ_iσ_j) = 2δ_ij. Ordering: all
/// symmetric off-diagonal ones (pairs j<k lexicographic), then antisymmetric
/// ones in the same pair order, then the d−1 diagonal ones. d = 2 gives
/// σ_x, σ_y, σ_z.
std::vector<ComplexMatrix> gell_mann_generators(std::size_t d);

/// Σ_k a_k |k⟩_A|k⟩_B as a state vector.
ComplexVector schmidt_vector(std::span<const double> coeffs, std::size_t m, std::size_t n);
BipartiteState pure_from_schmidt(std::span<const double> coeffs, std::size_t m, std::size_t n);
BipartiteState pure_state(std::span<const Complex> psi, std::size_t m, std::size_t n);

/// ε σ + (1−ε) I/(MN) for a pure σ.
BipartiteState pseudopure(const BipartiteState& sigma, double epsilon);

/// U⊗U-invariant Werner state on C^d ⊗ C^d.
BipartiteState werner(std::size_t d, double p);

/// P. Horodecki's 3×3 bound entangled family, 0 ≤ a ≤ 1.
BipartiteState horodecki_rho_a(double a);

/// Horodecki³ qutrit family, 2 ≤ α ≤ 5.
BipartiteState horodecki_rho_alpha(double alpha);

/// The five "Tiles" UPB vectors on C³ ⊗ C³.
std::vector<ComplexVector> upb_tiles_vectors();
/// (1/4)(I − Σ|ψ_k⟩⟨ψ_k|) for the Tiles UPB.
BipartiteState upb_tiles_state();

/// t ρ + (1 − t) I/(MN)
BipartiteState mix_with_white_noise(const BipartiteState& state, double t);

/// (U_A ⊗ U_B) ρ (U_A ⊗ U_B)†
BipartiteState apply_local_unitaries(const BipartiteState& state, const ComplexMatrix& ua, const ComplexMatrix& ub);

FanoForm fano_decompose(const BipartiteState& state);

/// Inverse of fano_decompose; returns the (possibly non-positive) operator.
ComplexMatrix fano_reconstruct(const FanoForm& fano);

/// Two-qubit state from a Fano triple; InvariantError when the triple does
/// not describe a positive operator.
BipartiteState two_qubit_from_fano(const FanoForm& fano);

SchmidtDecomposition schmidt_decompose(std::span<const Complex> psi, std::size_t m, std::size_t n);

}  // namespace fudist
