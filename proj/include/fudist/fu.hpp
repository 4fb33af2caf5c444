#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "fudist/matrix.hpp"
#include "fudist/states.hpp"

namespace fudist {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// A unitary on subsystem B together with how far it is from commuting with
/// the reduced state it was built for.
struct CyclicUnitary {
  ComplexMatrix u;
  double cyclicity_residual = 0.0;  // ‖[ρ_B, U]‖_F
  double unitarity_residual = 0.0;  // ‖U†U − I‖_F

  bool is_cyclic(const Tolerances& tol = kTol) const {
    return cyclicity_residual <= tol.cyclic && unitarity_residual <= tol.unitary;
  }
};

CyclicUnitary make_cyclic_unitary(ComplexMatrix u, const ComplexMatrix& rho_b);

enum class ClosedFormSource { Pseudopure, Werner, TwoQubitDiagT, HorodeckiA, None };
std::string_view to_string(ClosedFormSource source);

struct FuBounds {
  double classical_cc = 0.0;
  double purity = 0.0;
};

struct FuReport {
  double d_value = 0.0;
  std::optional<CyclicUnitary> witness;
  ClosedFormSource closed_form_source = ClosedFormSource::None;
  FuBounds bounds;
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// (I ⊗ U) ρ (I ⊗ U)†
ComplexMatrix locally_rotated(const BipartiteState& state, const ComplexMatrix& u);

/// √(Tr ρ² − Tr ρρ_f). Defined for any unitary U on B, cyclic or not.
/// Throws DimensionError on size mismatch and InvariantError for non-unitary U.
double fu_distance(const BipartiteState& state, const ComplexMatrix& u);

/// Squared distance without the unitarity check; hot path for the optimizer.
double fu_distance_squared_unchecked(const BipartiteState& state, const ComplexMatrix& u);

/// (1/√2)‖ρ − ρ_f‖_F, the defining form.
double fu_distance_frobenius(const BipartiteState& state, const ComplexMatrix& u);

/// (2/MN)√(ΣT² − ΣT·T^f). Agrees with fu_distance when ρ_f keeps ρ_B fixed.
double fu_distance_via_correlation(const FanoForm& fano, const FanoForm& fano_f);

/// ‖[ρ_B, U]‖_F
double cyclicity_residual(const BipartiteState& state, const ComplexMatrix& u);

// ---------------------------------------------------------------------------
// Pseudopure states
// ---------------------------------------------------------------------------

/// Phases θ_k minimizing |Σ a_k² e^{iθ_k}|: collinear split when the largest
/// weight exceeds 1/2, a closed triangle of three balanced sides otherwise.
std::vector<double> overlap_cancelling_phases(std::span<const double> coeffs);

/// Closed-form maximum for ε|ψ⟩⟨ψ| + (1−ε)I/(MN), |ψ⟩ = Σ a_k|k⟩|k⟩ in the
/// computational bases. The witness is diagonal.
FuReport dmax_pseudopure(std::span<const double> coeffs, double epsilon, std::size_t m, std::size_t n);

/// Same, for a pure state given by an arbitrary Schmidt decomposition; the
/// witness is diagonal in the B Schmidt basis.
FuReport dmax_pseudopure(const SchmidtDecomposition& schmidt, double epsilon, std::size_t m, std::size_t n);

double pseudopure_dmax_value(double a_max, double epsilon);

/// Interval of a_m² on which a pseudopure state can beat the two-qubit
/// classical bound; nullopt when ε < 1/√2.
std::optional<std::pair<double, double>> pseudopure_detection_window(double epsilon);

// ---------------------------------------------------------------------------
// Werner states
// ---------------------------------------------------------------------------

double werner_dmax_value(std::size_t d, double p);
double werner_purity(std::size_t d, double p);
/// Report with the witness diag(1, ω, …, ω^{D−1}).
FuReport dmax_werner(std::size_t d, double p);

// ---------------------------------------------------------------------------
// Two qubits with diagonal correlation matrix
// ---------------------------------------------------------------------------

/// Rodrigues: I + sinθ A + (1 − cosθ) A², A the cross-product matrix of n.
Mat3 rotation_from_axis_angle(const Vec3& n, double theta);

/// exp(−i(θ/2) n·σ)
ComplexMatrix su2_rotation(const Vec3& n, double theta);

/// Rotation axis used for the maximum: r_B/‖r_B‖, or the axis of the
/// smallest |λ_k| (lowest index on ties) when ‖r_B‖ ≤ bloch_axis tolerance.
Vec3 optimal_rotation_axis(const FanoForm& fano);

FuReport dmax_two_qubit_diag_t(const FanoForm& fano);

double fu_two_qubit_general_angle(const FanoForm& fano, const Vec3& n, double theta);

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

/// √(2(M−1)(N−1)/(MN)), capped at 1.
double bound_classical(std::size_t m, std::size_t n);
double bound_purity(const BipartiteState& state);
double bound_purity(double purity, std::size_t total_dim);
/// √(2n/(D(D−n))) for a UPB of n vectors in total dimension D.
double bound_upb(std::size_t total_dim, std::size_t n_upb);

// ---------------------------------------------------------------------------
// Bound entangled families
// ---------------------------------------------------------------------------

double horodecki_a_dmax_value(double a);
/// 2√2 a/(8a+1) with witness diag(1, −1, 1).
FuReport dmax_horodecki_a(double a);

struct HorodeckiAlphaDistance {
  double d_value = 0.0;
  CyclicUnitary witness;  // cyclic shift |0⟩→|1⟩→|2⟩→|0⟩
};

double horodecki_alpha_distance_value(double alpha);
HorodeckiAlphaDistance fu_horodecki_alpha(double alpha);
/// Purity bound of ρ_α in closed form, 2√(3α² − 15α + 31)/21.
double horodecki_alpha_bound(double alpha);

// ---------------------------------------------------------------------------

/// Closed form for states whose structure is recognized from the matrix alone:
/// two qubits with diagonal T, or a pseudopure spectrum (one eigenvalue above
/// an otherwise flat spectrum).
std::optional<FuReport> closed_form_for_state(const BipartiteState& state);

}  // namespace fudist
