#pragma once

#include <span>
#include <string>
#include <utility>

#include "fudist/states.hpp"

namespace fudist {

struct ChshReport {
  double m_value = 0.0;                // τ₁ + τ₂
  bool violates = false;               // M > 1
  std::pair<double, double> tau{};     // two largest eigenvalues of TᵀT, τ₁ ≥ τ₂
};

/// Horodecki criterion quantity for a two-qubit Fano form.
ChshReport horodecki_m(const FanoForm& fano);

/// Largest CHSH value of a0|00⟩ + a1|11⟩: 2√(1 + 4|a0 a1|²).
double b_max_pure(double a0, double a1);

/// 2 a0 a1
double concurrence_two_qubit_pure(double a0, double a1);

/// √(2(1 − Σ a_k⁴))
double concurrence_rungta(std::span<const double> coeffs);
/// √(2(D − 1)/D), the largest value of concurrence_rungta for D coefficients.
double concurrence_rungta_max(std::size_t d);
double concurrence_rungta_normalized(std::span<const double> coeffs);

/// 2 a_m a_m2 from the two largest coefficients.
double concurrence_audenaert(std::span<const double> coeffs);

struct EquivalenceCheck {
  bool aligned_axis = false;       // the smallest |λ| axis carries r_B
  bool equal_magnitudes = false;   // |λ₀| = |λ₁| = |λ₂|
  bool maximally_mixed_b = false;  // ρ_B = I/2
  bool violates_chsh = false;      // M > 1
  bool exceeds_classical = false;  // d_max > 1/√2
  std::string label;               // conditions that hold, or "none"

  bool any_condition() const { return aligned_axis || equal_magnitudes || maximally_mixed_b; }
  /// M > 1 ⇔ d_max > 1/√2 for this state.
  bool equivalence_holds() const { return violates_chsh == exceeds_classical; }
};

/// Which of the three conditions under which CHSH violation and d_max > 1/√2
/// coincide hold for a diagonal-T two-qubit state. DomainError if T is not
/// diagonal, DimensionError unless 2×2.
EquivalenceCheck equivalence_class_check(const FanoForm& fano);

}  // namespace fudist
