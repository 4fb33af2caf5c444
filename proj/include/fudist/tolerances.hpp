#pragma once

namespace fudist {

// Every float comparison in the library reads its threshold from here.
struct Tolerances {
  double hermitian = 1e-10;        // ‖A − A†‖ entrywise, relative to max(1, ‖A‖_F)
  double trace = 1e-10;            // |Tr ρ − 1|
  double psd = 1e-9;               // smallest admissible eigenvalue is −psd
  double purity_pure = 1e-9;       // Tr σ² ≥ 1 − purity_pure counts as pure
  double unitary = 1e-9;           // ‖U†U − I‖_F
  double cyclic = 1e-8;            // ‖[ρ_B, U]‖_F for a unitary flagged cyclic
  double normalization = 1e-10;    // |Σ a_k² − 1|
  double unit_vector = 1e-9;       // |‖n‖ − 1| for axes and pure-state vectors
  double degeneracy = 1e-10;       // eigenvalues this close form one cluster
  double schmidt_drop = 1e-12;     // Schmidt coefficients below this are dropped
  double diagonal = 1e-10;         // off-diagonal magnitude treated as zero
  double bloch_axis = 1e-10;       // ‖r_B‖ threshold between the two axis branches
  double equal_magnitude = 1e-9;   // |λ_i| comparisons in the equivalence check
  double polygon_closure = 1e-9;   // |Σ w_k e^{iθ_k}| accepted as closed
  int jacobi_max_sweeps = 100;
  double jacobi_off_threshold = 1e-12;
};

inline constexpr Tolerances kTol{};

}  // namespace fudist
