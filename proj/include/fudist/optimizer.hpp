#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fudist/fu.hpp"
#include "fudist/matrix.hpp"
#include "fudist/states.hpp"

namespace fudist {

struct Cluster {
  std::size_t begin = 0;
  std::size_t size = 0;
};

/// Eigenbasis of ρ_B with its eigenvalues grouped into degenerate clusters.
/// Every unitary that is block diagonal in this basis commutes with ρ_B.
struct CommutantStructure {
  ComplexMatrix eigenbasis;       // columns are eigenvectors, ascending eigenvalue
  std::vector<Cluster> clusters;  // ascending eigenvalue
  std::vector<double> eigenvalues;
  ComplexMatrix rho_b;

  /// Σ_c size_c²
  std::size_t parameter_count() const;
};

/// Adjacent eigenvalues closer than degeneracy_tol share a cluster.
CommutantStructure commutant_structure(const ComplexMatrix& rho_b, double degeneracy_tol = kTol.degeneracy);

/// U = V · blockdiag(B_c exp(iH_c)) · V†. Each cluster consumes size² params:
/// the diagonal of H_c first, then (re, im) for each pair j<k in row order.
/// B_c defaults to the identity; `base` (if given) supplies B_c as the blocks
/// of V†WV so that zero parameters reproduce W. DimensionError on a wrong
/// parameter count.
CyclicUnitary cyclic_unitary_from_params(const CommutantStructure& structure, std::span<const double> params,
                                         const ComplexMatrix* base = nullptr);

enum class LocalMethod { NelderMead, GradientAscent };

struct OptimizerConfig {
  int restarts = 32;
  int max_iterations = 2000;
  double convergence_tol = 1e-10;
  std::uint64_t seed = 0;
  double degeneracy_tol = kTol.degeneracy;
  LocalMethod method = LocalMethod::NelderMead;
  unsigned threads = 1;  // 0 picks hardware concurrency
};

struct OptimizationResult {
  double d_estimate = 0.0;
  CyclicUnitary best_unitary;
  int restarts_used = 0;
  std::vector<bool> converged;  // one flag per restart
  std::vector<double> restart_values;
};

/// Parameters used to start restart r: restart 0 at the origin, the others
/// uniform in [−π, π] from a sub-seed derived from (seed, r).
std::vector<double> restart_start_point(std::uint64_t seed, int restart, std::size_t dim);

/// Multi-start local maximization of the Fu distance over the commutant of
/// ρ_B. With a hint, restart 1 starts from that unitary instead (when it is
/// cyclic). DomainError for an invalid config.
OptimizationResult maximize_fu(const BipartiteState& state, const OptimizerConfig& config,
                               const std::optional<ComplexMatrix>& hint = std::nullopt);

}  // namespace fudist
