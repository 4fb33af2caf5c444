#include "fudist/fu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fudist/errors.hpp"
#include "fudist/local_search.hpp"

namespace fudist {

namespace {

constexpr double kPi = std::numbers::pi;

void require_range(double value, double lo, double hi, const char* what) {
  if (!(value >= lo && value <= hi)) {
    throw DomainError(std::string(what) + " = " + std::to_string(value) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
}

void require_b_operator(const BipartiteState& state, const ComplexMatrix& u, const char* what) {
  if (!u.is_square() || u.rows() != state.dim_b()) {
    throw DimensionError(std::string(what) + ": unitary must be " + std::to_string(state.dim_b()) + "x" +
                         std::to_string(state.dim_b()));
  }
}

double clamped_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

// U B U† for the N×N block (i, j) of ρ.
ComplexMatrix rotated_block(const ComplexMatrix& rho, std::size_t n, std::size_t i, std::size_t j,
                            const ComplexMatrix& u, const ComplexMatrix& u_dag) {
  ComplexMatrix block(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) block(k, l) = rho(i * n + k, j * n + l);
  return u * block * u_dag;
}

FuBounds bounds_for(const BipartiteState& state) {
  return {bound_classical(state.dim_a(), state.dim_b()), bound_purity(state)};
}

// Σ_k e^{iθ_k}|b_k⟩⟨b_k| + e^{iθ_rest}(I − Σ|b_k⟩⟨b_k|)
ComplexMatrix diagonal_in_basis(const ComplexMatrix& basis, std::span<const double> phases, double rest_phase) {
  const std::size_t n = basis.rows();
  const Complex rest = std::polar(1.0, rest_phase);
  ComplexMatrix u = rest * ComplexMatrix::identity(n);
  for (std::size_t k = 0; k < phases.size(); ++k) {
    const Complex delta = std::polar(1.0, phases[k]) - rest;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u(i, j) += delta * basis(i, k) * std::conj(basis(j, k));
  }
  return u;
}

std::size_t largest_index(std::span<const double> coeffs) {
  std::size_t m = 0;
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    if (coeffs[k] > coeffs[m]) m = k;
  return m;
}

double overlap_magnitude(std::span<const double> weights, std::span<const double> phases) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) s += weights[k] * std::polar(1.0, phases[k]);
  return std::abs(s);
}

}  // namespace

CyclicUnitary make_cyclic_unitary(ComplexMatrix u, const ComplexMatrix& rho_b) {
  CyclicUnitary cu;
  cu.cyclicity_residual = commutator_norm(rho_b, u);
  cu.unitarity_residual = unitarity_defect(u);
  cu.u = std::move(u);
  return cu;
}

std::string_view to_string(ClosedFormSource source) {
  switch (source) {
    case ClosedFormSource::Pseudopure:
      return "pseudopure";
    case ClosedFormSource::Werner:
      return "werner";
    case ClosedFormSource::TwoQubitDiagT:
      return "two-qubit-diag-T";
    case ClosedFormSource::HorodeckiA:
      return "horodecki-a";
    case ClosedFormSource::None:
      break;
  }
  return "none";
}

ComplexMatrix locally_rotated(const BipartiteState& state, const ComplexMatrix& u) {
  require_b_operator(state, u, "locally_rotated");
  const std::size_t m = state.dim_a();
  const std::size_t n = state.dim_b();
  const ComplexMatrix u_dag = u.adjoint();
  ComplexMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const ComplexMatrix x = rotated_block(state.rho(), n, i, j, u, u_dag);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(i * n + k, j * n + l) = x(k, l);
    }
  return out;
}

double fu_distance_squared_unchecked(const BipartiteState& state, const ComplexMatrix& u) {
  // Tr ρ² − Tr ρρ_f equals ½‖ρ − ρ_f‖² for unitary U; the norm form avoids the
  // cancellation that makes the trace form noisy near d = 0.
  const std::size_t m = state.dim_a();
  const std::size_t n = state.dim_b();
  const ComplexMatrix& rho = state.rho();
  const ComplexMatrix u_dag = u.adjoint();
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const ComplexMatrix x = rotated_block(rho, n, i, j, u, u_dag);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) sum += std::norm(rho(i * n + k, j * n + l) - x(k, l));
    }
  return 0.5 * sum;
}

double fu_distance(const BipartiteState& state, const ComplexMatrix& u) {
  require_b_operator(state, u, "fu_distance");
  const double defect = unitarity_defect(u);
  if (defect > kTol.unitary) {
    throw InvariantError("fu_distance: operator is not unitary (defect " + std::to_string(defect) + ")");
  }
  return clamped_sqrt(fu_distance_squared_unchecked(state, u));
}

double fu_distance_frobenius(const BipartiteState& state, const ComplexMatrix& u) {
  require_b_operator(state, u, "fu_distance_frobenius");
  return frobenius_norm(state.rho() - locally_rotated(state, u)) / std::numbers::sqrt2;
}

double fu_distance_via_correlation(const FanoForm& fano, const FanoForm& fano_f) {
  if (fano.dim_a != fano_f.dim_a || fano.dim_b != fano_f.dim_b || fano.t.rows != fano_f.t.rows ||
      fano.t.cols != fano_f.t.cols) {
    throw DimensionError("fu_distance_via_correlation: Fano forms have different dimensions");
  }
  double tt = 0.0;
  double tf = 0.0;
  for (std::size_t k = 0; k < fano.t.entries.size(); ++k) {
    tt += fano.t.entries[k] * fano.t.entries[k];
    tf += fano.t.entries[k] * fano_f.t.entries[k];
  }
  return 2.0 / static_cast<double>(fano.dim_a * fano.dim_b) * clamped_sqrt(tt - tf);
}

double cyclicity_residual(const BipartiteState& state, const ComplexMatrix& u) {
  require_b_operator(state, u, "cyclicity_residual");
  return commutator_norm(state.reduced_b(), u);
}

// ---------------------------------------------------------------------------

std::vector<double> overlap_cancelling_phases(std::span<const double> coeffs) {
  if (coeffs.empty()) throw DomainError("overlap_cancelling_phases: no coefficients");
  std::vector<double> weights(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) weights[k] = coeffs[k] * coeffs[k];
  const std::size_t m = largest_index(coeffs);
  std::vector<double> phases(coeffs.size(), 0.0);

  if (weights[m] > 0.5) {
    for (std::size_t k = 0; k < phases.size(); ++k) phases[k] = (k == m) ? 0.0 : kPi;
    return phases;
  }

  // Three sides: the largest weight alone, the rest balanced greedily so that
  // |L2 − L3| ≤ w_m and the triangle inequalities hold.
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < weights.size(); ++k)
    if (k != m && weights[k] > 0.0) rest.push_back(k);
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  std::vector<int> side(weights.size(), 0);
  double l2 = 0.0;
  double l3 = 0.0;
  for (auto k : rest) {
    if (l2 <= l3) {
      side[k] = 1;
      l2 += weights[k];
    } else {
      side[k] = 2;
      l3 += weights[k];
    }
  }
  const double l1 = weights[m];
  const double x = (l1 * l1 + l3 * l3 - l2 * l2) / (2.0 * l1);
  const double y = clamped_sqrt(l3 * l3 - x * x);
  const double phase2 = std::atan2(y, x - l1);
  const double phase3 = l3 > 0.0 ? std::atan2(-y, -x) : 0.0;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    if (side[k] == 1) phases[k] = phase2;
    if (side[k] == 2) phases[k] = phase3;
  }
  if (overlap_magnitude(weights, phases) <= kTol.polygon_closure) return phases;

  // Numerical fallback: minimize |Σ w_k e^{iθ_k}| over the phases.
  const Objective objective = [&](std::span<const double> th) { return -overlap_magnitude(weights, th); };
  double best = overlap_magnitude(weights, phases);
  LocalSearchOptions opts;
  opts.max_iterations = 4000;
  opts.convergence_tol = 1e-16;
  for (int restart = 0; restart < 100 && best > kTol.polygon_closure; ++restart) {
    std::vector<double> start(phases.size());
    for (std::size_t k = 0; k < start.size(); ++k) start[k] = std::fmod(0.7548776662 * (k + 1) * (restart + 1), 1.0) * 2.0 * kPi;
    const auto r = nelder_mead_maximize(objective, std::move(start), opts);
    if (-r.value < best) {
      best = -r.value;
      phases = r.x;
    }
  }
  return phases;
}

double pseudopure_dmax_value(double a_max, double epsilon) {
  const double w = a_max * a_max;
  if (w <= 0.5) return epsilon;
  return 2.0 * epsilon * a_max * clamped_sqrt(1.0 - w);
}

namespace {

void check_pseudopure_args(std::span<const double> coeffs, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("dmax_pseudopure: epsilon must lie in (0, 1]");
  if (coeffs.empty()) throw DomainError("dmax_pseudopure: no Schmidt coefficients");
  double norm2 = 0.0;
  for (double a : coeffs) {
    if (a < 0.0) throw DomainError("dmax_pseudopure: coefficients must be nonnegative");
    norm2 += a * a;
  }
  if (std::abs(norm2 - 1.0) > kTol.normalization) {
    throw DomainError("dmax_pseudopure: sum of squared coefficients is " + std::to_string(norm2));
  }
}

FuReport pseudopure_report(const BipartiteState& state, std::span<const double> coeffs, double epsilon,
                           const ComplexMatrix& basis_b) {
  const auto phases = overlap_cancelling_phases(coeffs);
  const std::size_t m = largest_index(coeffs);
  const bool collinear = coeffs[m] * coeffs[m] > 0.5;
  FuReport report;
  report.d_value = pseudopure_dmax_value(coeffs[m], epsilon);
  report.closed_form_source = ClosedFormSource::Pseudopure;
  report.witness = make_cyclic_unitary(diagonal_in_basis(basis_b, phases, collinear ? kPi : 0.0), state.reduced_b());
  report.bounds = bounds_for(state);
  return report;
}

}  // namespace

FuReport dmax_pseudopure(std::span<const double> coeffs, double epsilon, std::size_t m, std::size_t n) {
  check_pseudopure_args(coeffs, epsilon);
  const BipartiteState state = pseudopure(pure_from_schmidt(coeffs, m, n), epsilon);
  ComplexMatrix basis(n, coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) basis(k, k) = 1.0;
  return pseudopure_report(state, coeffs, epsilon, basis);
}

FuReport dmax_pseudopure(const SchmidtDecomposition& schmidt, double epsilon, std::size_t m, std::size_t n) {
  check_pseudopure_args(schmidt.coefficients, epsilon);
  if (schmidt.basis_a.rows() != m || schmidt.basis_b.rows() != n) {
    throw DimensionError("dmax_pseudopure: Schmidt bases do not match (m, n)");
  }
  ComplexVector psi(m * n);
  for (std::size_t k = 0; k < schmidt.coefficients.size(); ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        psi[i * n + j] += schmidt.coefficients[k] * schmidt.basis_a(i, k) * schmidt.basis_b(j, k);
  const BipartiteState state = pseudopure(pure_state(psi, m, n), epsilon);
  return pseudopure_report(state, schmidt.coefficients, epsilon, schmidt.basis_b);
}

std::optional<std::pair<double, double>> pseudopure_detection_window(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("pseudopure_detection_window: epsilon must lie in (0, 1]");
  const double disc = 1.0 - 1.0 / (2.0 * epsilon * epsilon);
  // Tangency at epsilon = 1/sqrt(2) can round to a tiny negative discriminant.
  if (disc < -1e-12) return std::nullopt;
  const double root = clamped_sqrt(disc);
  return std::pair{0.5 * (1.0 - root), 0.5 * (1.0 + root)};
}

// ---------------------------------------------------------------------------

double werner_dmax_value(std::size_t d, double p) {
  if (d < 2) throw DomainError("werner: d must be at least 2");
  require_range(p, 0.0, 1.0, "werner: p");
  const double dd = static_cast<double>(d);
  return std::abs(2.0 * p * dd - dd - 1.0) / (dd * dd - 1.0);
}

double werner_purity(std::size_t d, double p) {
  if (d < 2) throw DomainError("werner: d must be at least 2");
  require_range(p, 0.0, 1.0, "werner: p");
  const double dd = static_cast<double>(d);
  return p * p * 2.0 / (dd * dd + dd) + (1.0 - p) * (1.0 - p) * 2.0 / (dd * dd - dd);
}

FuReport dmax_werner(std::size_t d, double p) {
  const double value = werner_dmax_value(d, p);
  std::vector<Complex> diag(d);
  for (std::size_t k = 0; k < d; ++k) diag[k] = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(d));
  FuReport report;
  report.d_value = value;
  report.closed_form_source = ClosedFormSource::Werner;
  // ρ_B = I/D for every Werner state.
  report.witness = make_cyclic_unitary(ComplexMatrix::diagonal(diag),
                                       (1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d));
  report.bounds = {bound_classical(d, d), bound_purity(werner_purity(d, p), d * d)};
  return report;
}

// ---------------------------------------------------------------------------

Mat3 rotation_from_axis_angle(const Vec3& n, double theta) {
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (std::abs(norm - 1.0) > kTol.unit_vector) throw DomainError("rotation_from_axis_angle: axis is not a unit vector");
  const Mat3 a{{{0.0, -n[2], n[1]}, {n[2], 0.0, -n[0]}, {-n[1], n[0], 0.0}}};
  Mat3 a2{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) a2[i][j] += a[i][k] * a[k][j];
  Mat3 o{};
  const double s = std::sin(theta);
  const double c = 1.0 - std::cos(theta);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) o[i][j] = (i == j ? 1.0 : 0.0) + s * a[i][j] + c * a2[i][j];
  return o;
}

ComplexMatrix su2_rotation(const Vec3& n, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex i{0.0, 1.0};
  // cos(θ/2) I − i sin(θ/2) n·σ
  return ComplexMatrix{{c - i * s * n[2], -i * s * (n[0] - i * n[1])}, {-i * s * (n[0] + i * n[1]), c + i * s * n[2]}};
}

namespace {

Vec3 diagonal_of(const FanoForm& fano) {
  if (fano.dim_a != 2 || fano.dim_b != 2 || fano.t.rows != 3 || fano.t.cols != 3) {
    throw DimensionError("two-qubit formula: requires M = N = 2");
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j && std::abs(fano.t(i, j)) >= kTol.diagonal) {
        throw DomainError("two-qubit formula: correlation matrix is not diagonal");
      }
  return {fano.t(0, 0), fano.t(1, 1), fano.t(2, 2)};
}

}  // namespace

Vec3 optimal_rotation_axis(const FanoForm& fano) {
  const Vec3 lambda = diagonal_of(fano);
  const double rb = std::sqrt(fano.r_b[0] * fano.r_b[0] + fano.r_b[1] * fano.r_b[1] + fano.r_b[2] * fano.r_b[2]);
  if (rb > kTol.bloch_axis) return {fano.r_b[0] / rb, fano.r_b[1] / rb, fano.r_b[2] / rb};
  std::size_t best = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (std::abs(lambda[k]) < std::abs(lambda[best]) - kTol.diagonal) best = k;
  Vec3 n{0.0, 0.0, 0.0};
  n[best] = 1.0;
  return n;
}

double fu_two_qubit_general_angle(const FanoForm& fano, const Vec3& n, double theta) {
  const Vec3 lambda = diagonal_of(fano);
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (std::abs(norm - 1.0) > kTol.unit_vector) throw DomainError("fu_two_qubit_general_angle: axis is not a unit vector");
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += lambda[i] * lambda[i] * (1.0 - std::cos(theta)) * (1.0 - n[i] * n[i]);
  return 0.5 * clamped_sqrt(s);
}

FuReport dmax_two_qubit_diag_t(const FanoForm& fano) {
  const Vec3 lambda = diagonal_of(fano);
  const Vec3 n = optimal_rotation_axis(fano);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += lambda[i] * lambda[i] * (1.0 - n[i] * n[i]);

  const ComplexMatrix rho = fano_reconstruct(fano);
  const ComplexMatrix rho_b = partial_trace(rho, 2, 2, Subsystem::B);
  FuReport report;
  report.d_value = clamped_sqrt(s) / std::numbers::sqrt2;
  report.closed_form_source = ClosedFormSource::TwoQubitDiagT;
  report.witness = make_cyclic_unitary(su2_rotation(n, kPi), rho_b);
  report.bounds = {bound_classical(2, 2), bound_purity(purity(rho), 4)};
  return report;
}

// ---------------------------------------------------------------------------

double bound_classical(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw DomainError("bound_classical: dimensions must be positive");
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  return std::min(1.0, std::sqrt(2.0 * (md - 1.0) * (nd - 1.0) / (md * nd)));
}

double bound_purity(double purity_value, std::size_t total_dim) {
  return clamped_sqrt(2.0 * (purity_value - 1.0 / static_cast<double>(total_dim)));
}

double bound_purity(const BipartiteState& state) { return bound_purity(state.purity(), state.total_dim()); }

double bound_upb(std::size_t total_dim, std::size_t n_upb) {
  if (n_upb < 1 || n_upb >= total_dim) throw DomainError("bound_upb: need 1 <= n < D");
  const double d = static_cast<double>(total_dim);
  const double n = static_cast<double>(n_upb);
  return std::sqrt(2.0 * n / (d * (d - n)));
}

// ---------------------------------------------------------------------------

double horodecki_a_dmax_value(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("dmax_horodecki_a: a must lie in (0, 1)");
  return 2.0 * std::numbers::sqrt2 * a / (8.0 * a + 1.0);
}

FuReport dmax_horodecki_a(double a) {
  FuReport report;
  report.d_value = horodecki_a_dmax_value(a);
  report.closed_form_source = ClosedFormSource::HorodeckiA;
  const BipartiteState state = horodecki_rho_a(a);
  const std::vector<double> diag{1.0, -1.0, 1.0};
  report.witness = make_cyclic_unitary(ComplexMatrix::diagonal(std::span<const double>(diag)), state.reduced_b());
  report.bounds = bounds_for(state);
  return report;
}

double horodecki_alpha_distance_value(double alpha) {
  require_range(alpha, 2.0, 5.0, "fu_horodecki_alpha: alpha");
  return std::sqrt(alpha * alpha - 5.0 * alpha + 9.0) / 7.0;
}

HorodeckiAlphaDistance fu_horodecki_alpha(double alpha) {
  HorodeckiAlphaDistance out;
  out.d_value = horodecki_alpha_distance_value(alpha);
  ComplexMatrix shift(3, 3);
  shift(1, 0) = 1.0;
  shift(2, 1) = 1.0;
  shift(0, 2) = 1.0;
  out.witness = make_cyclic_unitary(std::move(shift), horodecki_rho_alpha(alpha).reduced_b());
  return out;
}

double horodecki_alpha_bound(double alpha) {
  require_range(alpha, 2.0, 5.0, "horodecki_alpha_bound: alpha");
  return 2.0 * std::sqrt(3.0 * alpha * alpha - 15.0 * alpha + 31.0) / 21.0;
}

// ---------------------------------------------------------------------------

std::optional<FuReport> closed_form_for_state(const BipartiteState& state) {
  const std::size_t m = state.dim_a();
  const std::size_t n = state.dim_b();
  if (m == 2 && n == 2) {
    const FanoForm fano = fano_decompose(state);
    bool diagonal = true;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j && std::abs(fano.t(i, j)) >= kTol.diagonal) diagonal = false;
    if (diagonal) {
      FuReport r = dmax_two_qubit_diag_t(fano);
      r.witness = make_cyclic_unitary(r.witness->u, state.reduced_b());
      r.bounds = bounds_for(state);
      return r;
    }
  }

  const auto es = hermitian_eig(state.rho());
  const std::size_t dim = state.total_dim();
  const double low = es.eigenvalues.front();
  if (dim < 2 || es.eigenvalues[dim - 2] - low > kTol.degeneracy) return std::nullopt;
  const double epsilon = es.eigenvalues.back() - low;
  if (epsilon <= kTol.degeneracy) {
    FuReport r;
    r.closed_form_source = ClosedFormSource::Pseudopure;
    r.witness = make_cyclic_unitary(ComplexMatrix::identity(n), state.reduced_b());
    r.bounds = bounds_for(state);
    return r;
  }
  const ComplexVector top = es.eigenvectors.column(dim - 1);
  const SchmidtDecomposition schmidt = schmidt_decompose(top, m, n);
  FuReport r = dmax_pseudopure(schmidt, std::min(1.0, epsilon), m, n);
  r.witness = make_cyclic_unitary(r.witness->u, state.reduced_b());
  r.bounds = bounds_for(state);
  return r;
}

}  // namespace fudist
