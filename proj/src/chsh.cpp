#include "fudist/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fudist/errors.hpp"
#include "fudist/fu.hpp"

namespace fudist {

namespace {

void require_normalized(std::span<const double> coeffs, const char* what) {
  double s = 0.0;
  for (double a : coeffs) s += a * a;
  if (std::abs(s - 1.0) > kTol.normalization) {
    throw DomainError(std::string(what) + ": squared coefficients sum to " + std::to_string(s));
  }
}

void require_two_qubit(const FanoForm& fano, const char* what) {
  if (fano.dim_a != 2 || fano.dim_b != 2 || fano.t.rows != 3 || fano.t.cols != 3) {
    throw DimensionError(std::string(what) + ": requires a two-qubit state");
  }
}

}  // namespace

ChshReport horodecki_m(const FanoForm& fano) {
  require_two_qubit(fano, "horodecki_m");
  ComplexMatrix tt(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += fano.t(k, i) * fano.t(k, j);
      tt(i, j) = s;
    }
  const auto es = hermitian_eig(tt);
  ChshReport r;
  r.tau = {std::max(0.0, es.eigenvalues[2]), std::max(0.0, es.eigenvalues[1])};
  r.m_value = r.tau.first + r.tau.second;
  r.violates = r.m_value > 1.0;
  return r;
}

double b_max_pure(double a0, double a1) {
  const double c[] = {a0, a1};
  require_normalized(c, "b_max_pure");
  return 2.0 * std::sqrt(1.0 + 4.0 * a0 * a0 * a1 * a1);
}

double concurrence_two_qubit_pure(double a0, double a1) {
  const double c[] = {a0, a1};
  require_normalized(c, "concurrence_two_qubit_pure");
  return 2.0 * std::abs(a0 * a1);
}

double concurrence_rungta(std::span<const double> coeffs) {
  require_normalized(coeffs, "concurrence_rungta");
  double s = 0.0;
  for (double a : coeffs) s += a * a * a * a;
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - s)));
}

double concurrence_rungta_max(std::size_t d) {
  if (d < 1) throw DomainError("concurrence_rungta_max: need at least one coefficient");
  const double dd = static_cast<double>(d);
  return std::sqrt(2.0 * (dd - 1.0) / dd);
}

double concurrence_rungta_normalized(std::span<const double> coeffs) {
  if (coeffs.size() < 2) throw DomainError("concurrence_rungta_normalized: need at least two coefficients");
  return concurrence_rungta(coeffs) / concurrence_rungta_max(coeffs.size());
}

double concurrence_audenaert(std::span<const double> coeffs) {
  if (coeffs.size() < 2) throw DomainError("concurrence_audenaert: need at least two coefficients");
  require_normalized(coeffs, "concurrence_audenaert");
  std::vector<double> a(coeffs.begin(), coeffs.end());
  for (auto& x : a) x = std::abs(x);
  std::partial_sort(a.begin(), a.begin() + 2, a.end(), std::greater<>());
  return 2.0 * a[0] * a[1];
}

EquivalenceCheck equivalence_class_check(const FanoForm& fano) {
  require_two_qubit(fano, "equivalence_class_check");
  const FuReport d = dmax_two_qubit_diag_t(fano);  // validates diagonality
  const double lambda[] = {std::abs(fano.t(0, 0)), std::abs(fano.t(1, 1)), std::abs(fano.t(2, 2))};
  const double rb = std::sqrt(fano.r_b[0] * fano.r_b[0] + fano.r_b[1] * fano.r_b[1] + fano.r_b[2] * fano.r_b[2]);
  const double tol = kTol.equal_magnitude;

  EquivalenceCheck c;
  c.maximally_mixed_b = rb <= tol;
  c.equal_magnitudes = std::abs(lambda[0] - lambda[1]) <= tol && std::abs(lambda[1] - lambda[2]) <= tol;
  if (rb > kTol.bloch_axis) {
    const double lmin = std::min({lambda[0], lambda[1], lambda[2]});
    for (std::size_t k = 0; k < 3; ++k) {
      if (lambda[k] - lmin <= tol && std::abs(std::abs(fano.r_b[k]) / rb - 1.0) <= tol) c.aligned_axis = true;
    }
  }
  c.violates_chsh = horodecki_m(fano).violates;
  c.exceeds_classical = d.d_value > 1.0 / std::numbers::sqrt2;

  std::string label;
  const auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!label.empty()) label += "+";
    label += name;
  };
  add(c.aligned_axis, "aligned-axis");
  add(c.equal_magnitudes, "equal-magnitudes");
  add(c.maximally_mixed_b, "maximally-mixed-B");
  c.label = label.empty() ? "none" : label;
  return c;
}

}  // namespace fudist
