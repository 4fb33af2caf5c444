#include "fudist/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fudist/errors.hpp"

namespace fudist {

namespace {

struct SparseEntry {
  std::size_t row;
  std::size_t col;
  Complex value;
};

std::vector<SparseEntry> nonzeros(const ComplexMatrix& m) {
  std::vector<SparseEntry> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != Complex{}) out.push_back({i, j, m(i, j)});
  return out;
}

void require_range(double value, double lo, double hi, const char* what) {
  if (!(value >= lo && value <= hi)) {
    throw DomainError(std::string(what) + " = " + std::to_string(value) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
}

}  // namespace

BipartiteState::BipartiteState(ComplexMatrix rho, std::size_t dim_a, std::size_t dim_b, const Tolerances& tol)
    : rho_(std::move(rho)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a_ == 0 || dim_b_ == 0) throw DimensionError("BipartiteState: subsystem dimensions must be positive");
  if (!rho_.is_square() || rho_.rows() != dim_a_ * dim_b_) {
    throw DimensionError("BipartiteState: rho is " + std::to_string(rho_.rows()) + "x" + std::to_string(rho_.cols()) +
                         ", expected " + std::to_string(dim_a_ * dim_b_) + "x" + std::to_string(dim_a_ * dim_b_));
  }
  if (!is_hermitian(rho_, tol.hermitian)) {
    throw InvariantError("BipartiteState: rho is not Hermitian (defect " + std::to_string(hermiticity_defect(rho_)) +
                         ")");
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > tol.trace) {
    throw InvariantError("BipartiteState: trace " + std::to_string(tr.real()) + " differs from 1");
  }
  const double lmin = min_eigenvalue(rho_);
  if (lmin < -tol.psd) {
    throw InvariantError("BipartiteState: rho is not positive semidefinite (min eigenvalue " + std::to_string(lmin) +
                         ")");
  }
}

double min_eigenvalue(const ComplexMatrix& h) { return hermitian_eig(h).eigenvalues.front(); }

std::vector<ComplexMatrix> gell_mann_generators(std::size_t d) {
  if (d < 2) throw DomainError("gell_mann_generators: d must be at least 2");
  std::vector<ComplexMatrix> out;
  out.reserve(d * d - 1);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix s(d, d);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      out.push_back(std::move(s));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix s(d, d);
      s(j, k) = Complex{0.0, -1.0};
      s(k, j) = Complex{0.0, 1.0};
      out.push_back(std::move(s));
    }
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix s(d, d);
    const double scale = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) s(j, j) = scale;
    s(l, l) = -scale * static_cast<double>(l);
    out.push_back(std::move(s));
  }
  return out;
}

ComplexVector schmidt_vector(std::span<const double> coeffs, std::size_t m, std::size_t n) {
  if (coeffs.size() > std::min(m, n)) {
    throw DomainError("schmidt_vector: " + std::to_string(coeffs.size()) + " coefficients exceed min(m, n) = " +
                      std::to_string(std::min(m, n)));
  }
  double norm2 = 0.0;
  for (double a : coeffs) {
    if (a < 0.0) throw DomainError("schmidt_vector: coefficients must be nonnegative");
    norm2 += a * a;
  }
  if (std::abs(norm2 - 1.0) > kTol.normalization) {
    throw DomainError("schmidt_vector: sum of squared coefficients is " + std::to_string(norm2));
  }
  ComplexVector psi(m * n);
  for (std::size_t k = 0; k < coeffs.size(); ++k) psi[k * n + k] = coeffs[k];
  return psi;
}

BipartiteState pure_from_schmidt(std::span<const double> coeffs, std::size_t m, std::size_t n) {
  return BipartiteState(ComplexMatrix::projector(schmidt_vector(coeffs, m, n)), m, n);
}

BipartiteState pure_state(std::span<const Complex> psi, std::size_t m, std::size_t n) {
  if (psi.size() != m * n) throw DimensionError("pure_state: vector length differs from m*n");
  const double norm = vector_norm(psi);
  if (std::abs(norm - 1.0) > kTol.unit_vector) throw DomainError("pure_state: vector is not normalized");
  return BipartiteState(ComplexMatrix::projector(psi), m, n);
}

BipartiteState pseudopure(const BipartiteState& sigma, double epsilon) {
  require_range(epsilon, 0.0, 1.0, "pseudopure: epsilon");
  if (sigma.purity() < 1.0 - kTol.purity_pure) {
    throw DomainError("pseudopure: sigma is not pure (purity " + std::to_string(sigma.purity()) + ")");
  }
  const auto dim = sigma.total_dim();
  ComplexMatrix rho = epsilon * sigma.rho() + ((1.0 - epsilon) / static_cast<double>(dim)) * ComplexMatrix::identity(dim);
  return BipartiteState(std::move(rho), sigma.dim_a(), sigma.dim_b());
}

BipartiteState werner(std::size_t d, double p) {
  if (d < 2) throw DomainError("werner: d must be at least 2");
  require_range(p, 0.0, 1.0, "werner: p");
  const double dd = static_cast<double>(d);
  const double w_sym = p * 2.0 / (dd * dd + dd);
  const double w_as = (1.0 - p) * 2.0 / (dd * dd - dd);
  // w_sym (I + P)/2 + w_as (I − P)/2 with P the swap operator.
  const double c_id = 0.5 * (w_sym + w_as);
  const double c_swap = 0.5 * (w_sym - w_as);
  ComplexMatrix rho(d * d, d * d);
  for (std::size_t i = 0; i < d * d; ++i) rho(i, i) = c_id;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) rho(i * d + k, k * d + i) += c_swap;
  return BipartiteState(std::move(rho), d, d);
}

BipartiteState horodecki_rho_a(double a) {
  require_range(a, 0.0, 1.0, "horodecki_rho_a: a");
  const auto ket = [](std::size_t x, std::size_t y) {
    ComplexVector v(9);
    v[x * 3 + y] = 1.0;
    return v;
  };
  const ComplexMatrix id9 = ComplexMatrix::identity(9);
  ComplexMatrix q = id9;
  for (std::size_t k = 0; k < 3; ++k) q -= ComplexMatrix::projector(ket(k, k));
  q -= ComplexMatrix::projector(ket(2, 0));

  ComplexVector psi(9);
  for (std::size_t k = 0; k < 3; ++k) psi[k * 3 + k] = 1.0 / std::sqrt(3.0);
  const ComplexMatrix rho_ent = (3.0 / 8.0) * ComplexMatrix::projector(psi) + (1.0 / 8.0) * q;

  ComplexVector phi(9);
  phi[2 * 3 + 0] = std::sqrt((1.0 + a) / 2.0);
  phi[2 * 3 + 2] = std::sqrt((1.0 - a) / 2.0);

  const double denom = 8.0 * a + 1.0;
  ComplexMatrix rho = (8.0 * a / denom) * rho_ent + (1.0 / denom) * ComplexMatrix::projector(phi);
  return BipartiteState(std::move(rho), 3, 3);
}

BipartiteState horodecki_rho_alpha(double alpha) {
  require_range(alpha, 2.0, 5.0, "horodecki_rho_alpha: alpha");
  ComplexMatrix rho(9, 9);
  const double third = 1.0 / 3.0;
  // |φ+⟩⟨φ+| block on |00⟩, |11⟩, |22⟩
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) rho(i * 4, j * 4) = (2.0 / 7.0) * third;
  // σ+ on |01⟩, |12⟩, |20⟩; σ− on |10⟩, |21⟩, |02⟩
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t plus = k * 3 + (k + 1) % 3;
    const std::size_t minus = ((k + 1) % 3) * 3 + k;
    rho(plus, plus) += (alpha / 7.0) * third;
    rho(minus, minus) += ((5.0 - alpha) / 7.0) * third;
  }
  return BipartiteState(std::move(rho), 3, 3);
}

std::vector<ComplexVector> upb_tiles_vectors() {
  const double h = 1.0 / std::sqrt(2.0);
  const ComplexVector e0{1.0, 0.0, 0.0};
  const ComplexVector e2{0.0, 0.0, 1.0};
  const ComplexVector d01{h, -h, 0.0};
  const ComplexVector d12{0.0, h, -h};
  const double s = 1.0 / std::sqrt(3.0);
  const ComplexVector all{s, s, s};
  return {tensor_product(e0, d01), tensor_product(d01, e2), tensor_product(e2, d12), tensor_product(d12, e0),
          tensor_product(all, all)};
}

BipartiteState upb_tiles_state() {
  const auto vecs = upb_tiles_vectors();
  ComplexMatrix rho = ComplexMatrix::identity(9);
  for (const auto& v : vecs) rho -= ComplexMatrix::projector(v);
  return BipartiteState(0.25 * rho, 3, 3);
}

BipartiteState mix_with_white_noise(const BipartiteState& state, double t) {
  require_range(t, 0.0, 1.0, "mix_with_white_noise: t");
  const auto dim = state.total_dim();
  ComplexMatrix rho = t * state.rho() + ((1.0 - t) / static_cast<double>(dim)) * ComplexMatrix::identity(dim);
  return BipartiteState(std::move(rho), state.dim_a(), state.dim_b());
}

BipartiteState apply_local_unitaries(const BipartiteState& state, const ComplexMatrix& ua, const ComplexMatrix& ub) {
  if (ua.rows() != state.dim_a() || ub.rows() != state.dim_b()) {
    throw DimensionError("apply_local_unitaries: unitary sizes do not match subsystem dimensions");
  }
  const ComplexMatrix u = tensor_product(ua, ub);
  ComplexMatrix rho = u * state.rho() * u.adjoint();
  // Re-symmetrize the roundoff so validation sees an exactly Hermitian matrix.
  rho = 0.5 * (rho + rho.adjoint());
  return BipartiteState(std::move(rho), state.dim_a(), state.dim_b());
}

FanoForm fano_decompose(const BipartiteState& state) {
  const std::size_t m = state.dim_a();
  const std::size_t n = state.dim_b();
  FanoForm f;
  f.dim_a = m;
  f.dim_b = n;
  if (m < 2 || n < 2) throw DimensionError("fano_decompose: both subsystems need dimension at least 2");
  const auto gens_a = gell_mann_generators(m);
  const auto gens_b = gell_mann_generators(n);
  const ComplexMatrix rho_a = state.reduced_a();
  const ComplexMatrix rho_b = state.reduced_b();
  const ComplexMatrix& rho = state.rho();

  f.r_a.resize(gens_a.size());
  for (std::size_t i = 0; i < gens_a.size(); ++i)
    f.r_a[i] = 0.5 * static_cast<double>(m) * real_trace_of_product(gens_a[i], rho_a);
  f.r_b.resize(gens_b.size());
  for (std::size_t j = 0; j < gens_b.size(); ++j)
    f.r_b[j] = 0.5 * static_cast<double>(n) * real_trace_of_product(gens_b[j], rho_b);

  std::vector<std::vector<SparseEntry>> nz_a;
  std::vector<std::vector<SparseEntry>> nz_b;
  for (const auto& g : gens_a) nz_a.push_back(nonzeros(g));
  for (const auto& g : gens_b) nz_b.push_back(nonzeros(g));

  f.t = RealMatrix(gens_a.size(), gens_b.size());
  const double scale = 0.25 * static_cast<double>(m * n);
  for (std::size_t i = 0; i < gens_a.size(); ++i)
    for (std::size_t j = 0; j < gens_b.size(); ++j) {
      // Tr((σ_i ⊗ σ_j) ρ) = Σ σ_i[a,b] σ_j[k,l] ρ[(b,l),(a,k)]
      Complex s = 0.0;
      for (const auto& ea : nz_a[i])
        for (const auto& eb : nz_b[j]) s += ea.value * eb.value * rho(ea.col * n + eb.col, ea.row * n + eb.row);
      f.t(i, j) = scale * s.real();
    }
  return f;
}

ComplexMatrix fano_reconstruct(const FanoForm& fano) {
  const std::size_t m = fano.dim_a;
  const std::size_t n = fano.dim_b;
  const auto gens_a = gell_mann_generators(m);
  const auto gens_b = gell_mann_generators(n);
  if (fano.r_a.size() != gens_a.size() || fano.r_b.size() != gens_b.size() || fano.t.rows != gens_a.size() ||
      fano.t.cols != gens_b.size()) {
    throw DimensionError("fano_reconstruct: component sizes do not match dimensions");
  }
  const ComplexMatrix id_a = ComplexMatrix::identity(m);
  const ComplexMatrix id_b = ComplexMatrix::identity(n);
  ComplexMatrix sa(m, m);
  for (std::size_t i = 0; i < gens_a.size(); ++i) sa += fano.r_a[i] * gens_a[i];
  ComplexMatrix sb(n, n);
  for (std::size_t j = 0; j < gens_b.size(); ++j) sb += fano.r_b[j] * gens_b[j];

  ComplexMatrix rho = ComplexMatrix::identity(m * n) + tensor_product(sa, id_b) + tensor_product(id_a, sb);
  for (std::size_t i = 0; i < gens_a.size(); ++i) {
    ComplexMatrix row(n, n);
    bool any = false;
    for (std::size_t j = 0; j < gens_b.size(); ++j) {
      if (fano.t(i, j) == 0.0) continue;
      row += fano.t(i, j) * gens_b[j];
      any = true;
    }
    if (any) rho += tensor_product(gens_a[i], row);
  }
  return (1.0 / static_cast<double>(m * n)) * rho;
}

BipartiteState two_qubit_from_fano(const FanoForm& fano) {
  if (fano.dim_a != 2 || fano.dim_b != 2) throw DimensionError("two_qubit_from_fano: requires M = N = 2");
  return BipartiteState(fano_reconstruct(fano), 2, 2);
}

SchmidtDecomposition schmidt_decompose(std::span<const Complex> psi, std::size_t m, std::size_t n) {
  if (psi.size() != m * n) throw DimensionError("schmidt_decompose: vector length differs from m*n");
  if (std::abs(vector_norm(psi) - 1.0) > kTol.unit_vector) {
    throw DomainError("schmidt_decompose: vector is not normalized");
  }
  ComplexMatrix rho_a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += psi[i * n + k] * std::conj(psi[j * n + k]);
      rho_a(i, j) = s;
    }
  const auto es = hermitian_eig(rho_a);

  struct Term {
    double coeff;
    ComplexVector a;
    ComplexVector b;
  };
  std::vector<Term> terms;
  for (std::size_t c = m; c-- > 0;) {
    ComplexVector a = es.eigenvectors.column(c);
    // (⟨a|⊗I)|ψ⟩; its norm is the Schmidt coefficient.
    ComplexVector b(n);
    for (std::size_t k = 0; k < n; ++k) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += std::conj(a[i]) * psi[i * n + k];
      b[k] = s;
    }
    const double coeff = vector_norm(b);
    if (coeff < kTol.schmidt_drop) continue;
    for (auto& x : b) x /= coeff;
    terms.push_back({coeff, std::move(a), std::move(b)});
  }
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.coeff > y.coeff; });

  SchmidtDecomposition out;
  out.basis_a = ComplexMatrix(m, terms.size());
  out.basis_b = ComplexMatrix(n, terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    out.coefficients.push_back(terms[k].coeff);
    for (std::size_t i = 0; i < m; ++i) out.basis_a(i, k) = terms[k].a[i];
    for (std::size_t j = 0; j < n; ++j) out.basis_b(j, k) = terms[k].b[j];
  }
  return out;
}

}  // namespace fudist
