#include "fudist/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fudist/errors.hpp"

namespace fudist {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: " + std::to_string(entries_.size()) + " entries for a " +
                         std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ComplexMatrix: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  ComplexVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex{s, 0.0}; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("operator*: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw DimensionError("matrix-vector product: size mismatch");
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (std::abs(ea[i] - eb[i]) > tol) return false;
  return true;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexVector tensor_product(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t m, std::size_t n, Subsystem keep) {
  if (!rho.is_square() || rho.rows() != m * n) {
    throw DimensionError("partial_trace: expected a " + std::to_string(m * n) + "x" +
                         std::to_string(m * n) + " operator");
  }
  if (keep == Subsystem::A) {
    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += rho(i * n + k, j * n + k);
        out(i, j) = s;
      }
    return out;
  }
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += rho(i * n + k, i * n + l);
      out(k, l) = s;
    }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t m, std::size_t n) {
  if (!rho.is_square() || rho.rows() != m * n) throw DimensionError("partial_transpose: dimension mismatch");
  ComplexMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(i * n + k, j * n + l) = rho(i * n + l, j * n + k);
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& e : a.entries()) s += std::norm(e);
  return std::sqrt(s);
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("commutator_norm: operands must be square of equal size");
  }
  return frobenius_norm(a * b - b * a);
}

double real_trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw DimensionError("trace of product: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += (a(i, j) * b(j, i)).real();
  return s;
}

double purity(const ComplexMatrix& rho) {
  if (!rho.is_square()) throw DimensionError("purity: matrix must be square");
  return real_trace_of_product(rho, rho);
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.is_square()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return hermiticity_defect(a) <= tol * std::max(1.0, frobenius_norm(a));
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!u.is_square()) return std::numeric_limits<double>::infinity();
  return frobenius_norm(u.adjoint() * u - ComplexMatrix::identity(u.rows()));
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p,q). The rotation
//   J = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]] on rows/cols (p,q), a(p,q) = |a_pq|e^{iφ},
// is applied as A ← J†AJ and V ← VJ.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex jpq = s * phase;
  const Complex jqp = -s * std::conj(phase);
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * c + akq * jqp;
    a(k, q) = akp * jpq + akq * c;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * c + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * c;
  }
}

}  // namespace

HermitianEigenSystem hermitian_eig(const ComplexMatrix& input, const Tolerances& tol) {
  if (!input.is_square()) throw DimensionError("hermitian_eig: matrix must be square");
  if (!is_hermitian(input, tol.hermitian)) {
    throw InvariantError("hermitian_eig: input is not Hermitian (defect " +
                         std::to_string(hermiticity_defect(input)) + ")");
  }
  const std::size_t n = input.rows();
  // Symmetrize so the rotations act on an exactly Hermitian matrix.
  ComplexMatrix a = 0.5 * (input + input.adjoint());
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = tol.jacobi_off_threshold * std::max(1.0, frobenius_norm(a));

  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweep++ >= tol.jacobi_max_sweeps) {
      throw ConvergenceError("hermitian_eig: no convergence after " + std::to_string(tol.jacobi_max_sweeps) +
                             " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigenSystem es;
  es.eigenvalues.resize(n);
  es.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    es.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) es.eigenvectors(r, c) = v(r, order[c]);
  }
  return es;
}

ComplexMatrix spectral_reconstruct(const HermitianEigenSystem& es, std::span<const Complex> values) {
  const std::size_t n = es.eigenvectors.rows();
  if (values.size() != es.eigenvectors.cols()) throw DimensionError("spectral_reconstruct: value count mismatch");
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == Complex{}) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = es.eigenvectors(i, k) * values[k];
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(es.eigenvectors(j, k));
    }
  }
  return out;
}

ComplexMatrix mat_exp_i_hermitian(const ComplexMatrix& h) {
  const auto es = hermitian_eig(h);
  ComplexVector phases(es.eigenvalues.size());
  for (std::size_t k = 0; k < phases.size(); ++k) phases[k] = std::polar(1.0, es.eigenvalues[k]);
  return spectral_reconstruct(es, phases);
}

double vector_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("inner_product: size mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace fudist
