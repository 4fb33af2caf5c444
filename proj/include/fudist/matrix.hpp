#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "fudist/tolerances.hpp"

namespace fudist {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix. Values are immutable once handed out by
/// the library; the mutating accessors exist for construction only.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> d);
  static ComplexMatrix diagonal(std::span<const double> d);
  /// |v⟩⟨v|
  static ComplexMatrix projector(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  /// Column c as a vector.
  ComplexVector column(std::size_t c) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(double s, ComplexMatrix a);
ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

/// Entrywise comparison with an explicit absolute tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// Real dense row-major matrix (correlation matrices, SO(3) rotations).
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0.0) {}

  double operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  double& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
};

// ---------------------------------------------------------------------------
// Kernel operations
// ---------------------------------------------------------------------------

enum class Subsystem { A, B };

/// Kronecker product: element (i·b.rows + k, j·b.cols + l) = a(i,j)·b(k,l).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(std::span<const Complex> a, std::span<const Complex> b);

/// Reduced state of an (m·n)×(m·n) operator. keep=A traces out B and vice versa.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t m, std::size_t n, Subsystem keep);

/// Transposes the B index pair of an (m·n)×(m·n) operator.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t m, std::size_t n);

double frobenius_norm(const ComplexMatrix& a);

/// ‖AB − BA‖_F
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// Re Tr(ρ²)
double purity(const ComplexMatrix& rho);

/// Re Tr(AB) without forming the product.
double real_trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise |A − A†|.
double hermiticity_defect(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol = kTol.hermitian);

/// ‖U†U − I‖_F
double unitarity_defect(const ComplexMatrix& u);

struct HermitianEigenSystem {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, matching order
};

/// Cyclic complex Jacobi. Throws InvariantError on non-Hermitian input and
/// ConvergenceError after the sweep cap.
HermitianEigenSystem hermitian_eig(const ComplexMatrix& a, const Tolerances& tol = kTol);

/// exp(iH) for Hermitian H via its spectral decomposition.
ComplexMatrix mat_exp_i_hermitian(const ComplexMatrix& h);

/// V diag(f(λ)) V†
ComplexMatrix spectral_reconstruct(const HermitianEigenSystem& es, std::span<const Complex> values);

double vector_norm(std::span<const Complex> v);
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);  // ⟨a|b⟩

}  // namespace fudist
