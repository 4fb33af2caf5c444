#include "fudist/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fudist {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double Rng::normal() {
  // Box–Muller; 1 − u keeps the logarithm finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::index(std::size_t n) { return static_cast<std::size_t>(uniform01() * static_cast<double>(n)); }

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  std::vector<ComplexVector> cols;
  while (cols.size() < n) {
    ComplexVector v(n);
    for (auto& x : v) x = Complex(rng.normal(), rng.normal());
    for (const auto& c : cols) {
      const Complex p = inner_product(c, v);
      for (std::size_t i = 0; i < n; ++i) v[i] -= p * c[i];
    }
    const double norm = vector_norm(v);
    if (norm < 1e-8) continue;
    for (auto& x : v) x /= norm;
    cols.push_back(std::move(v));
  }
  ComplexMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) u(i, j) = cols[j][i];
  return u;
}

std::vector<double> random_schmidt_coefficients(Rng& rng, std::size_t k) {
  std::vector<double> a(k);
  double norm = 0.0;
  while (norm < 1e-8) {
    norm = 0.0;
    for (auto& x : a) {
      x = std::abs(rng.normal());
      norm += x * x;
    }
    norm = std::sqrt(norm);
  }
  for (auto& x : a) x /= norm;
  std::sort(a.begin(), a.end(), std::greater<>());
  return a;
}

BipartiteState random_pure_state(Rng& rng, std::size_t m, std::size_t n) {
  const auto coeffs = random_schmidt_coefficients(rng, std::min(m, n));
  const BipartiteState base = pure_from_schmidt(coeffs, m, n);
  return apply_local_unitaries(base, random_unitary(rng, m), random_unitary(rng, n));
}

BipartiteState random_mixed_state(Rng& rng, std::size_t m, std::size_t n, std::size_t rank) {
  const std::size_t d = m * n;
  ComplexMatrix g(d, rank);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  // Exact Hermitian symmetrization against roundoff.
  rho = 0.5 * (rho + rho.adjoint());
  return BipartiteState(std::move(rho), m, n);
}

BipartiteState random_diag_t_state(Rng& rng) {
  if (rng.uniform01() < 0.2) {
    const double theta = rng.uniform(0.0, std::numbers::pi / 2.0);
    const std::vector<double> coeffs{std::cos(theta), std::sin(theta)};
    return pure_from_schmidt(coeffs, 2, 2);
  }
  FanoForm f;
  f.dim_a = 2;
  f.dim_b = 2;
  f.t = RealMatrix(3, 3);
  const auto random_vector = [&](double radius) {
    std::vector<double> v(3);
    for (auto& x : v) x = rng.normal();
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    const double r = radius * std::cbrt(rng.uniform01());
    for (auto& x : v) x *= r / norm;
    return v;
  };
  // Half of the instances keep r_B = 0 or put it on a coordinate axis so the
  // degenerate and aligned branches get exercised.
  const double mode = rng.uniform01();
  f.r_a = random_vector(1.0);
  if (mode < 0.15) {
    f.r_b = {0.0, 0.0, 0.0};
  } else if (mode < 0.4) {
    f.r_b = {0.0, 0.0, 0.0};
    f.r_b[rng.index(3)] = rng.uniform(-1.0, 1.0);
  } else {
    f.r_b = random_vector(1.0);
  }
  for (std::size_t i = 0; i < 3; ++i) f.t(i, i) = rng.uniform(-1.0, 1.0);

  const ComplexMatrix x = fano_reconstruct(f);
  const double mu = min_eigenvalue(x);
  double t = 1.0;
  if (mu < 0.0) {
    t = 0.25 / (0.25 - mu);
    // Land on the boundary of the state space half of the time.
    if (rng.uniform01() < 0.5) t *= rng.uniform(0.3, 1.0);
  }
  for (auto& v : f.r_a) v *= t;
  for (auto& v : f.r_b) v *= t;
  for (auto& v : f.t.entries) v *= t;
  ComplexMatrix rho = fano_reconstruct(f);
  // Clip the roundoff-negative boundary eigenvalue.
  const double mu2 = min_eigenvalue(rho);
  if (mu2 < 0.0) {
    const double s = 0.25 / (0.25 - mu2);
    for (auto& v : f.r_a) v *= s;
    for (auto& v : f.r_b) v *= s;
    for (auto& v : f.t.entries) v *= s;
    rho = fano_reconstruct(f);
  }
  return BipartiteState(std::move(rho), 2, 2);
}

}  // namespace fudist
