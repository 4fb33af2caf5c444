#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fudist/errors.hpp"
#include "fudist/fu.hpp"
#include "test_support.hpp"

using namespace fudist;
using namespace fudist::testing;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void check_witness(const BipartiteState& state, const FuReport& r) {
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->is_cyclic());
  CHECK(r.witness->cyclicity_residual <= 1e-8);
  CHECK(std::abs(fu_distance(state, r.witness->u) - r.d_value) <= 1e-8);
  CHECK(r.d_value <= r.bounds.purity + 1e-8);
}

ComplexMatrix random_diagonal_unitary(Rng& rng, std::size_t n) {
  std::vector<Complex> d(n);
  for (auto& x : d) x = std::polar(1.0, rng.uniform(-std::numbers::pi, std::numbers::pi));
  return ComplexMatrix::diagonal(std::span<const Complex>(d));
}

FanoForm diag_t_fano(std::vector<double> rb, double l0, double l1, double l2) {
  FanoForm f{2, 2, {0, 0, 0}, std::move(rb), RealMatrix(3, 3)};
  f.t(0, 0) = l0;
  f.t(1, 1) = l1;
  f.t(2, 2) = l2;
  return f;
}

}  // namespace

TEST_CASE("distance definitions agree") {
  Rng rng(20);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 1 + rng.index(4);
    const std::size_t n = 1 + rng.index(4);
    const auto s = random_mixed_state(rng, m, n, 1 + rng.index(m * n));
    const auto u = random_unitary(rng, n);
    const double d = fu_distance(s, u);
    // Compare squares: the square root amplifies roundoff near d = 0.
    const double df = fu_distance_frobenius(s, u);
    CHECK(std::abs(d * d - df * df) <= 1e-12);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0 + 1e-9);
  }
}

TEST_CASE("distance examples") {
  Rng rng(21);
  const auto s = random_mixed_state(rng, 2, 3, 2);
  CHECK(fu_distance(s, ComplexMatrix::identity(3)) <= 1e-15);

  const double h = 1.0 / kSqrt2;
  const std::vector<double> bell{h, h};
  CHECK(fu_distance(pure_from_schmidt(bell, 2, 2), pauli_z()) == doctest::Approx(1.0).epsilon(1e-14));

  const std::vector<double> cc{0.5, 0.0, 0.0, 0.5};
  const BipartiteState rho_cc(ComplexMatrix::diagonal(std::span<const double>(cc)), 2, 2);
  CHECK(fu_distance(rho_cc, pauli_x()) == doctest::Approx(1.0 / kSqrt2).epsilon(1e-14));

  CHECK_THROWS_AS(fu_distance(s, ComplexMatrix::identity(2)), DimensionError);
  CHECK_THROWS_AS(fu_distance(s, 2.0 * ComplexMatrix::identity(3)), InvariantError);
}

TEST_CASE("product states are not moved by cyclic unitaries") {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ra = random_mixed_state(rng, 1, 3, 2).rho();
    std::vector<double> p{rng.uniform01(), rng.uniform01(), rng.uniform01()};
    const double sum = p[0] + p[1] + p[2];
    for (auto& x : p) x /= sum;
    const BipartiteState prod(tensor_product(ra, ComplexMatrix::diagonal(std::span<const double>(p))), 3, 3);
    const auto u = random_diagonal_unitary(rng, 3);
    REQUIRE(cyclicity_residual(prod, u) <= 1e-8);
    CHECK(fu_distance(prod, u) <= 1e-7);
  }
}

TEST_CASE("correlation-matrix form") {
  const double h = 1.0 / kSqrt2;
  const std::vector<double> bell{h, h};
  const auto phi = pure_from_schmidt(bell, 2, 2);
  const auto f = fano_decompose(phi);
  CHECK(fu_distance_via_correlation(f, f) == 0.0);

  const auto rotated = BipartiteState(locally_rotated(phi, pauli_z()), 2, 2);
  const auto ff = fano_decompose(rotated);
  CHECK(ff.t(0, 0) == doctest::Approx(-1.0));
  CHECK(ff.t(1, 1) == doctest::Approx(1.0));
  CHECK(ff.t(2, 2) == doctest::Approx(1.0));
  CHECK(fu_distance_via_correlation(f, ff) == doctest::Approx(1.0).epsilon(1e-12));

  const auto w = werner(2, 0.0);
  const auto wf = BipartiteState(locally_rotated(w, pauli_z()), 2, 2);
  CHECK(std::abs(fu_distance_via_correlation(fano_decompose(w), fano_decompose(wf)) - fu_distance(w, pauli_z())) <=
        1e-8);

  // Any unitary is cyclic for ρ_B = I/3.
  Rng rng(23);
  for (double alpha : {2.0, 3.3, 4.7}) {
    const auto r = horodecki_rho_alpha(alpha);
    const auto u = random_unitary(rng, 3);
    const BipartiteState rf(locally_rotated(r, u), 3, 3);
    CHECK(std::abs(fu_distance_via_correlation(fano_decompose(r), fano_decompose(rf)) - fu_distance(r, u)) <= 1e-8);
  }
}

TEST_CASE("cyclicity residual") {
  Rng rng(24);
  CHECK(cyclicity_residual(horodecki_rho_alpha(3.0), random_unitary(rng, 3)) <= 1e-14);
  const std::vector<double> d{0.1, 0.2, 0.3, 0.4};
  const BipartiteState diag(ComplexMatrix::diagonal(std::span<const double>(d)), 2, 2);
  CHECK(cyclicity_residual(diag, random_diagonal_unitary(rng, 2)) <= 1e-15);

  // Pseudopure: [ρ_B, U]_{ln} = ε(a_l² − a_n²)U_{ln}.
  const std::vector<double> a{std::sqrt(0.6), std::sqrt(0.3), std::sqrt(0.1)};
  const double eps = 0.7;
  const auto s = pseudopure(pure_from_schmidt(a, 3, 3), eps);
  const auto u = random_unitary(rng, 3);
  double expected = 0.0;
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t n = 0; n < 3; ++n) expected += std::norm(eps * (a[l] * a[l] - a[n] * a[n]) * u(l, n));
  CHECK(cyclicity_residual(s, u) == doctest::Approx(std::sqrt(expected)).epsilon(1e-12));
  CHECK(cyclicity_residual(s, u) > 0.0);
}

TEST_CASE("overlap-cancelling phases close the polygon") {
  Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.index(7);
    const auto a = random_schmidt_coefficients(rng, k);
    const auto phases = overlap_cancelling_phases(a);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += a[i] * a[i] * std::polar(1.0, phases[i]);
    if (a[0] * a[0] <= 0.5) {
      CHECK(std::abs(sum) <= 1e-9);
    } else {
      CHECK(std::abs(sum) == doctest::Approx(2.0 * a[0] * a[0] - 1.0).epsilon(1e-12));
    }
  }
  // Equal weights and the boundary case a_m² = 1/2.
  const std::vector<double> flat(5, 1.0 / std::sqrt(5.0));
  const auto pf = overlap_cancelling_phases(flat);
  Complex sf = 0.0;
  for (std::size_t i = 0; i < 5; ++i) sf += 0.2 * std::polar(1.0, pf[i]);
  CHECK(std::abs(sf) <= 1e-9);
}

TEST_CASE("pseudopure closed form") {
  const double h = 1.0 / kSqrt2;
  const std::vector<double> bell{h, h};
  CHECK(dmax_pseudopure(bell, 1.0, 2, 2).d_value == doctest::Approx(1.0).epsilon(1e-15));

  const std::vector<double> two{0.6, 0.8};
  CHECK(dmax_pseudopure(two, 1.0, 2, 2).d_value == doctest::Approx(0.96).epsilon(1e-14));

  const std::vector<double> cr{h, 0.5, 0.5};
  CHECK(dmax_pseudopure(cr, 1.0, 3, 3).d_value == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(26);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + rng.index(3);
    const std::size_t n = 2 + rng.index(3);
    const auto a = random_schmidt_coefficients(rng, std::min(m, n));
    const double eps = 1.0 - rng.uniform01();
    const auto r = dmax_pseudopure(a, eps, m, n);
    const auto state = pseudopure(pure_from_schmidt(a, m, n), eps);
    CHECK(r.closed_form_source == ClosedFormSource::Pseudopure);
    check_witness(state, r);
  }
  CHECK_THROWS_AS(dmax_pseudopure(std::vector<double>{0.5, 0.5}, 1.0, 2, 2), DomainError);
  CHECK_THROWS_AS(dmax_pseudopure(bell, 0.0, 2, 2), DomainError);
}

TEST_CASE("pseudopure closed form in a rotated Schmidt basis") {
  Rng rng(27);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = random_pure_state(rng, 3, 4);
    const auto es = hermitian_eig(psi.rho());
    const auto sd = schmidt_decompose(es.eigenvectors.column(11), 3, 4);
    const double eps = rng.uniform(0.1, 1.0);
    const auto r = dmax_pseudopure(sd, eps, 3, 4);
    check_witness(pseudopure(psi, eps), r);
  }
}

TEST_CASE("detection window") {
  const auto w1 = pseudopure_detection_window(1.0);
  REQUIRE(w1.has_value());
  CHECK(w1->first == doctest::Approx(0.5 * (1.0 - std::sqrt(0.5))).epsilon(1e-15));
  CHECK(std::sqrt(w1->second) == doctest::Approx(0.9239).epsilon(5e-4));

  const auto wc = pseudopure_detection_window(1.0 / kSqrt2);
  REQUIRE(wc.has_value());
  CHECK(wc->first == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(wc->second == doctest::Approx(0.5).epsilon(1e-7));
  CHECK_FALSE(pseudopure_detection_window(0.5).has_value());

  // Inside the window the formula exceeds 1/√2, outside it does not.
  for (double am2 = 0.51; am2 < 1.0; am2 += 0.01) {
    const bool inside = am2 > w1->first && am2 < w1->second;
    CHECK((pseudopure_dmax_value(std::sqrt(am2), 1.0) > 1.0 / kSqrt2) == inside);
  }
}

TEST_CASE("Werner closed form") {
  CHECK(werner_dmax_value(2, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(werner_dmax_value(3, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  for (std::size_t d : {2u, 3u, 5u, 10000u}) CHECK(werner_dmax_value(d, 1.0) == doctest::Approx(1.0 / (d + 1.0)));

  const double s = 1.0 / kSqrt2;
  const ComplexVector singlet{0.0, s, -s, 0.0};
  const auto sigma = schmidt_decompose(singlet, 2, 2);
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    const double eps = std::abs(1.0 - 4.0 * p / 3.0);
    if (eps > 0.0) {
      CHECK(werner_dmax_value(2, p) == doctest::Approx(dmax_pseudopure(sigma, eps, 2, 2).d_value).epsilon(1e-12));
    }
  }

  for (std::size_t d : {2u, 3u, 4u}) {
    for (double p : {0.0, 0.2, 0.5, 0.8, 1.0}) {
      const auto r = dmax_werner(d, p);
      const auto w = werner(d, p);
      check_witness(w, r);
      CHECK(std::abs(fu_distance(w, r.witness->u) - r.d_value) <= 1e-10);
      CHECK(r.bounds.purity == doctest::Approx(bound_purity(w)).epsilon(1e-12));
    }
  }
}

TEST_CASE("rotations") {
  const Vec3 z{0.0, 0.0, 1.0};
  const auto o0 = rotation_from_axis_angle(z, 0.0);
  const auto opi = rotation_from_axis_angle(z, std::numbers::pi);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(o0[i][j] == doctest::Approx(i == j ? 1.0 : 0.0));
      const double e = i == j ? (i == 2 ? 1.0 : -1.0) : 0.0;
      CHECK(opi[i][j] == doctest::Approx(e).epsilon(1e-15));
    }
  CHECK_THROWS_AS(rotation_from_axis_angle(Vec3{1.0, 1.0, 0.0}, 1.0), DomainError);

  // U (v·σ) U† = (O v)·σ
  Rng rng(28);
  const ComplexMatrix sigma[3] = {pauli_x(), pauli_y(), pauli_z()};
  for (int trial = 0; trial < 10; ++trial) {
    Vec3 n{rng.normal(), rng.normal(), rng.normal()};
    const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (auto& x : n) x /= norm;
    const double theta = rng.uniform(-3.0, 3.0);
    const auto u = su2_rotation(n, theta);
    const auto o = rotation_from_axis_angle(n, theta);
    CHECK(unitarity_defect(u) <= 1e-14);
    const Vec3 v{rng.normal(), rng.normal(), rng.normal()};
    ComplexMatrix lhs(2, 2);
    ComplexMatrix rhs(2, 2);
    for (int i = 0; i < 3; ++i) {
      lhs += v[i] * sigma[i];
      double ov = 0.0;
      for (int j = 0; j < 3; ++j) ov += o[i][j] * v[j];
      rhs += ov * sigma[i];
    }
    CHECK(distance(u * lhs * u.adjoint(), rhs) <= 1e-12);
  }
}

TEST_CASE("two-qubit diagonal-T closed form") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = rng.uniform(0.0, std::numbers::pi / 2.0);
    const double a0 = std::cos(t);
    const double a1 = std::sin(t);
    const std::vector<double> coeffs{a0, a1};
    const auto psi = pure_from_schmidt(coeffs, 2, 2);
    const auto f = fano_decompose(psi);
    CHECK(f.t(0, 0) == doctest::Approx(2 * a0 * a1).epsilon(1e-12));
    CHECK(f.t(1, 1) == doctest::Approx(-2 * a0 * a1).epsilon(1e-12));
    CHECK(f.r_b[2] == doctest::Approx(a0 * a0 - a1 * a1).epsilon(1e-12));
    const auto r = dmax_two_qubit_diag_t(f);
    CHECK(r.d_value == doctest::Approx(2 * a0 * a1).epsilon(1e-10));
    check_witness(psi, r);
  }

  const auto zero = diag_t_fano({0.3, 0.0, 0.1}, 0.0, 0.0, 0.0);
  CHECK(dmax_two_qubit_diag_t(zero).d_value == 0.0);

  // ρ_B = I/2: the axis of the smallest |λ| is dropped, whatever the signs.
  const auto f = diag_t_fano({0, 0, 0}, 0.5, -0.4, 0.1);
  CHECK(dmax_two_qubit_diag_t(f).d_value == doctest::Approx(std::sqrt(0.25 + 0.16) / kSqrt2).epsilon(1e-14));
  const auto g = diag_t_fano({0, 0, 0}, -0.5, 0.2, -0.6);
  CHECK(dmax_two_qubit_diag_t(g).d_value == doctest::Approx(std::sqrt(0.25 + 0.36) / kSqrt2).epsilon(1e-14));
  const Vec3 axis = optimal_rotation_axis(g);
  CHECK(axis[1] == 1.0);
  for (int k = 0; k < 3; ++k) {
    Vec3 n{0.0, 0.0, 0.0};
    n[k] = 1.0;
    CHECK(fu_two_qubit_general_angle(g, n, std::numbers::pi) <= dmax_two_qubit_diag_t(g).d_value + 1e-15);
  }

  // Ties resolve to the lowest index.
  CHECK(optimal_rotation_axis(diag_t_fano({0, 0, 0}, 0.3, -0.3, 0.3))[0] == 1.0);

  FanoForm off = diag_t_fano({0, 0, 0}, 0.5, 0.5, 0.5);
  off.t(0, 1) = 0.1;
  CHECK_THROWS_AS(dmax_two_qubit_diag_t(off), DomainError);
}

TEST_CASE("general rotation angle") {
  const auto phi = diag_t_fano({0, 0, 0}, 1.0, -1.0, 1.0);
  const Vec3 z{0.0, 0.0, 1.0};
  CHECK(fu_two_qubit_general_angle(phi, z, 0.0) == 0.0);
  CHECK(fu_two_qubit_general_angle(phi, z, std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-15));

  Rng rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_diag_t_state(rng);
    const auto f = fano_decompose(s);
    const double rb = std::sqrt(f.r_b[0] * f.r_b[0] + f.r_b[1] * f.r_b[1] + f.r_b[2] * f.r_b[2]);
    if (rb <= 1e-6) continue;
    const Vec3 n{f.r_b[0] / rb, f.r_b[1] / rb, f.r_b[2] / rb};
    CHECK(fu_two_qubit_general_angle(f, n, std::numbers::pi) ==
          doctest::Approx(dmax_two_qubit_diag_t(f).d_value).epsilon(1e-12));
    // The general-angle expression is the distance of that SU(2) rotation.
    const double theta = rng.uniform(-3.0, 3.0);
    CHECK(std::abs(fu_two_qubit_general_angle(f, n, theta) - fu_distance(s, su2_rotation(n, theta))) <= 1e-10);
  }
}

TEST_CASE("bounds") {
  CHECK(bound_classical(2, 2) == doctest::Approx(1.0 / kSqrt2).epsilon(1e-15));
  CHECK(bound_classical(3, 3) == doctest::Approx(std::sqrt(8.0 / 9.0)).epsilon(1e-15));
  CHECK(bound_classical(1, 5) == 0.0);
  CHECK(bound_classical(50, 50) == 1.0);

  CHECK(bound_purity(BipartiteState(0.125 * ComplexMatrix::identity(8), 2, 4)) <= 1e-15);
  CHECK(bound_purity(upb_tiles_state()) == doctest::Approx(std::sqrt(10.0) / 6.0).epsilon(1e-12));
  CHECK(bound_upb(9, 5) == doctest::Approx(std::sqrt(10.0) / 6.0).epsilon(1e-15));
  CHECK(bound_upb(2, 1) == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t d = 2; d <= 40; ++d)
    for (std::size_t n = 1; n < d; ++n)
      if (n * (d + 4) <= d * d) CHECK(bound_upb(d, n) <= 1.0 / kSqrt2 + 1e-15);
  CHECK_THROWS_AS(bound_upb(9, 9), DomainError);
}

TEST_CASE("Horodecki rho_a closed form") {
  CHECK(horodecki_a_dmax_value(0.5) == doctest::Approx(kSqrt2 / 5.0).epsilon(1e-15));
  CHECK(horodecki_a_dmax_value(1.0 - 1e-12) == doctest::Approx(2.0 * kSqrt2 / 9.0).epsilon(1e-10));
  for (double a = 0.1; a < 0.95; a += 0.1) {
    const auto r = dmax_horodecki_a(a);
    check_witness(horodecki_rho_a(a), r);
    CHECK(r.witness->cyclicity_residual <= 1e-12);
  }
  CHECK_THROWS_AS(horodecki_a_dmax_value(0.0), DomainError);
}

TEST_CASE("Horodecki rho_alpha distance") {
  CHECK(horodecki_alpha_distance_value(2.0) == doctest::Approx(std::sqrt(3.0) / 7.0).epsilon(1e-15));
  CHECK(horodecki_alpha_distance_value(3.0) == doctest::Approx(std::sqrt(3.0) / 7.0).epsilon(1e-15));
  CHECK(horodecki_alpha_distance_value(5.0) == doctest::Approx(3.0 / 7.0).epsilon(1e-15));

  Rng rng(31);
  for (double alpha = 2.0; alpha <= 5.0; alpha += 0.3) {
    const auto r = fu_horodecki_alpha(alpha);
    const auto state = horodecki_rho_alpha(alpha);
    CHECK(r.witness.is_cyclic());
    for (std::size_t k = 0; k < 3; ++k) CHECK(r.witness.u(k, k) == Complex(0.0));
    CHECK(fu_distance(state, r.witness.u) == doctest::Approx(r.d_value).epsilon(1e-12));
    CHECK(r.d_value <= horodecki_alpha_bound(alpha) + 1e-12);
    // Any zero-diagonal unitary gives the same distance.
    const ComplexMatrix other{{0.0, std::polar(1.0, rng.uniform(0, 6)), 0.0},
                              {0.0, 0.0, std::polar(1.0, rng.uniform(0, 6))},
                              {std::polar(1.0, rng.uniform(0, 6)), 0.0, 0.0}};
    CHECK(fu_distance(state, other) == doctest::Approx(r.d_value).epsilon(1e-12));
  }
}

TEST_CASE("closed-form recognizer") {
  Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + rng.index(3);
    const std::size_t n = 2 + rng.index(3);
    if (m == 2 && n == 2) continue;
    const auto a = random_schmidt_coefficients(rng, std::min(m, n));
    const double eps = rng.uniform(0.05, 1.0);
    const auto state = apply_local_unitaries(pseudopure(pure_from_schmidt(a, m, n), eps), random_unitary(rng, m),
                                             random_unitary(rng, n));
    const auto r = closed_form_for_state(state);
    REQUIRE(r.has_value());
    CHECK(r->closed_form_source == ClosedFormSource::Pseudopure);
    CHECK(r->d_value == doctest::Approx(pseudopure_dmax_value(a[0], eps)).epsilon(1e-9));
    check_witness(state, *r);
  }

  const auto mixed4 = BipartiteState(0.25 * ComplexMatrix::identity(4), 2, 2);
  const auto r4 = closed_form_for_state(mixed4);
  REQUIRE(r4.has_value());
  CHECK(r4->d_value == 0.0);

  const auto d2 = random_diag_t_state(rng);
  const auto rd = closed_form_for_state(d2);
  REQUIRE(rd.has_value());
  CHECK(rd->closed_form_source == ClosedFormSource::TwoQubitDiagT);
  check_witness(d2, *rd);

  CHECK_FALSE(closed_form_for_state(random_mixed_state(rng, 2, 3, 3)).has_value());
  CHECK_FALSE(closed_form_for_state(upb_tiles_state()).has_value());
}
