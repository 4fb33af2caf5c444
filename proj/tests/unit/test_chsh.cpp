#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fudist/chsh.hpp"
#include "fudist/errors.hpp"
#include "fudist/fu.hpp"
#include "test_support.hpp"

using namespace fudist;
using namespace fudist::testing;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

BipartiteState singlet_mixture(double p) {
  const double s = 1.0 / kSqrt2;
  const ComplexVector singlet{0.0, s, -s, 0.0};
  return pseudopure(pure_state(singlet, 2, 2), p);
}

}  // namespace

TEST_CASE("Horodecki M") {
  for (double p : {0.0, 0.3, 0.6, 1.0}) {
    const auto r = horodecki_m(fano_decompose(singlet_mixture(p)));
    CHECK(r.m_value == doctest::Approx(2.0 * p * p).epsilon(1e-10));
    CHECK(r.tau.first >= r.tau.second);
    CHECK(r.tau.second >= 0.0);
    CHECK(r.m_value == doctest::Approx(r.tau.first + r.tau.second).epsilon(1e-12));
  }
  const double h = 1.0 / kSqrt2;
  const std::vector<double> bell{h, h};
  const auto phi = horodecki_m(fano_decompose(pure_from_schmidt(bell, 2, 2)));
  CHECK(phi.m_value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(phi.violates);

  Rng rng(50);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ra = random_mixed_state(rng, 1, 2, 2).rho();
    const auto rb = random_mixed_state(rng, 1, 2, 1).rho();
    const auto f = fano_decompose(BipartiteState(tensor_product(ra, rb), 2, 2));
    const double na = f.r_a[0] * f.r_a[0] + f.r_a[1] * f.r_a[1] + f.r_a[2] * f.r_a[2];
    const double nb = f.r_b[0] * f.r_b[0] + f.r_b[1] * f.r_b[1] + f.r_b[2] * f.r_b[2];
    const auto r = horodecki_m(f);
    CHECK(r.m_value == doctest::Approx(na * nb).epsilon(1e-10));
    CHECK_FALSE(r.violates);
  }
  CHECK_THROWS_AS(horodecki_m(fano_decompose(werner(3, 0.5))), DimensionError);
}

TEST_CASE("pure-state CHSH maximum and concurrences") {
  const double h = 1.0 / kSqrt2;
  CHECK(b_max_pure(h, h) == doctest::Approx(2.0 * kSqrt2).epsilon(1e-14));
  CHECK(b_max_pure(1.0, 0.0) == 2.0);
  const double a0 = 0.9239;
  const double a1 = std::sqrt(1.0 - a0 * a0);
  CHECK(b_max_pure(a0, a1) > 2.0);
  CHECK(2.0 * a0 * a1 <= 1.0 / kSqrt2);
  CHECK_THROWS_AS(b_max_pure(0.5, 0.5), DomainError);

  CHECK(concurrence_two_qubit_pure(h, h) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(concurrence_two_qubit_pure(1.0, 0.0) == 0.0);
  CHECK(concurrence_two_qubit_pure(0.6, 0.8) == doctest::Approx(0.96).epsilon(1e-14));

  const std::vector<double> bell{h, h};
  CHECK(concurrence_rungta(bell) == doctest::Approx(1.0).epsilon(1e-14));
  const std::vector<double> cr{h, 0.5, 0.5};
  CHECK(concurrence_rungta_max(3) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(concurrence_rungta_normalized(cr) == doctest::Approx(0.9682).epsilon(5e-5));
  const std::vector<double> prod{1.0, 0.0, 0.0};
  CHECK(concurrence_rungta(prod) == 0.0);

  const std::vector<double> flat3(3, 1.0 / std::sqrt(3.0));
  CHECK(concurrence_audenaert(flat3) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(concurrence_audenaert(std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK(concurrence_audenaert(cr) == doctest::Approx(h).epsilon(1e-14));
  CHECK_THROWS_AS(concurrence_audenaert(std::vector<double>{1.0}), DomainError);

  // Neither generalization reproduces d_max on these states.
  CHECK(dmax_pseudopure(cr, 1.0, 3, 3).d_value == doctest::Approx(1.0));
  CHECK(std::abs(concurrence_rungta_normalized(cr) - 1.0) > 0.01);
  CHECK(dmax_pseudopure(flat3, 1.0, 3, 3).d_value == doctest::Approx(1.0));
  CHECK(std::abs(concurrence_audenaert(flat3) - 1.0) > 0.1);
}

TEST_CASE("pure two-qubit states: B_max and d_max") {
  for (int i = 1; i < 100; ++i) {
    const double a0 = i / 100.0;
    const double a1 = std::sqrt(1.0 - a0 * a0);
    const std::vector<double> c{std::max(a0, a1), std::min(a0, a1)};
    const double d = dmax_pseudopure(c, 1.0, 2, 2).d_value;
    CHECK(std::abs(b_max_pure(a0, a1) - 2.0 * std::sqrt(1.0 + d * d)) <= 1e-10);
    const auto m = horodecki_m(fano_decompose(pure_from_schmidt(c, 2, 2)));
    CHECK((d > 0.0) == m.violates);
  }
}

TEST_CASE("equivalence classes") {
  const auto w = equivalence_class_check(fano_decompose(singlet_mixture(0.8)));
  CHECK(w.maximally_mixed_b);
  CHECK(w.equivalence_holds());
  CHECK(w.label.find("maximally-mixed-B") != std::string::npos);

  const double a0 = 0.95;
  const std::vector<double> c{a0, std::sqrt(1.0 - a0 * a0)};
  const auto p = equivalence_class_check(fano_decompose(pure_from_schmidt(c, 2, 2)));
  CHECK_FALSE(p.any_condition());
  CHECK(p.label == "none");
  CHECK(p.violates_chsh);
  CHECK_FALSE(p.exceeds_classical);
  CHECK_FALSE(p.equivalence_holds());

  FanoForm f{2, 2, {0.0, 0.0, 0.0}, {0.0, 0.1, 0.05}, RealMatrix(3, 3)};
  f.t(0, 0) = 0.5;
  f.t(1, 1) = -0.5;
  f.t(2, 2) = 0.5;
  CHECK(equivalence_class_check(f).equal_magnitudes);

  FanoForm g{2, 2, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.2}, RealMatrix(3, 3)};
  g.t(0, 0) = 0.8;
  g.t(1, 1) = -0.7;
  g.t(2, 2) = 0.1;
  const auto eg = equivalence_class_check(g);
  CHECK(eg.aligned_axis);
  CHECK(eg.equivalence_holds());

  // Every condition implies the equivalence on random states.
  Rng rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    const auto e = equivalence_class_check(fano_decompose(random_diag_t_state(rng)));
    if (e.any_condition()) CHECK(e.equivalence_holds());
  }

  FanoForm off = g;
  off.t(0, 2) = 0.1;
  CHECK_THROWS_AS(equivalence_class_check(off), DomainError);
}
