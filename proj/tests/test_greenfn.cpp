#include <doctest.h>

#include <cmath>

#include "greensign/greenfn.hpp"
#include "oracles.hpp"

using namespace greensign;
using oracle::kPi;

namespace {

ProblemSpec t4() { return zero_coefficient_problem(4, 0.0, 1.0, {0, 2}, {1, 2}); }
ProblemSpec dirichlet() { return zero_coefficient_problem(2, 0.0, 1.0, {0}, {0}); }

SignClass sign_at(const ProblemSpec& s, double M, int grid = 61) {
  return classify_sign(build_green(s, M, grid, grid), derive_indices(s)).classification;
}

}  // namespace

TEST_CASE("second-order Dirichlet kernel") {
  const GreenFunction gf = build_green(dirichlet(), 0.0, 21, 21);
  for (int i = 0; i < 21; ++i) {
    for (int j = 0; j < 21; ++j) {
      const double t = gf.t_grid[i], s = gf.s_grid[j];
      const double want = t <= s ? t * (s - 1) : s * (t - 1);
      CHECK(gf.values(i, j) == doctest::Approx(want).scale(1.0).epsilon(1e-12));
    }
  }
  CHECK(gf.values(10, 10) == doctest::Approx(-0.25));
  CHECK(classify_sign(gf, derive_indices(dirichlet())).classification == SignClass::StronglyInverseNegative);
}

TEST_CASE("fourth-order kernel, boundary slices and diagnostics") {
  const GreenFunction gf = build_green(t4(), 0.0, 41, 41);
  for (int i = 0; i < 41; ++i) {
    for (int j = 0; j < 41; ++j) {
      CHECK(gf.values(i, j) == doctest::Approx(oracle::g_t4(gf.t_grid[i], gf.s_grid[j])).scale(1.0).epsilon(1e-12));
    }
  }
  REQUIRE(gf.has_slices());
  CHECK(gf.alpha == 1);
  CHECK(gf.beta == 0);
  for (int j = 0; j < 41; ++j) {
    CHECK(gf.d_alpha_at_a[j] == doctest::Approx(oracle::dg_t4_at_0(gf.s_grid[j])).scale(1.0).epsilon(1e-12));
    CHECK(gf.d_beta_at_b[j] == doctest::Approx(oracle::g_t4(1.0, gf.s_grid[j])).scale(1.0).epsilon(1e-12));
  }
  CHECK(gf.max_bc_residual < 1e-10);
  CHECK(gf.max_jump_residual < 1e-10);
  CHECK(gf.max_solve_residual < 1e-10);
  CHECK(gf.warnings.empty());

  const SignReport r = classify_sign(gf, derive_indices(t4()));
  CHECK(r.classification == SignClass::StronglyInversePositive);
  CHECK(r.interior_sign_ok);
  CHECK(r.d_alpha_ok);
  CHECK(r.d_beta_ok);
  CHECK(sign_class_short(r.classification) == "SIP");
  CHECK(sign_class_name(r.classification) == "strongly-inverse-positive");
}

TEST_CASE("samples do not depend on the grid") {
  const GreenFunction coarse = build_green(t4(), 40.0, 11, 11);
  const GreenFunction fine = build_green(t4(), 40.0, 101, 101);
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 11; ++j) {
      CHECK(coarse.values(i, j) == doctest::Approx(fine.values(10 * i, 10 * j)).scale(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("eigenvalues make the kernel singular") {
  CHECK_THROWS_AS(build_green(dirichlet(), kPi * kPi, 11, 11), SingularError);
  CHECK_THROWS_AS(build_green(t4(), -std::pow(oracle::m1(), 4), 11, 11), SingularError);
  CHECK_THROWS_AS(build_green(t4(), 0.0, 2, 11), ValidationError);
}

TEST_CASE("sign changes at the ends of the positive interval") {
  const double upper = 4 * std::pow(kPi, 4);
  const double lower = -std::pow(oracle::m1(), 4);
  CHECK(sign_at(t4(), upper) == SignClass::StronglyInversePositive);
  CHECK(sign_at(t4(), upper + 4.2) == SignClass::Indeterminate);
  CHECK(sign_at(t4(), upper + 50.0) == SignClass::Indeterminate);
  CHECK(sign_at(t4(), lower + 1.0) == SignClass::StronglyInversePositive);
  CHECK(sign_at(t4(), -35.49) == SignClass::StronglyInverseNegative);
}

TEST_CASE("monotone decrease in M while inverse positive") {
  const GreenFunction g1 = build_green(t4(), -20.0, 31, 31);
  const GreenFunction g2 = build_green(t4(), 200.0, 31, 31);
  // Boundary rows are zero up to rounding.
  CHECK((g2.values - g1.values).maxCoeff() <= 1e-14);
}

TEST_CASE("bound profiles enclose the kernel") {
  const GreenFunction gf = build_green(t4(), 0.0, 51, 51);
  const PgBounds pg = pg_ng_bounds(gf, derive_indices(t4()));
  for (int j = 1; j < 50; ++j) {
    const double s = gf.s_grid[j];
    CHECK(pg.k1[j] == doctest::Approx(oracle::k1_t4(s)).scale(1.0).epsilon(1e-12));
    CHECK(pg.k2[j] == doctest::Approx(oracle::k2_t4(s)).scale(1.0).epsilon(1e-12));
    for (int i = 1; i < 50; ++i) {
      const double t = gf.t_grid[i];
      CHECK(gf.values(i, j) >= t * pg.k1[j] - 1e-14);
      CHECK(gf.values(i, j) <= t * pg.k2[j] + 1e-14);
    }
  }
}

TEST_CASE("adjoint kernel is the transpose") {
  const ProblemSpec s = oracle::t4_nonconstant();
  const GreenFunction g = build_green(s, 25.0, 31, 31);
  const GreenFunction gs = adjoint_green(s, 25.0, 31, 31);
  CHECK_FALSE(gs.has_slices());
  double gap = 0.0;
  for (int i = 0; i < 31; ++i) {
    for (int j = 0; j < 31; ++j) {
      if (i != j) gap = std::max(gap, std::fabs(gs.values(i, j) - g.values(j, i)));
    }
  }
  CHECK(gap <= 1e-9 * g.max_abs());
  CHECK_THROWS_AS(pg_ng_bounds(gs, derive_indices(s)), ValidationError);
}

TEST_CASE("non-homogeneous basis") {
  // x = -t/2 + t^2/2 - t^3/6 carries u''(0) = 1; z = -t/2 + t^3/6 carries u''(1) = 1.
  const NonhomogBasis nb = nonhomog_basis(t4(), 0.0, 101);
  CHECK(nb.x.value[50] == doctest::Approx(-0.1458333333333));
  CHECK(nb.z.value[100] == doctest::Approx(-1.0 / 3.0));
  CHECK(nb.x.value[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(nb.z.value[0] == doctest::Approx(0.0).scale(1.0));
}
