#pragma once

// Scalar Green's function g_M(t,s) of T_n[M] sampled on a (t,s) grid.
//
// For each s the kernel is Phi(t) c^- for t < s and Phi(t) c^+ for t >= s,
// with c^+ - c^- = Phi(s)^{-1} e_{n-1} (continuity up to order n-2 and a unit
// jump of the (n-1)-th derivative) and the boundary functionals applied to
// the branch that reaches each endpoint.

#include <string>
#include <vector>

#include "greensign/problem.hpp"
#include "greensign/spectral.hpp"

namespace greensign {

inline constexpr int kDefaultGrid = 201;

struct GreenFunction {
  double M = 0.0;
  int n = 0;
  double a = 0.0;
  double b = 1.0;
  std::vector<double> t_grid;
  std::vector<double> s_grid;
  Eigen::MatrixXd values;  // values(i, j) = g(t_i, s_j); diagonal is the t -> s+ limit

  // Boundary slices; empty for kernels built from general functionals.
  int alpha = 0;
  int beta = 0;
  std::vector<double> d_alpha_at_a;   // d^alpha/dt^alpha g(a, s) over s_grid
  std::vector<double> d_beta_at_b;    // d^beta/dt^beta g(b, s) over s_grid
  std::vector<double> d_eta_at_sa;    // w_M(t) over t_grid
  std::vector<double> d_gamma_at_sb;  // y_M(t) over t_grid

  // Lowest possibly non-vanishing endpoint derivatives of w_M and y_M.
  int alpha_w = 0;  // first gap of sigma \ {sigma_k}
  int beta_y = 0;   // first gap of epsilon \ {epsilon_{n-k}}
  double w_alpha_at_a = 0.0;  // w^(alpha_w)(a)
  double w_beta_at_b = 0.0;   // w^(beta)(b)
  double y_alpha_at_a = 0.0;  // y^(alpha)(a)
  double y_beta_at_b = 0.0;   // y^(beta_y)(b)
  int gamma = 0;

  // Diagnostics.
  double max_bc_residual = 0.0;    // relative to each column's scale
  double max_jump_residual = 0.0;  // |jump - 1| and continuity defects at t = s
  double max_solve_residual = 0.0;
  std::vector<std::string> warnings;

  bool has_slices() const { return !d_alpha_at_a.empty(); }
  double max_abs() const { return values.cwiseAbs().maxCoeff(); }
};

/// Green's function in the base space of `spec`; throws SingularError at an eigenvalue.
GreenFunction build_green(const ProblemSpec& spec, double M, int n_t = kDefaultGrid,
                          int n_s = kDefaultGrid, int steps = kDefaultSteps);

/// Green's function of T*_n[M] with the adjoint boundary conditions.
GreenFunction adjoint_green(const ProblemSpec& spec, double M, int n_t = kDefaultGrid,
                            int n_s = kDefaultGrid, int steps = kDefaultSteps);

enum class SignClass { StronglyInversePositive, StronglyInverseNegative, Indeterminate };

struct Violation {
  double t = 0.0;
  double s = 0.0;
  double value = 0.0;
};

struct SignReport {
  SignClass classification = SignClass::Indeterminate;
  bool interior_sign_ok = false;
  bool d_alpha_ok = false;
  bool d_beta_ok = false;
  Violation worst_violation;  // most negative oriented interior value, SIP orientation
};

/// Zero tolerance for the sampled surfaces, relative to their maximum.
inline constexpr double kSignTolerance = 1e-10;
/// Zero tolerance for the corner derivatives of w_M and y_M, relative to
/// the maximum of the corresponding slice.
inline constexpr double kCornerTolerance = 1e-8;

/// Interior grid sign (plus the s = a / s = b edge limits w_M, y_M), the
/// alpha slice at a and the parity-adjusted beta slice at b.
SignReport classify_sign(const GreenFunction& gf, const DerivedIndices& indices);

std::string sign_class_name(SignClass c);
std::string sign_class_short(SignClass c);

struct PgBounds {
  std::vector<double> k1;
  std::vector<double> k2;
};

/// phi(t) k1(s) <= g(t,s) <= phi(t) k2(s) with phi(t) = (t-a)^alpha (b-t)^beta.
PgBounds pg_ng_bounds(const GreenFunction& gf, const DerivedIndices& indices);

struct NonhomogBasis {
  SampledFunction x;  // u^(sigma_k)(a) = 1, other base conditions zero
  SampledFunction z;  // u^(epsilon_{n-k})(b) = 1, other base conditions zero
};

NonhomogBasis nonhomog_basis(const ProblemSpec& spec, double M, int points = kDefaultGrid,
                             int steps = kDefaultSteps);

}  // namespace greensign
