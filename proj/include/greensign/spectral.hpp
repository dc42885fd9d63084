#pragma once

// Characteristic determinant and extreme eigenvalues of T_n[M_bar] in a space.
//
// lambda is an eigenvalue of T_n[M_bar] in a space when Delta(M_bar - lambda) = 0.
// The search scans m = |lambda|^(1/n) uniformly, which keeps the sampling
// density proportional to the eigenvalue spacing for every order n.

#include <memory>
#include <string>
#include <vector>

#include "greensign/odecore.hpp"
#include "greensign/problem.hpp"

namespace greensign {

enum class Direction { LeastPositive, BiggestNegative };

struct SearchConfig {
  double lambda_max = 0.0;  // <= 0 selects (12 pi / (b-a))^n
  int grid_points = 4000;
  double refine_tol = 1e-12;
  int steps = kDefaultSteps;

  /// Copy with lambda_max resolved for the interval length and order.
  SearchConfig resolved(const ProblemSpec& spec) const;
};

/// Homogeneous problem: an operator (tabulated coefficients) plus n boundary
/// functionals. shift_sign maps the caller's M to the constant added to the
/// last coefficient, which is (-1)^n for the monic adjoint.
struct BoundaryProblem {
  std::shared_ptr<const CoefficientTable> table;
  std::vector<BoundaryFunctional> functionals;
  double shift_sign = 1.0;
  std::string label;
};

BoundaryProblem boundary_problem(const ProblemSpec& spec, const SpaceDescriptor& space,
                                 int steps = kDefaultSteps);
BoundaryProblem boundary_problem(std::shared_ptr<const CoefficientTable> table,
                                 const SpaceDescriptor& space);
/// Adjoint operator in monic form with the adjoint boundary functionals.
BoundaryProblem adjoint_boundary_problem(const ProblemSpec& spec, int steps = kDefaultSteps);

/// Boundary matrix with each fundamental column scaled by 1/max(1, max|column|).
Eigen::MatrixXd boundary_matrix(const BoundaryProblem& bp, double M);

double characteristic_det(const BoundaryProblem& bp, double M);
double characteristic_det(const ProblemSpec& spec, const SpaceDescriptor& space, double M);

struct Eigenvalue {
  double lambda = 0.0;
  SpaceDescriptor space;
  std::string label;
  Direction direction = Direction::LeastPositive;
  double bracket_lo = 0.0;  // lambda bracket, lo < hi
  double bracket_hi = 0.0;
  double residual = 0.0;
  bool simple = true;
  std::vector<std::string> warnings;
};

Eigenvalue find_eigenvalue(const ProblemSpec& spec, const SpaceDescriptor& space,
                           Direction direction, const SearchConfig& cfg = {});
/// Same search on an arbitrary boundary problem, anchored at m_bar.
Eigenvalue find_eigenvalue(const BoundaryProblem& bp, double m_bar, Direction direction,
                           const SearchConfig& cfg);

struct ScanSample {
  double lambda;
  double det;
};

/// Delta(m_bar - lambda) at the first `count` scan points in the direction.
std::vector<ScanSample> scan_determinant(const BoundaryProblem& bp, double m_bar,
                                         Direction direction, const SearchConfig& cfg, int count);

struct SampledFunction {
  std::vector<double> t;
  std::vector<double> value;
};

/// Eigenfunction at lambda sampled on `points` uniform nodes; max-norm 1 and
/// positive at the midpoint (or at its largest entry when the midpoint is zero).
SampledFunction eigenfunction(const ProblemSpec& spec, const SpaceDescriptor& space, double lambda,
                              int points = 101, int steps = kDefaultSteps);

std::string direction_name(Direction d);

}  // namespace greensign
