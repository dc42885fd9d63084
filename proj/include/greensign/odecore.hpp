#pragma once

// Companion-system integration of T_n[M] u = 0 with classical fixed-step RK4.
//
// State layout: an n x c block whose column j holds (u_j, u_j', ..., u_j^(n-1)).
// The coefficient values at the RK stage times are tabulated once per problem
// and shared by every integration at any M.

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "greensign/problem.hpp"

namespace greensign {

inline constexpr int kDefaultSteps = 4096;
inline constexpr double kOverflowGuard = 1e300;

struct CoefficientTable {
  int n = 0;
  double a = 0.0;
  double b = 1.0;
  int steps = 0;
  double h = 0.0;
  std::vector<CoefficientExpr> p;  // p_1..p_n
  std::vector<double> node;        // p_j(t_i) at [i*n + j-1], i = 0..steps
  std::vector<double> mid;         // p_j(t_i + h/2) at [i*n + j-1], i = 0..steps-1

  double t(int i) const { return i == steps ? b : a + h * i; }
};

std::shared_ptr<const CoefficientTable> make_coefficient_table(int n, double a, double b,
                                                               const std::vector<CoefficientExpr>& p,
                                                               int steps = kDefaultSteps);
std::shared_ptr<const CoefficientTable> make_coefficient_table(const ProblemSpec& spec,
                                                               int steps = kDefaultSteps);

/// Canonical fundamental system: column i has u_i^(j)(a) = delta_ij.
class FundamentalSystem {
 public:
  FundamentalSystem(std::shared_ptr<const CoefficientTable> table, double M,
                    std::vector<double> states);

  int n() const { return table_->n; }
  int steps() const { return table_->steps; }
  double M() const { return M_; }
  double a() const { return table_->a; }
  double b() const { return table_->b; }
  double node_t(int i) const { return table_->t(i); }
  const CoefficientTable& table() const { return *table_; }

  /// n x n state at node i.
  Eigen::MatrixXd snapshot(int i) const;
  /// n x n state at any t in [a,b]; between nodes one partial RK4 step is
  /// taken from the left node.
  Eigen::MatrixXd state_at(double t) const;

 private:
  std::shared_ptr<const CoefficientTable> table_;
  double M_;
  std::vector<double> states_;  // (steps+1) blocks of n*n, column-major
};

FundamentalSystem integrate_fundamental(std::shared_ptr<const CoefficientTable> table, double M);
FundamentalSystem integrate_fundamental(const ProblemSpec& spec, double M,
                                        int steps = kDefaultSteps);

/// Integrates the given initial columns from a to b and returns the final
/// n x c state; no snapshots kept.
Eigen::MatrixXd integrate_to_end(const CoefficientTable& table, double M,
                                 const Eigen::MatrixXd& initial);

/// d-th derivative (0 <= d <= n) of solution `column` (0-based) at t.
double eval_solution(const FundamentalSystem& fs, int column, double t, int d);

/// Leading principal minors W_1..W_n of the state at t.
std::vector<double> wronskians(const FundamentalSystem& fs, double t);

struct DisconjugacyFailure {
  int node = 0;
  double t = 0.0;
  int k = 0;  // 1-based index of the first non-positive Wronskian
  double value = 0.0;
};

struct MarkovDecomposition {
  std::vector<double> t;               // node times inside the window
  std::vector<std::vector<double>> v;  // v[k-1][i] = v_k(t_i)
  double window_end = 0.0;             // window is [a, window_end]
  bool full_interval = false;
  std::optional<DisconjugacyFailure> failure;
};

/// v_1 = W_1, v_2 = W_2/W_1^2, v_k = W_k W_{k-2} / W_{k-1}^2 on the maximal
/// prefix of nodes where every W_k > 0.
MarkovDecomposition markov_decomposition(const FundamentalSystem& fs);

/// Same, but throws DisconjugacyError when the window is not all of [a,b].
MarkovDecomposition require_markov_decomposition(const FundamentalSystem& fs);

/// max_i |W_n(t_i) exp(int_a^t_i p_1) - 1|, relative to the value 1 at a.
double liouville_deviation(const FundamentalSystem& fs);

}  // namespace greensign
