#pragma once

// Problem description for
//   T_n[M] u = u^(n) + p_1 u^(n-1) + ... + (p_n + M) u,   t in [a, b],
//   u^(sigma_i)(a) = 0 (i = 1..k),  u^(epsilon_j)(b) = 0 (j = 1..n-k),
// together with the index bookkeeping and the modified boundary-condition
// spaces used by the sign characterization.

#include <string>
#include <vector>

#include "greensign/coeffexpr.hpp"
#include "greensign/error.hpp"

namespace greensign {

/// Strictly increasing derivative orders in {0..n-1}.
using IndexSet = std::vector<int>;

/// Raised when a modified space would insert an index that is already there,
/// or when the modification is excluded for the given sets.
class CollisionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Sorts `values` and checks range and uniqueness against order n.
IndexSet make_index_set(std::vector<int> values, int n, const char* name);

struct ProblemSpec {
  int n = 2;
  double a = 0.0;
  double b = 1.0;
  std::vector<CoefficientExpr> p;  // p[j-1] multiplies u^(n-j)
  double m_bar = 0.0;
  IndexSet sigma;
  IndexSet epsilon;

  int k() const { return static_cast<int>(sigma.size()); }
  const CoefficientExpr& coeff(int j) const { return p[j - 1]; }
};

/// Builds and validates a spec; throws ValidationError on any violation.
ProblemSpec make_problem(int n, double a, double b, std::vector<CoefficientExpr> p, double m_bar,
                         std::vector<int> sigma, std::vector<int> epsilon);

/// Re-runs every check of make_problem on an existing spec.
void validate_problem(const ProblemSpec& spec);

/// Spec with p_j == 0 for all j.
ProblemSpec zero_coefficient_problem(int n, double a, double b, std::vector<int> sigma,
                                     std::vector<int> epsilon, double m_bar = 0.0);

struct DerivedIndices {
  int alpha = 0;
  int beta = 0;
  int eta = 0;
  int gamma = 0;
  IndexSet tau;
  IndexSet delta;
  int alpha2 = -1;
  int beta2 = -1;
  int mu = -1;
};

/// True iff #{sigma < h} + #{epsilon < h} >= h for every h in 1..n-1.
bool check_na(const IndexSet& sigma, const IndexSet& epsilon, int n);

/// Smallest index not in `set` whose full prefix {0..r-1} lies in `set`.
int first_gap(const IndexSet& set);

/// Largest index r not in `set` with {r+1..max(set)} inside `set`; -1 when
/// `set` is the full prefix {0..|set|-1}.
int last_gap(const IndexSet& set);

/// {n-1-c : c not in set}, ascending.
IndexSet complement_reflection(const IndexSet& set, int n);

DerivedIndices derive_indices(const ProblemSpec& spec);

struct BoundaryFunctional {
  enum class Endpoint { A, B };
  Endpoint endpoint = Endpoint::A;
  std::vector<double> coefficients;  // c_0 .. c_{n-1}

  /// Highest index with a nonzero coefficient.
  int leading() const;
  /// True when the functional is v^(leading) alone.
  bool is_pure() const;
};

/// Adjoint conditions: one functional at a per tau_i and one at b per delta_i.
/// Each is reduced so that it carries no component along the leading index
/// of another functional at the same endpoint; leading coefficient is 1.
std::vector<BoundaryFunctional> adjoint_boundary_conditions(const ProblemSpec& spec);

/// Unit functionals u^(sigma_i)(a) and u^(epsilon_j)(b) for index sets.
std::vector<BoundaryFunctional> unit_functionals(const IndexSet& sigma, const IndexSet& epsilon,
                                                 int n);

struct SpaceDescriptor {
  IndexSet sigma;
  IndexSet epsilon;

  bool operator==(const SpaceDescriptor&) const = default;
};

enum class SpaceVariant {
  Base,
  DropSigmaK_AddBeta,    // sigma \ {sigma_k},         epsilon + {beta}
  AddAlpha_DropEpsLast,  // sigma + {alpha},           epsilon \ {epsilon_{n-k}}
  DropSigmaK_AddAlpha,   // sigma \ {sigma_k} + {alpha}, epsilon
  DropEpsLast_AddBeta,   // sigma,                     epsilon \ {epsilon_{n-k}} + {beta}
};

SpaceDescriptor build_space(const ProblemSpec& spec, SpaceVariant variant);

/// Validated arbitrary space; sizes must sum to n and both sets be non-empty.
SpaceDescriptor build_custom_space(const ProblemSpec& spec, std::vector<int> sigma,
                                   std::vector<int> epsilon);

/// "X_{0,2}^{1,2}" style label.
std::string space_label(const SpaceDescriptor& space);

/// Coefficients alpha_i^j(s), i = 0..j-1, of the Green's matrix rows.
std::vector<CoefficientExpr> greens_matrix_coeffs(const ProblemSpec& spec, int j);

/// Monic form of the formal adjoint: (-1)^n T*_n[M] = v^(n) + q_1 v^(n-1) + ... + (q_n + (-1)^n M) v.
/// Returns q_1..q_n as expressions.
std::vector<CoefficientExpr> adjoint_monic_coefficients(const ProblemSpec& spec);

}  // namespace greensign
