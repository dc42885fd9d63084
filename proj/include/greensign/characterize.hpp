#pragma once

// Parameter intervals of M on which g_M has constant sign, assembled from
// extreme eigenvalues in the base and modified spaces.

#include <optional>
#include <string>
#include <vector>

#include "greensign/greenfn.hpp"
#include "greensign/spectral.hpp"

namespace greensign {

/// Thrown when the operator is not of the reduced form required for relaxed
/// boundary conditions, or the chosen subsets are not admissible.
class TildeFormError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

enum class TdMode { Check, Assert };
enum class TdStatus { CertifiedByDecompose, UserAsserted, NotCertified };

std::string td_status_name(TdStatus s);

struct IntervalEndpoint {
  double value = 0.0;
  bool closed = false;
  bool infinite = false;  // value is -infinity when set
  std::string source;     // "lambda_1", "lambda_2'", ... or "none"
  std::string space;      // label of the space of the eigenvalue
  double eigenvalue = 0.0;
};

struct SignCharacterization {
  SignClass classification = SignClass::Indeterminate;
  IntervalEndpoint lower;
  IntervalEndpoint upper;
  bool necessary_only = false;
  TdStatus td_status = TdStatus::UserAsserted;
  double td_window_end = 0.0;
  std::vector<Eigenvalue> eigenvalues;  // every eigenvalue computed, in search order
  std::vector<std::string> warnings;

  /// True when M lies in the interval, honoring the open/closed flags.
  bool contains(double M) const;
};

struct NonexistenceFlags {
  bool no_inverse_negative = false;
  bool no_inverse_positive = false;
  std::string trigger;  // "sigma_k=k-1", "epsilon_{n-k}=n-k-1", both joined by " and ", or ""
};

struct CharacterizeOptions {
  SearchConfig search;
  TdMode td = TdMode::Check;
};

SignCharacterization constant_sign_interval(const ProblemSpec& spec,
                                            const CharacterizeOptions& opts = {});

NonexistenceFlags nonexistence_check(const ProblemSpec& spec);

/// Necessary condition for the sign opposite to the one of constant_sign_interval;
/// empty when sigma_k = k-1 or epsilon_{n-k} = n-k-1.
std::optional<SignCharacterization> necessary_interval(const ProblemSpec& spec,
                                                       const CharacterizeOptions& opts = {});

/// Admissibility of relaxed-condition subsets: each lies in its set, ends at
/// sigma_k (epsilon_{n-k}), and every other member is at most mu.
void validate_subsets(const ProblemSpec& spec, const IndexSet& sigma_subset,
                      const IndexSet& epsilon_subset);

/// True when p_{n-mu}, ..., p_n are the literal constant 0.
bool is_tilde_form(const ProblemSpec& spec);

/// Interval for the space with the boundary conditions of the subsets relaxed
/// to sign conditions. Singleton subsets {sigma_k}, {epsilon_{n-k}} give the
/// constant_sign_interval result unchanged.
SignCharacterization nonhomogeneous_interval(const ProblemSpec& spec, const IndexSet& sigma_subset,
                                             const IndexSet& epsilon_subset,
                                             const CharacterizeOptions& opts = {});

/// (pi/(b-a))^4 + p (pi/(b-a))^2: first eigenvalue of u'''' - p u'' in X_{0,2}^{0,2}.
double closed_form_shifted_eigen(double p, double a, double b);

}  // namespace greensign
