#include "greensign/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace greensign {

namespace {

bool even(int v) { return v % 2 == 0; }

void require_na(const ProblemSpec& spec) {
  if (!check_na(spec.sigma, spec.epsilon, spec.n)) {
    throw ValidationError("property N_a fails for " + space_label({spec.sigma, spec.epsilon}) +
                          ": M_bar may be an eigenvalue and no interval is computed");
  }
}

// Runs the search and records the eigenvalue in the result.
const Eigenvalue& search(const ProblemSpec& spec, const SpaceDescriptor& space, Direction dir,
                         const SearchConfig& cfg, SignCharacterization& out) {
  Eigenvalue ev = find_eigenvalue(spec, space, dir, cfg);
  for (const auto& w : ev.warnings) out.warnings.push_back(w);
  out.eigenvalues.push_back(std::move(ev));
  return out.eigenvalues.back();
}

IntervalEndpoint endpoint_from(const ProblemSpec& spec, const Eigenvalue& ev, std::string source,
                               bool closed) {
  IntervalEndpoint e;
  e.value = spec.m_bar - ev.lambda;
  e.closed = closed;
  e.source = std::move(source);
  e.space = ev.label;
  e.eigenvalue = ev.lambda;
  return e;
}

IntervalEndpoint minus_infinity() {
  IntervalEndpoint e;
  e.value = -std::numeric_limits<double>::infinity();
  e.infinite = true;
  e.source = "none";
  return e;
}

void apply_td(const ProblemSpec& spec, const CharacterizeOptions& opts, SignCharacterization& out) {
  if (opts.td == TdMode::Assert) {
    out.td_status = TdStatus::UserAsserted;
    return;
  }
  const SearchConfig cfg = opts.search.resolved(spec);
  FundamentalSystem fs = integrate_fundamental(make_coefficient_table(spec, cfg.steps), spec.m_bar);
  MarkovDecomposition md = markov_decomposition(fs);
  out.td_window_end = md.window_end;
  if (md.full_interval) {
    out.td_status = TdStatus::CertifiedByDecompose;
  } else {
    out.td_status = TdStatus::NotCertified;
    out.warnings.push_back(
        "disconjugacy hypothesis not certified: canonical Wronskians lose positivity at t=" +
        std::to_string(md.failure->t) + "; the interval assumes the hypothesis holds");
  }
}

// The pair (lambda_2', lambda_2'') or its admissible part, combined by max (SIP)
// or min (SIN).
struct Candidate {
  const Eigenvalue* ev;
  const char* source;
};

const Candidate& pick(const std::vector<Candidate>& c, bool take_max) {
  const Candidate* best = &c.front();
  for (const auto& x : c) {
    if (take_max ? x.ev->lambda > best->ev->lambda : x.ev->lambda < best->ev->lambda) best = &x;
  }
  return *best;
}

}  // namespace

std::string td_status_name(TdStatus s) {
  switch (s) {
    case TdStatus::CertifiedByDecompose: return "certified-by-decompose";
    case TdStatus::UserAsserted: return "user-asserted";
    case TdStatus::NotCertified: return "not-certified";
  }
  return "not-certified";
}

bool SignCharacterization::contains(double M) const {
  const bool above = lower.infinite || (lower.closed ? M >= lower.value : M > lower.value);
  const bool below = upper.closed ? M <= upper.value : M < upper.value;
  return above && below;
}

SignCharacterization constant_sign_interval(const ProblemSpec& spec, const CharacterizeOptions& opts) {
  validate_problem(spec);
  require_na(spec);
  const SearchConfig cfg = opts.search.resolved(spec);
  const int n = spec.n;
  const int k = spec.k();
  SignCharacterization out;
  apply_td(spec, opts, out);
  const SpaceDescriptor base = build_space(spec, SpaceVariant::Base);
  // Eigenvalue storage must not move while candidates point into it.
  out.eigenvalues.reserve(3);

  if (even(n - k)) {
    out.classification = SignClass::StronglyInversePositive;
    const Eigenvalue& l1 = search(spec, base, Direction::LeastPositive, cfg, out);
    std::vector<Candidate> cands;
    if (k >= 2) {
      cands.push_back({&search(spec, build_space(spec, SpaceVariant::DropSigmaK_AddBeta),
                               Direction::BiggestNegative, cfg, out),
                       "lambda_2'"});
    }
    cands.push_back({&search(spec, build_space(spec, SpaceVariant::AddAlpha_DropEpsLast),
                             Direction::BiggestNegative, cfg, out),
                     "lambda_2''"});
    const Candidate& l2 = pick(cands, true);
    out.lower = endpoint_from(spec, l1, "lambda_1", false);
    out.upper = endpoint_from(spec, *l2.ev, l2.source, true);
    return out;
  }

  out.classification = SignClass::StronglyInverseNegative;
  const Eigenvalue& l1 = search(spec, base, Direction::BiggestNegative, cfg, out);
  out.upper = endpoint_from(spec, l1, "lambda_1", false);
  if (n == 2) {
    out.lower = minus_infinity();
    return out;
  }
  std::vector<Candidate> cands;
  if (k >= 2) {
    cands.push_back({&search(spec, build_space(spec, SpaceVariant::DropSigmaK_AddBeta),
                             Direction::LeastPositive, cfg, out),
                     "lambda_2'"});
  }
  if (k <= n - 2) {
    cands.push_back({&search(spec, build_space(spec, SpaceVariant::AddAlpha_DropEpsLast),
                             Direction::LeastPositive, cfg, out),
                     "lambda_2''"});
  }
  const Candidate& l2 = pick(cands, false);
  out.lower = endpoint_from(spec, *l2.ev, l2.source, true);
  return out;
}

NonexistenceFlags nonexistence_check(const ProblemSpec& spec) {
  const int n = spec.n;
  const int k = spec.k();
  NonexistenceFlags f;
  std::vector<std::string> why;
  if (spec.sigma.back() == k - 1) why.push_back("sigma_k=k-1");
  if (spec.epsilon.back() == n - k - 1) why.push_back("epsilon_{n-k}=n-k-1");
  if (why.empty()) return f;
  f.trigger = why.front();
  if (why.size() == 2) f.trigger += " and " + why.back();
  if (even(n - k)) {
    f.no_inverse_negative = true;
  } else {
    f.no_inverse_positive = true;
  }
  return f;
}

std::optional<SignCharacterization> necessary_interval(const ProblemSpec& spec,
                                                       const CharacterizeOptions& opts) {
  validate_problem(spec);
  require_na(spec);
  const int n = spec.n;
  const int k = spec.k();
  if (spec.sigma.back() == k - 1 || spec.epsilon.back() == n - k - 1) return std::nullopt;
  const SearchConfig cfg = opts.search.resolved(spec);
  SignCharacterization out;
  out.necessary_only = true;
  apply_td(spec, opts, out);
  out.eigenvalues.reserve(3);
  const SpaceDescriptor base = build_space(spec, SpaceVariant::Base);
  const SpaceDescriptor s3a = build_space(spec, SpaceVariant::DropSigmaK_AddAlpha);
  const SpaceDescriptor s3b = build_space(spec, SpaceVariant::DropEpsLast_AddBeta);

  if (even(n - k)) {
    out.classification = SignClass::StronglyInverseNegative;
    const Eigenvalue& l1 = search(spec, base, Direction::LeastPositive, cfg, out);
    std::vector<Candidate> cands{
        {&search(spec, s3a, Direction::LeastPositive, cfg, out), "lambda_3'"},
        {&search(spec, s3b, Direction::LeastPositive, cfg, out), "lambda_3''"}};
    const Candidate& l3 = pick(cands, false);
    out.lower = endpoint_from(spec, *l3.ev, l3.source, true);
    out.upper = endpoint_from(spec, l1, "lambda_1", false);
  } else {
    out.classification = SignClass::StronglyInversePositive;
    const Eigenvalue& l1 = search(spec, base, Direction::BiggestNegative, cfg, out);
    std::vector<Candidate> cands{
        {&search(spec, s3a, Direction::BiggestNegative, cfg, out), "lambda_3'"},
        {&search(spec, s3b, Direction::BiggestNegative, cfg, out), "lambda_3''"}};
    const Candidate& l3 = pick(cands, true);
    out.lower = endpoint_from(spec, l1, "lambda_1", false);
    out.upper = endpoint_from(spec, *l3.ev, l3.source, true);
  }
  out.warnings.push_back("necessary condition only: membership does not imply constant sign");
  return out;
}

bool is_tilde_form(const ProblemSpec& spec) {
  const int mu = derive_indices(spec).mu;
  for (int j = std::max(1, spec.n - mu); j <= spec.n; ++j) {
    if (!spec.coeff(j).is_zero()) return false;
  }
  return true;
}

void validate_subsets(const ProblemSpec& spec, const IndexSet& sigma_subset,
                      const IndexSet& epsilon_subset) {
  const int mu = derive_indices(spec).mu;
  auto check = [mu](const IndexSet& subset, const IndexSet& set, const char* name) {
    if (subset.empty()) throw TildeFormError(std::string(name) + " subset is empty");
    for (int v : subset) {
      if (!std::binary_search(set.begin(), set.end(), v)) {
        throw TildeFormError(std::string(name) + " subset entry " + std::to_string(v) +
                             " is not a boundary index");
      }
    }
    if (subset.back() != set.back()) {
      throw TildeFormError(std::string(name) + " subset must contain the largest index " +
                           std::to_string(set.back()));
    }
    // Members up to mu keep T~_h u = u^(h), which is all the relaxation needs.
    for (std::size_t i = 0; i + 1 < subset.size(); ++i) {
      if (subset[i] > mu) {
        throw TildeFormError(std::string(name) + " subset entry " + std::to_string(subset[i]) +
                             " must not exceed mu=" + std::to_string(mu));
      }
    }
  };
  check(sigma_subset, spec.sigma, "sigma");
  check(epsilon_subset, spec.epsilon, "epsilon");
}

SignCharacterization nonhomogeneous_interval(const ProblemSpec& spec, const IndexSet& sigma_subset_in,
                                             const IndexSet& epsilon_subset_in,
                                             const CharacterizeOptions& opts) {
  validate_problem(spec);
  const IndexSet sigma_subset = make_index_set(sigma_subset_in, spec.n, "sigma subset");
  const IndexSet epsilon_subset = make_index_set(epsilon_subset_in, spec.n, "epsilon subset");
  validate_subsets(spec, sigma_subset, epsilon_subset);
  if (sigma_subset.size() == 1 && epsilon_subset.size() == 1) {
    return constant_sign_interval(spec, opts);
  }
  if (!is_tilde_form(spec)) {
    throw TildeFormError("relaxing more than one condition per endpoint needs p_{n-mu}..p_n == 0");
  }
  if (spec.m_bar != 0.0) {
    throw TildeFormError("relaxing more than one condition per endpoint needs m_bar = 0");
  }
  require_na(spec);
  const int n = spec.n;
  const int k = spec.k();
  const DerivedIndices idx = derive_indices(spec);
  const SearchConfig cfg = opts.search.resolved(spec);
  SignCharacterization out;
  apply_td(spec, opts, out);
  out.eigenvalues.reserve(3);

  // Only the smallest member of each subset determines the eigenvalue.
  auto sigma_side = [&] {
    IndexSet s = spec.sigma;
    s.erase(std::find(s.begin(), s.end(), sigma_subset.front()));
    IndexSet e = spec.epsilon;
    e.insert(std::lower_bound(e.begin(), e.end(), idx.beta), idx.beta);
    return build_custom_space(spec, s, e);
  };
  auto epsilon_side = [&] {
    IndexSet s = spec.sigma;
    s.insert(std::lower_bound(s.begin(), s.end(), idx.alpha), idx.alpha);
    IndexSet e = spec.epsilon;
    e.erase(std::find(e.begin(), e.end(), epsilon_subset.front()));
    return build_custom_space(spec, s, e);
  };
  const SpaceDescriptor base = build_space(spec, SpaceVariant::Base);

  if (even(n - k)) {
    out.classification = SignClass::StronglyInversePositive;
    const Eigenvalue& l1 = search(spec, base, Direction::LeastPositive, cfg, out);
    std::vector<Candidate> cands;
    if (k > 1) {
      cands.push_back({&search(spec, sigma_side(), Direction::BiggestNegative, cfg, out),
                       "lambda_2_sigma"});
    }
    cands.push_back({&search(spec, epsilon_side(), Direction::BiggestNegative, cfg, out),
                     "lambda_2_epsilon"});
    const Candidate& l2 = pick(cands, true);
    out.lower = endpoint_from(spec, l1, "lambda_1", false);
    out.upper = endpoint_from(spec, *l2.ev, l2.source, true);
    return out;
  }

  out.classification = SignClass::StronglyInverseNegative;
  const Eigenvalue& l1 = search(spec, base, Direction::BiggestNegative, cfg, out);
  out.upper = endpoint_from(spec, l1, "lambda_1", false);
  if (n == 2) {
    out.lower = minus_infinity();
    return out;
  }
  std::vector<Candidate> cands;
  if (k > 1) {
    cands.push_back(
        {&search(spec, sigma_side(), Direction::LeastPositive, cfg, out), "lambda_2_sigma"});
  }
  if (k < n - 1) {
    cands.push_back(
        {&search(spec, epsilon_side(), Direction::LeastPositive, cfg, out), "lambda_2_epsilon"});
  }
  const Candidate& l2 = pick(cands, false);
  out.lower = endpoint_from(spec, *l2.ev, l2.source, true);
  return out;
}

double closed_form_shifted_eigen(double p, double a, double b) {
  if (!(b > a)) throw ValidationError("interval must satisfy a < b");
  if (!(p >= 0.0)) throw ValidationError("closed form needs p >= 0");
  const double w = std::numbers::pi / (b - a);
  return w * w * w * w + p * w * w;
}

}  // namespace greensign
