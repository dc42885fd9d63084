#include "greensign/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace greensign {

namespace {

bool contains(const IndexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); }

IndexSet with(IndexSet s, int v) {
  if (contains(s, v)) {
    throw CollisionError("index " + std::to_string(v) + " already belongs to the set");
  }
  s.insert(std::lower_bound(s.begin(), s.end(), v), v);
  return s;
}

IndexSet without(IndexSet s, int v) {
  s.erase(std::remove(s.begin(), s.end(), v), s.end());
  return s;
}

double binomial(int m, int r) {
  double c = 1.0;
  for (int i = 1; i <= r; ++i) c = c * (m - r + i) / i;
  return c;
}

std::string join(const IndexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

}  // namespace

IndexSet make_index_set(std::vector<int> values, int n, const char* name) {
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] > n - 1) {
      throw ValidationError(std::string(name) + " entry " + std::to_string(values[i]) +
                            " outside 0.." + std::to_string(n - 1));
    }
    if (i > 0 && values[i] == values[i - 1]) {
      throw ValidationError(std::string(name) + " contains duplicate index " +
                            std::to_string(values[i]));
    }
  }
  return values;
}

void validate_problem(const ProblemSpec& spec) {
  const int n = spec.n;
  if (n < 2) throw ValidationError("order must be at least 2");
  if (!std::isfinite(spec.a) || !std::isfinite(spec.b) || !(spec.a < spec.b)) {
    throw ValidationError("interval must satisfy a < b with finite endpoints");
  }
  if (!std::isfinite(spec.m_bar)) throw ValidationError("m_bar must be finite");
  if (static_cast<int>(spec.p.size()) != n) {
    throw ValidationError("expected " + std::to_string(n) + " coefficients, got " +
                          std::to_string(spec.p.size()));
  }
  if (make_index_set(spec.sigma, n, "sigma") != spec.sigma ||
      make_index_set(spec.epsilon, n, "epsilon") != spec.epsilon) {
    throw ValidationError("index sets must be strictly increasing");
  }
  const int k = spec.k();
  if (k < 1 || k > n - 1) throw ValidationError("sigma must have between 1 and n-1 entries");
  if (k + static_cast<int>(spec.epsilon.size()) != n) {
    throw ValidationError("sigma and epsilon sizes must sum to n");
  }
  // p_j must be finite on [a,b] together with its first n-j derivatives.
  constexpr int kSpot = 64;
  for (int j = 1; j <= n; ++j) {
    CoefficientExpr d = spec.coeff(j);
    for (int order = 0; order <= n - j; ++order) {
      for (int i = 0; i < kSpot; ++i) {
        double t = spec.a + (spec.b - spec.a) * i / (kSpot - 1);
        try {
          eval(d, t);
        } catch (const DomainError& e) {
          std::ostringstream msg;
          msg << "coefficient p" << j << " derivative " << order << " fails at t=" << t << ": "
              << e.what();
          throw ValidationError(msg.str());
        }
      }
      if (order < n - j) d = differentiate(d);
    }
  }
}

ProblemSpec make_problem(int n, double a, double b, std::vector<CoefficientExpr> p, double m_bar,
                         std::vector<int> sigma, std::vector<int> epsilon) {
  ProblemSpec spec;
  spec.n = n;
  spec.a = a;
  spec.b = b;
  spec.p = std::move(p);
  spec.m_bar = m_bar;
  spec.sigma = make_index_set(std::move(sigma), n, "sigma");
  spec.epsilon = make_index_set(std::move(epsilon), n, "epsilon");
  validate_problem(spec);
  return spec;
}

ProblemSpec zero_coefficient_problem(int n, double a, double b, std::vector<int> sigma,
                                     std::vector<int> epsilon, double m_bar) {
  return make_problem(n, a, b, std::vector<CoefficientExpr>(n), m_bar, std::move(sigma),
                      std::move(epsilon));
}

bool check_na(const IndexSet& sigma, const IndexSet& epsilon, int n) {
  for (int h = 1; h <= n - 1; ++h) {
    auto below = [h](const IndexSet& s) {
      return static_cast<int>(std::count_if(s.begin(), s.end(), [h](int v) { return v < h; }));
    };
    if (below(sigma) + below(epsilon) < h) return false;
  }
  return true;
}

int first_gap(const IndexSet& set) {
  int r = 0;
  while (contains(set, r)) ++r;
  return r;
}

int last_gap(const IndexSet& set) {
  if (set.empty()) return -1;
  int r = set.back();
  while (r >= 0 && contains(set, r)) --r;
  return r;
}

IndexSet complement_reflection(const IndexSet& set, int n) {
  IndexSet out;
  for (int c = n - 1; c >= 0; --c) {
    if (!contains(set, c)) out.push_back(n - 1 - c);
  }
  return out;
}

DerivedIndices derive_indices(const ProblemSpec& spec) {
  const int n = spec.n;
  DerivedIndices d;
  d.alpha = first_gap(spec.sigma);
  d.beta = first_gap(spec.epsilon);
  d.eta = n - 1 - spec.sigma.back();
  d.gamma = n - 1 - spec.epsilon.back();
  d.tau = complement_reflection(spec.sigma, n);
  d.delta = complement_reflection(spec.epsilon, n);
  d.alpha2 = last_gap(spec.sigma);
  d.beta2 = last_gap(spec.epsilon);
  d.mu = std::max(d.alpha2, d.beta2);
  return d;
}

int BoundaryFunctional::leading() const {
  for (int i = static_cast<int>(coefficients.size()) - 1; i >= 0; --i) {
    if (coefficients[i] != 0.0) return i;
  }
  return -1;
}

bool BoundaryFunctional::is_pure() const {
  int lead = leading();
  if (lead < 0) return false;
  for (int i = 0; i < lead; ++i) {
    if (coefficients[i] != 0.0) return false;
  }
  return coefficients[lead] == 1.0;
}

namespace {

// v^(m)(x) + sum_{i=1..m} (-1)^i (p_i v)^(m-i)(x), expanded with Leibniz.
std::vector<double> raw_adjoint_functional(const ProblemSpec& spec, int m, double x) {
  std::vector<double> c(spec.n, 0.0);
  c[m] = 1.0;
  for (int i = 1; i <= m; ++i) {
    const int order = m - i;
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    for (int r = 0; r <= order; ++r) {
      double dp = eval(differentiate(spec.coeff(i), order - r), x);
      c[r] += sign * binomial(order, r) * dp;
    }
  }
  return c;
}

void reduce_endpoint(std::vector<BoundaryFunctional>& fs) {
  // fs sorted by leading index; earlier functionals are already reduced.
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i; j-- > 0;) {
      const int lead = fs[j].leading();
      const double factor = fs[i].coefficients[lead];
      if (factor == 0.0) continue;
      for (std::size_t r = 0; r < fs[i].coefficients.size(); ++r) {
        fs[i].coefficients[r] -= factor * fs[j].coefficients[r];
      }
      fs[i].coefficients[lead] = 0.0;
    }
  }
}

}  // namespace

std::vector<BoundaryFunctional> adjoint_boundary_conditions(const ProblemSpec& spec) {
  const DerivedIndices d = derive_indices(spec);
  std::vector<BoundaryFunctional> at_a, at_b;
  for (int tau : d.tau) {
    at_a.push_back({BoundaryFunctional::Endpoint::A, raw_adjoint_functional(spec, tau, spec.a)});
  }
  for (int delta : d.delta) {
    at_b.push_back(
        {BoundaryFunctional::Endpoint::B, raw_adjoint_functional(spec, delta, spec.b)});
  }
  reduce_endpoint(at_a);
  reduce_endpoint(at_b);
  at_a.insert(at_a.end(), at_b.begin(), at_b.end());
  return at_a;
}

std::vector<BoundaryFunctional> unit_functionals(const IndexSet& sigma, const IndexSet& epsilon,
                                                 int n) {
  std::vector<BoundaryFunctional> out;
  for (int s : sigma) {
    BoundaryFunctional f{BoundaryFunctional::Endpoint::A, std::vector<double>(n, 0.0)};
    f.coefficients[s] = 1.0;
    out.push_back(std::move(f));
  }
  for (int e : epsilon) {
    BoundaryFunctional f{BoundaryFunctional::Endpoint::B, std::vector<double>(n, 0.0)};
    f.coefficients[e] = 1.0;
    out.push_back(std::move(f));
  }
  return out;
}

SpaceDescriptor build_space(const ProblemSpec& spec, SpaceVariant variant) {
  const int n = spec.n;
  const int k = spec.k();
  const int alpha = first_gap(spec.sigma);
  const int beta = first_gap(spec.epsilon);
  const int sigma_k = spec.sigma.back();
  const int eps_last = spec.epsilon.back();
  SpaceDescriptor s{spec.sigma, spec.epsilon};
  switch (variant) {
    case SpaceVariant::Base:
      return s;
    case SpaceVariant::DropSigmaK_AddBeta:
      s.sigma = without(s.sigma, sigma_k);
      s.epsilon = with(s.epsilon, beta);
      break;
    case SpaceVariant::AddAlpha_DropEpsLast:
      s.sigma = with(s.sigma, alpha);
      s.epsilon = without(s.epsilon, eps_last);
      break;
    case SpaceVariant::DropSigmaK_AddAlpha:
      if (sigma_k == k - 1) {
        throw CollisionError("sigma_k = k-1: alpha would replace sigma_k in a full prefix");
      }
      s.sigma = with(without(s.sigma, sigma_k), alpha);
      break;
    case SpaceVariant::DropEpsLast_AddBeta:
      if (eps_last == n - k - 1) {
        throw CollisionError("epsilon_{n-k} = n-k-1: beta would replace it in a full prefix");
      }
      s.epsilon = with(without(s.epsilon, eps_last), beta);
      break;
  }
  if (s.sigma.empty() || s.epsilon.empty()) {
    throw ValidationError("modified space " + space_label(s) + " has no condition at one endpoint");
  }
  return s;
}

SpaceDescriptor build_custom_space(const ProblemSpec& spec, std::vector<int> sigma,
                                   std::vector<int> epsilon) {
  SpaceDescriptor s{make_index_set(std::move(sigma), spec.n, "sigma"),
                    make_index_set(std::move(epsilon), spec.n, "epsilon")};
  if (static_cast<int>(s.sigma.size() + s.epsilon.size()) != spec.n) {
    throw ValidationError("space sizes must sum to n");
  }
  if (s.sigma.empty() || s.epsilon.empty()) {
    throw ValidationError("space needs at least one condition at each endpoint");
  }
  return s;
}

std::string space_label(const SpaceDescriptor& space) {
  return "X_{" + join(space.sigma) + "}^{" + join(space.epsilon) + "}";
}

std::vector<CoefficientExpr> greens_matrix_coeffs(const ProblemSpec& spec, int j) {
  if (j < 1 || j > spec.n - 1) throw ValidationError("greens_matrix_coeffs needs 1 <= j <= n-1");
  std::vector<CoefficientExpr> prev{CoefficientExpr()};  // alpha_0^0 = 0
  for (int level = 0; level < j; ++level) {
    std::vector<CoefficientExpr> next(level + 1);
    next[0] = spec.coeff(level + 1) - differentiate(prev[0]);
    for (int i = 1; i <= level; ++i) {
      // alpha_i^level vanishes for i >= level.
      CoefficientExpr upper = i < level ? prev[i] : CoefficientExpr();
      next[i] = -(prev[i - 1] + differentiate(upper));
    }
    prev = std::move(next);
  }
  return prev;
}

std::vector<CoefficientExpr> adjoint_monic_coefficients(const ProblemSpec& spec) {
  const int n = spec.n;
  const double outer = (n % 2 == 0) ? 1.0 : -1.0;
  std::vector<CoefficientExpr> q(n);
  for (int i = 1; i <= n; ++i) {
    const int r = n - i;  // q_i multiplies v^(r)
    CoefficientExpr sum;
    for (int j = r; j <= n - 1; ++j) {
      const double sign = outer * ((j % 2 == 0) ? 1.0 : -1.0) * binomial(j, r);
      sum = sum + CoefficientExpr::constant(sign) * differentiate(spec.coeff(n - j), j - r);
    }
    q[i - 1] = sum;
  }
  return q;
}

}  // namespace greensign
