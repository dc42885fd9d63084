#include "greensign/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace greensign {

namespace {

double signed_lambda(Direction d, double m, int n) {
  const double mag = std::pow(m, n);
  return d == Direction::LeastPositive ? mag : -mag;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string direction_name(Direction d) {
  return d == Direction::LeastPositive ? "least-positive" : "biggest-negative";
}

SearchConfig SearchConfig::resolved(const ProblemSpec& spec) const {
  SearchConfig c = *this;
  if (!(c.lambda_max > 0.0)) c.lambda_max = std::pow(12.0 * std::numbers::pi / (spec.b - spec.a), spec.n);
  if (c.grid_points < 2) throw ValidationError("grid_points must be at least 2");
  if (!(c.refine_tol > 0.0)) throw ValidationError("refine_tol must be positive");
  return c;
}

BoundaryProblem boundary_problem(std::shared_ptr<const CoefficientTable> table,
                                 const SpaceDescriptor& space) {
  BoundaryProblem bp;
  bp.functionals = unit_functionals(space.sigma, space.epsilon, table->n);
  bp.table = std::move(table);
  bp.label = space_label(space);
  return bp;
}

BoundaryProblem boundary_problem(const ProblemSpec& spec, const SpaceDescriptor& space, int steps) {
  return boundary_problem(make_coefficient_table(spec, steps), space);
}

BoundaryProblem adjoint_boundary_problem(const ProblemSpec& spec, int steps) {
  BoundaryProblem bp;
  bp.table = make_coefficient_table(spec.n, spec.a, spec.b, adjoint_monic_coefficients(spec), steps);
  bp.functionals = adjoint_boundary_conditions(spec);
  bp.shift_sign = (spec.n % 2 == 0) ? 1.0 : -1.0;
  bp.label = "adjoint of " + space_label({spec.sigma, spec.epsilon});
  return bp;
}

Eigen::MatrixXd boundary_matrix(const BoundaryProblem& bp, double M) {
  const int n = bp.table->n;
  if (static_cast<int>(bp.functionals.size()) != n) {
    throw ValidationError("a boundary problem needs exactly n functionals");
  }
  // When every functional at a is a unit row, the columns it selects only
  // contribute through that row, so they need not be integrated.
  std::vector<bool> skip(n, false);
  bool pure_a = true;
  for (const auto& f : bp.functionals) {
    if (f.endpoint == BoundaryFunctional::Endpoint::A && !f.is_pure()) pure_a = false;
  }
  if (pure_a) {
    for (const auto& f : bp.functionals) {
      if (f.endpoint == BoundaryFunctional::Endpoint::A) skip[f.leading()] = true;
    }
  }
  std::vector<int> active;
  for (int j = 0; j < n; ++j) {
    if (!skip[j]) active.push_back(j);
  }
  Eigen::MatrixXd initial = Eigen::MatrixXd::Zero(n, static_cast<int>(active.size()));
  for (std::size_t c = 0; c < active.size(); ++c) initial(active[c], c) = 1.0;
  Eigen::MatrixXd end = integrate_to_end(*bp.table, bp.shift_sign * M, initial);

  Eigen::MatrixXd at_b = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
  for (std::size_t c = 0; c < active.size(); ++c) {
    at_b.col(active[c]) = end.col(c);
    scale(active[c]) = 1.0 / std::max(1.0, end.col(c).cwiseAbs().maxCoeff());
  }
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& f = bp.functionals[i];
    Eigen::Map<const Eigen::RowVectorXd> c(f.coefficients.data(), n);
    if (f.endpoint == BoundaryFunctional::Endpoint::A) {
      m.row(i) = c;
    } else {
      m.row(i) = c * at_b;
    }
  }
  return m * scale.asDiagonal();
}

double characteristic_det(const BoundaryProblem& bp, double M) {
  return boundary_matrix(bp, M).determinant();
}

double characteristic_det(const ProblemSpec& spec, const SpaceDescriptor& space, double M) {
  return characteristic_det(boundary_problem(spec, space), M);
}

std::vector<ScanSample> scan_determinant(const BoundaryProblem& bp, double m_bar,
                                         Direction direction, const SearchConfig& cfg, int count) {
  const int n = bp.table->n;
  const double m_max = std::pow(cfg.lambda_max, 1.0 / n);
  std::vector<ScanSample> out;
  for (int i = 1; i <= std::min(count, cfg.grid_points); ++i) {
    const double lambda = signed_lambda(direction, m_max * i / cfg.grid_points, n);
    out.push_back({lambda, characteristic_det(bp, m_bar - lambda)});
  }
  return out;
}

Eigenvalue find_eigenvalue(const BoundaryProblem& bp, double m_bar, Direction direction,
                           const SearchConfig& cfg_in) {
  if (!(cfg_in.lambda_max > 0.0)) throw ValidationError("lambda_max must be resolved and positive");
  const SearchConfig& cfg = cfg_in;
  const int n = bp.table->n;
  const double m_max = std::pow(cfg.lambda_max, 1.0 / n);
  auto det_at_m = [&](double m) { return characteristic_det(bp, m_bar - signed_lambda(direction, m, n)); };

  Eigenvalue ev;
  ev.label = bp.label;
  ev.direction = direction;

  const double d0 = characteristic_det(bp, m_bar);
  double prev_m = 0.0;
  double prev_d = d0;
  double scale = std::fabs(d0);
  std::vector<std::pair<double, double>> samples{{0.0, d0}};
  bool found = false;
  double lo_m = 0.0, hi_m = 0.0, lo_d = 0.0;
  for (int i = 1; i <= cfg.grid_points; ++i) {
    const double m = m_max * i / cfg.grid_points;
    const double d = det_at_m(m);
    scale = std::max(scale, std::fabs(d));
    samples.emplace_back(m, d);
    if (d == 0.0 || (prev_d != 0.0 && std::signbit(d) != std::signbit(prev_d))) {
      lo_m = prev_m;
      hi_m = m;
      lo_d = prev_d;
      found = true;
      break;
    }
    prev_m = m;
    prev_d = d;
  }
  if (!found) {
    throw NotFoundError("no " + direction_name(direction) + " eigenvalue in " + bp.label +
                        ": no sign change of the characteristic determinant for |lambda| in (0, " +
                        fmt(cfg.lambda_max) + "]");
  }
  // Bisection in m; the lambda bracket is the image of the m bracket.
  for (int iter = 0; iter < 400; ++iter) {
    const double lam_lo = std::pow(lo_m, n);
    const double lam_hi = std::pow(hi_m, n);
    const double lam_mid = std::pow(0.5 * (lo_m + hi_m), n);
    if (lam_hi - lam_lo <= cfg.refine_tol * std::max(1.0, lam_mid)) break;
    const double mid = 0.5 * (lo_m + hi_m);
    if (mid <= lo_m || mid >= hi_m) break;
    const double d = det_at_m(mid);
    if (d == 0.0) {
      lo_m = hi_m = mid;
      break;
    }
    if (std::signbit(d) == std::signbit(lo_d)) {
      lo_m = mid;
      lo_d = d;
    } else {
      hi_m = mid;
    }
  }
  const double root_m = 0.5 * (lo_m + hi_m);
  ev.lambda = signed_lambda(direction, root_m, n);
  const double b1 = signed_lambda(direction, lo_m, n);
  const double b2 = signed_lambda(direction, hi_m, n);
  ev.bracket_lo = std::min(b1, b2);
  ev.bracket_hi = std::max(b1, b2);
  ev.residual = std::fabs(characteristic_det(bp, m_bar - ev.lambda));
  ev.simple = true;
  // A deep minimum of |Delta| without a sign change may hide a double root.
  // The last two samples bracket the root itself and are skipped.
  for (std::size_t i = 1; i + 2 < samples.size(); ++i) {
    const double v = std::fabs(samples[i].second);
    if (v < 1e-8 * scale && v <= std::fabs(samples[i - 1].second) &&
        v <= std::fabs(samples[i + 1].second)) {
      ev.warnings.push_back("possible even-multiplicity root near lambda=" +
                            fmt(signed_lambda(direction, samples[i].first, n)) + " in " + bp.label);
    }
  }
  return ev;
}

Eigenvalue find_eigenvalue(const ProblemSpec& spec, const SpaceDescriptor& space,
                           Direction direction, const SearchConfig& cfg) {
  const SearchConfig c = cfg.resolved(spec);
  Eigenvalue ev = find_eigenvalue(boundary_problem(spec, space, c.steps), spec.m_bar, direction, c);
  ev.space = space;
  return ev;
}

SampledFunction eigenfunction(const ProblemSpec& spec, const SpaceDescriptor& space, double lambda,
                              int points, int steps) {
  if (points < 3) throw ValidationError("eigenfunction needs at least 3 sample points");
  const double M = spec.m_bar - lambda;
  auto table = make_coefficient_table(spec, steps);
  BoundaryProblem bp = boundary_problem(table, space);
  const int n = spec.n;
  // Unscaled boundary matrix over the full fundamental system.
  FundamentalSystem fs = integrate_fundamental(table, M);
  Eigen::MatrixXd end = fs.snapshot(fs.steps());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& f = bp.functionals[i];
    Eigen::Map<const Eigen::RowVectorXd> c(f.coefficients.data(), n);
    m.row(i) = f.endpoint == BoundaryFunctional::Endpoint::A ? Eigen::RowVectorXd(c)
                                                             : Eigen::RowVectorXd(c * end);
  }
  Eigen::VectorXd scale(n);
  for (int j = 0; j < n; ++j) scale(j) = 1.0 / std::max(1.0, m.col(j).cwiseAbs().maxCoeff());
  Eigen::MatrixXd ms = m * scale.asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ms, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (!(sv(n - 1) <= 1e-6 * sv(0))) {
    throw SingularError("lambda=" + fmt(lambda) + " is not an eigenvalue in " + space_label(space) +
                        " (boundary matrix is regular)");
  }
  Eigen::VectorXd coef = scale.asDiagonal() * svd.matrixV().col(n - 1);

  SampledFunction out;
  for (int i = 0; i < points; ++i) {
    const double t = i == points - 1 ? spec.b : spec.a + (spec.b - spec.a) * i / (points - 1);
    out.t.push_back(t);
    out.value.push_back(fs.state_at(t).row(0).dot(coef));
  }
  double peak = 0.0;
  std::size_t peak_at = 0;
  for (std::size_t i = 0; i < out.value.size(); ++i) {
    if (std::fabs(out.value[i]) > peak) {
      peak = std::fabs(out.value[i]);
      peak_at = i;
    }
  }
  if (peak == 0.0) throw SingularError("eigenfunction vanishes identically");
  const double mid = out.value[out.value.size() / 2];
  const double ref = std::fabs(mid) > 1e-8 * peak ? mid : out.value[peak_at];
  const double factor = (ref < 0.0 ? -1.0 : 1.0) / peak;
  for (double& v : out.value) v *= factor;
  return out;
}

}  // namespace greensign
