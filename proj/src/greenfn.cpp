#include "greensign/greenfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace greensign {

namespace {

constexpr double kSingularRcond = 1e-11;
constexpr double kConditioningWarn = 1e-6;

std::vector<double> uniform_grid(double a, double b, int count) {
  if (count < 3) throw ValidationError("grids need at least 3 points");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = a + (b - a) * i / (count - 1);
  g.back() = b;
  return g;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Regular boundary system A c = r over a fundamental system.
class BoundarySolver {
 public:
  BoundarySolver(const FundamentalSystem& fs, const std::vector<BoundaryFunctional>& functionals,
                 double M_reported)
      : n_(fs.n()), phi_b_(fs.snapshot(fs.steps())), functionals_(functionals) {
    a_.resize(n_, n_);
    for (int i = 0; i < n_; ++i) {
      Eigen::Map<const Eigen::RowVectorXd> c(functionals[i].coefficients.data(), n_);
      a_.row(i) = at_a(i) ? Eigen::RowVectorXd(c) : Eigen::RowVectorXd(c * phi_b_);
    }
    scale_.resize(n_);
    for (int j = 0; j < n_; ++j) {
      scale_(j) = 1.0 / std::max(1.0, phi_b_.col(j).cwiseAbs().maxCoeff());
    }
    lu_.compute(a_ * scale_.asDiagonal());
    const double rcond = lu_.rcond();
    if (!(rcond > kSingularRcond)) {
      throw SingularError("M=" + fmt(M_reported) +
                          " is an eigenvalue: boundary system is singular (rcond " + fmt(rcond) + ")");
    }
  }

  bool at_a(int row) const {
    return functionals_[row].endpoint == BoundaryFunctional::Endpoint::A;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    return scale_.asDiagonal() * lu_.solve(rhs);
  }

  double residual(const Eigen::VectorXd& c, const Eigen::VectorXd& rhs) const {
    const double denom = a_.cwiseAbs().maxCoeff() * c.cwiseAbs().maxCoeff() + rhs.cwiseAbs().maxCoeff();
    return denom > 0.0 ? (a_ * c - rhs).cwiseAbs().maxCoeff() / denom : 0.0;
  }

  // Functional i applied to the branch coefficients reaching its endpoint.
  double apply(int i, const Eigen::VectorXd& c_minus, const Eigen::VectorXd& c_plus) const {
    Eigen::Map<const Eigen::RowVectorXd> f(functionals_[i].coefficients.data(), n_);
    return at_a(i) ? f.dot(c_minus) : f.dot(phi_b_ * c_plus);
  }

  const Eigen::MatrixXd& phi_b() const { return phi_b_; }
  const Eigen::MatrixXd& matrix() const { return a_; }

 private:
  int n_;
  Eigen::MatrixXd phi_b_;
  const std::vector<BoundaryFunctional>& functionals_;
  Eigen::MatrixXd a_;
  Eigen::VectorXd scale_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

Eigen::MatrixXd states_on(const FundamentalSystem& fs, const std::vector<double>& grid, int rows) {
  // Row i holds the first `rows` derivative rows of Phi(grid[i]) flattened.
  Eigen::MatrixXd out(static_cast<int>(grid.size()), fs.n() * rows);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Eigen::MatrixXd x = fs.state_at(grid[i]);
    for (int r = 0; r < rows; ++r) out.block(i, r * fs.n(), 1, fs.n()) = x.row(r);
  }
  return out;
}

GreenFunction build_kernel(const FundamentalSystem& fs,
                           const std::vector<BoundaryFunctional>& functionals, double M_reported,
                           int n_t, int n_s, double value_sign, int alpha = -1,
                           int beta = -1) {
  const int n = fs.n();
  BoundarySolver solver(fs, functionals, M_reported);
  GreenFunction gf;
  gf.M = M_reported;
  gf.n = n;
  gf.a = fs.a();
  gf.b = fs.b();
  gf.t_grid = uniform_grid(fs.a(), fs.b(), n_t);
  gf.s_grid = uniform_grid(fs.a(), fs.b(), n_s);
  gf.values.resize(n_t, n_s);

  const Eigen::MatrixXd phi_t = states_on(fs, gf.t_grid, 1);
  Eigen::VectorXd e_last = Eigen::VectorXd::Zero(n);
  e_last(n - 1) = 1.0;

  for (int j = 0; j < n_s; ++j) {
    const double s = gf.s_grid[j];
    const Eigen::MatrixXd phi_s = fs.state_at(s);
    const Eigen::VectorXd d = phi_s.partialPivLu().solve(e_last);
    const Eigen::VectorXd phi_b_d = solver.phi_b() * d;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (!solver.at_a(i)) {
        Eigen::Map<const Eigen::RowVectorXd> f(functionals[i].coefficients.data(), n);
        rhs(i) = -f.dot(phi_b_d);
      }
    }
    const Eigen::VectorXd c_minus = solver.solve(rhs);
    const Eigen::VectorXd c_plus = c_minus + d;
    if (alpha >= 0) {
      // t < s branch at a, t >= s branch at b; one-sided limits in s at the ends.
      gf.d_alpha_at_a.push_back(c_minus(alpha));
      gf.d_beta_at_b.push_back((solver.phi_b() * c_plus)(beta));
    }
    gf.max_solve_residual = std::max(gf.max_solve_residual, solver.residual(c_minus, rhs));

    double column_scale = 0.0;
    for (int i = 0; i < n_t; ++i) {
      const bool upper = gf.t_grid[i] >= s;
      const double g = phi_t.row(i).dot(upper ? c_plus : c_minus);
      gf.values(i, j) = value_sign * g;
      column_scale = std::max(column_scale, std::fabs(g));
    }
    column_scale = std::max({column_scale, c_minus.cwiseAbs().maxCoeff(),
                             (solver.phi_b() * c_plus).cwiseAbs().maxCoeff()});
    if (column_scale > 0.0) {
      for (int i = 0; i < n; ++i) {
        gf.max_bc_residual =
            std::max(gf.max_bc_residual, std::fabs(solver.apply(i, c_minus, c_plus)) / column_scale);
      }
    }
    const Eigen::VectorXd jump = phi_s * d;
    for (int r = 0; r < n; ++r) {
      const double target = r == n - 1 ? 1.0 : 0.0;
      gf.max_jump_residual = std::max(gf.max_jump_residual, std::fabs(jump(r) - target));
    }
  }
  if (gf.max_solve_residual > kConditioningWarn) {
    gf.warnings.push_back("ill-conditioned boundary solve, relative residual " +
                          fmt(gf.max_solve_residual));
  }
  return gf;
}

void fill_slices(const ProblemSpec& spec, const FundamentalSystem& fs, GreenFunction& gf) {
  const int n = spec.n;
  const int k = spec.k();
  const DerivedIndices idx = derive_indices(spec);
  const auto functionals = unit_functionals(spec.sigma, spec.epsilon, n);
  BoundarySolver solver(fs, functionals, gf.M);
  gf.alpha = idx.alpha;
  gf.beta = idx.beta;
  gf.gamma = idx.gamma;

  // w_M and y_M as solutions of the base problem with one unit datum.
  Eigen::VectorXd ex = Eigen::VectorXd::Zero(n);
  ex(k - 1) = 1.0;
  Eigen::VectorXd ez = Eigen::VectorXd::Zero(n);
  ez(n - 1) = 1.0;
  const Eigen::VectorXd cx = solver.solve(ex);
  const Eigen::VectorXd cz = solver.solve(ez);
  const double sw = ((n - 1 - spec.sigma.back()) % 2 == 0) ? 1.0 : -1.0;
  const double sy = ((n - spec.epsilon.back()) % 2 == 0) ? 1.0 : -1.0;
  const Eigen::MatrixXd phi_t = states_on(fs, gf.t_grid, 1);
  for (std::size_t i = 0; i < gf.t_grid.size(); ++i) {
    gf.d_eta_at_sa.push_back(sw * phi_t.row(i).dot(cx));
    gf.d_gamma_at_sb.push_back(sy * phi_t.row(i).dot(cz));
  }
  IndexSet sigma_rest(spec.sigma.begin(), spec.sigma.end() - 1);
  IndexSet eps_rest(spec.epsilon.begin(), spec.epsilon.end() - 1);
  gf.alpha_w = first_gap(sigma_rest);
  gf.beta_y = first_gap(eps_rest);
  const Eigen::VectorXd cx_b = solver.phi_b() * cx;
  const Eigen::VectorXd cz_b = solver.phi_b() * cz;
  gf.w_alpha_at_a = sw * cx(gf.alpha_w);
  gf.w_beta_at_b = sw * cx_b(idx.beta);
  gf.y_alpha_at_a = sy * cz(idx.alpha);
  gf.y_beta_at_b = sy * cz_b(gf.beta_y);
}

double parity(int e) { return e % 2 == 0 ? 1.0 : -1.0; }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

GreenFunction build_green(const ProblemSpec& spec, double M, int n_t, int n_s, int steps) {
  FundamentalSystem fs = integrate_fundamental(make_coefficient_table(spec, steps), M);
  const DerivedIndices idx = derive_indices(spec);
  GreenFunction gf = build_kernel(fs, unit_functionals(spec.sigma, spec.epsilon, spec.n), M, n_t,
                                  n_s, 1.0, idx.alpha, idx.beta);
  fill_slices(spec, fs, gf);
  return gf;
}

GreenFunction adjoint_green(const ProblemSpec& spec, double M, int n_t, int n_s, int steps) {
  const double sign = parity(spec.n);
  auto table = make_coefficient_table(spec.n, spec.a, spec.b, adjoint_monic_coefficients(spec), steps);
  FundamentalSystem fs = integrate_fundamental(table, sign * M);
  // T* = (-1)^n L with L monic, so g* = (-1)^n times the kernel of L.
  return build_kernel(fs, adjoint_boundary_conditions(spec), M, n_t, n_s, sign);
}

std::string sign_class_name(SignClass c) {
  switch (c) {
    case SignClass::StronglyInversePositive: return "strongly-inverse-positive";
    case SignClass::StronglyInverseNegative: return "strongly-inverse-negative";
    case SignClass::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string sign_class_short(SignClass c) {
  switch (c) {
    case SignClass::StronglyInversePositive: return "SIP";
    case SignClass::StronglyInverseNegative: return "SIN";
    case SignClass::Indeterminate: return "none";
  }
  return "none";
}

namespace {

struct OrientedCheck {
  bool interior = true;
  bool alpha = true;
  bool beta = true;
  Violation worst{0.0, 0.0, 0.0};
};

OrientedCheck check_orientation(const GreenFunction& gf, double o) {
  OrientedCheck r;
  const int n_t = static_cast<int>(gf.t_grid.size());
  const int n_s = static_cast<int>(gf.s_grid.size());
  const double tol = kSignTolerance * gf.max_abs();
  bool first = true;
  for (int j = 1; j + 1 < n_s; ++j) {
    for (int i = 1; i + 1 < n_t; ++i) {
      const double v = o * gf.values(i, j);
      if (first || v < r.worst.value) {
        r.worst = {gf.t_grid[i], gf.s_grid[j], v};
        first = false;
      }
      if (v < -tol) r.interior = false;
    }
  }
  if (!gf.has_slices()) return r;

  const double py = parity(gf.gamma);
  const double w_scale = max_abs(gf.d_eta_at_sa);
  const double y_scale = max_abs(gf.d_gamma_at_sb);
  // Edge limits of the interior: g ~ w(t)(s-a)^eta and g ~ (-1)^gamma y(t)(b-s)^gamma.
  for (int i = 1; i + 1 < n_t; ++i) {
    if (o * gf.d_eta_at_sa[i] < -kSignTolerance * w_scale) r.interior = false;
    if (o * py * gf.d_gamma_at_sb[i] < -kSignTolerance * y_scale) r.interior = false;
  }
  const double a_tol = kSignTolerance * max_abs(gf.d_alpha_at_a);
  const double b_tol = kSignTolerance * max_abs(gf.d_beta_at_b);
  const double pb = parity(gf.beta);
  for (int j = 1; j + 1 < n_s; ++j) {
    if (o * gf.d_alpha_at_a[j] < -a_tol) r.alpha = false;
    if (o * pb * gf.d_beta_at_b[j] < -b_tol) r.beta = false;
  }
  // Corner limits of the alpha and beta slices as s -> a+ and s -> b-.
  const double wc = std::max({w_scale, std::fabs(gf.w_alpha_at_a), std::fabs(gf.w_beta_at_b)});
  const double yc = std::max({y_scale, std::fabs(gf.y_alpha_at_a), std::fabs(gf.y_beta_at_b)});
  if (o * gf.w_alpha_at_a < -kCornerTolerance * wc) r.alpha = false;
  if (o * py * gf.y_alpha_at_a < -kCornerTolerance * yc) r.alpha = false;
  if (o * pb * gf.w_beta_at_b < -kCornerTolerance * wc) r.beta = false;
  if (o * py * parity(gf.beta_y) * gf.y_beta_at_b < -kCornerTolerance * yc) r.beta = false;
  return r;
}

}  // namespace

SignReport classify_sign(const GreenFunction& gf, const DerivedIndices& /*indices*/) {
  SignReport report;
  const OrientedCheck pos = check_orientation(gf, 1.0);
  if (pos.interior && pos.alpha && pos.beta) {
    report.classification = SignClass::StronglyInversePositive;
    report.interior_sign_ok = report.d_alpha_ok = report.d_beta_ok = true;
    report.worst_violation = pos.worst;
    return report;
  }
  const OrientedCheck neg = check_orientation(gf, -1.0);
  if (neg.interior && neg.alpha && neg.beta) {
    report.classification = SignClass::StronglyInverseNegative;
    report.interior_sign_ok = report.d_alpha_ok = report.d_beta_ok = true;
    report.worst_violation = neg.worst;
    return report;
  }
  // Report the orientation whose interior check fares better.
  const OrientedCheck& pick = neg.worst.value > pos.worst.value ? neg : pos;
  report.classification = SignClass::Indeterminate;
  report.interior_sign_ok = pick.interior;
  report.d_alpha_ok = pick.alpha;
  report.d_beta_ok = pick.beta;
  report.worst_violation = pick.worst;
  return report;
}

PgBounds pg_ng_bounds(const GreenFunction& gf, const DerivedIndices& indices) {
  if (!gf.has_slices()) throw ValidationError("bounds need the boundary slices of the base kernel");
  const int alpha = indices.alpha;
  const int beta = indices.beta;
  const double len = gf.b - gf.a;
  const int n_t = static_cast<int>(gf.t_grid.size());
  PgBounds out;
  for (std::size_t j = 0; j < gf.s_grid.size(); ++j) {
    const double l1 = gf.d_alpha_at_a[j] / (factorial(alpha) * std::pow(len, beta));
    const double l2 = parity(beta) * gf.d_beta_at_b[j] / (factorial(beta) * std::pow(len, alpha));
    double lo = std::min(l1, l2);
    double hi = std::max(l1, l2);
    for (int i = 1; i + 1 < n_t; ++i) {
      const double t = gf.t_grid[i];
      const double phi = std::pow(t - gf.a, alpha) * std::pow(gf.b - t, beta);
      const double q = gf.values(i, static_cast<int>(j)) / phi;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    out.k1.push_back(lo);
    out.k2.push_back(hi);
  }
  return out;
}

NonhomogBasis nonhomog_basis(const ProblemSpec& spec, double M, int points, int steps) {
  FundamentalSystem fs = integrate_fundamental(make_coefficient_table(spec, steps), M);
  const int n = spec.n;
  const auto functionals = unit_functionals(spec.sigma, spec.epsilon, n);
  BoundarySolver solver(fs, functionals, M);
  Eigen::VectorXd ex = Eigen::VectorXd::Zero(n);
  ex(spec.k() - 1) = 1.0;
  Eigen::VectorXd ez = Eigen::VectorXd::Zero(n);
  ez(n - 1) = 1.0;
  const Eigen::VectorXd cx = solver.solve(ex);
  const Eigen::VectorXd cz = solver.solve(ez);
  NonhomogBasis out;
  const auto grid = uniform_grid(spec.a, spec.b, points);
  const Eigen::MatrixXd phi = states_on(fs, grid, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.x.t.push_back(grid[i]);
    out.x.value.push_back(phi.row(i).dot(cx));
    out.z.t.push_back(grid[i]);
    out.z.value.push_back(phi.row(i).dot(cz));
  }
  return out;
}

}  // namespace greensign
