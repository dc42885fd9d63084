#include "greensign/odecore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace greensign {

namespace {

// y = A(t) x for the companion matrix; coef[j-1] = p_j(t), M added to p_n.
void companion_apply(int n, int cols, const double* coef, double M, const double* x, double* y) {
  for (int c = 0; c < cols; ++c) {
    const double* xc = x + c * n;
    double* yc = y + c * n;
    for (int r = 0; r + 1 < n; ++r) yc[r] = xc[r + 1];
    double last = -(coef[n - 1] + M) * xc[0];
    for (int j = 1; j < n; ++j) last -= coef[j - 1] * xc[n - j];
    yc[n - 1] = last;
  }
}

class Stepper {
 public:
  Stepper(int n, int cols) : n_(n), size_(n * cols), cols_(cols), k_(4 * n * cols), tmp_(n * cols) {}

  // Advances x in place by one classical RK4 step of length h.
  void step(double* x, double h, const double* c0, const double* cm, const double* c1, double M) {
    double* k1 = k_.data();
    double* k2 = k1 + size_;
    double* k3 = k2 + size_;
    double* k4 = k3 + size_;
    double* y = tmp_.data();
    companion_apply(n_, cols_, c0, M, x, k1);
    for (int i = 0; i < size_; ++i) y[i] = x[i] + 0.5 * h * k1[i];
    companion_apply(n_, cols_, cm, M, y, k2);
    for (int i = 0; i < size_; ++i) y[i] = x[i] + 0.5 * h * k2[i];
    companion_apply(n_, cols_, cm, M, y, k3);
    for (int i = 0; i < size_; ++i) y[i] = x[i] + h * k3[i];
    companion_apply(n_, cols_, c1, M, y, k4);
    double peak = 0.0;
    for (int i = 0; i < size_; ++i) {
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      peak = std::max(peak, std::fabs(x[i]));
    }
    if (!(peak <= kOverflowGuard)) throw OverflowError("solution magnitude exceeded 1e300");
  }

 private:
  int n_;
  int size_;
  int cols_;
  std::vector<double> k_;
  std::vector<double> tmp_;
};

std::vector<double> coefficients_at(const CoefficientTable& table, double t) {
  std::vector<double> c(table.n);
  for (int j = 0; j < table.n; ++j) c[j] = eval(table.p[j], t);
  return c;
}

}  // namespace

std::shared_ptr<const CoefficientTable> make_coefficient_table(int n, double a, double b,
                                                               const std::vector<CoefficientExpr>& p,
                                                               int steps) {
  if (steps < 64) throw ValidationError("integration needs at least 64 steps");
  if (static_cast<int>(p.size()) != n) throw ValidationError("coefficient count must equal n");
  auto table = std::make_shared<CoefficientTable>();
  table->n = n;
  table->a = a;
  table->b = b;
  table->steps = steps;
  table->h = (b - a) / steps;
  table->p = p;
  table->node.resize(static_cast<std::size_t>(steps + 1) * n);
  table->mid.resize(static_cast<std::size_t>(steps) * n);
  for (int j = 0; j < n; ++j) {
    if (p[j].is_constant()) {
      const double v = p[j].constant_value();
      for (int i = 0; i <= steps; ++i) table->node[i * n + j] = v;
      for (int i = 0; i < steps; ++i) table->mid[i * n + j] = v;
      continue;
    }
    for (int i = 0; i <= steps; ++i) table->node[i * n + j] = eval(p[j], table->t(i));
    for (int i = 0; i < steps; ++i) table->mid[i * n + j] = eval(p[j], a + table->h * (i + 0.5));
  }
  return table;
}

std::shared_ptr<const CoefficientTable> make_coefficient_table(const ProblemSpec& spec, int steps) {
  return make_coefficient_table(spec.n, spec.a, spec.b, spec.p, steps);
}

FundamentalSystem::FundamentalSystem(std::shared_ptr<const CoefficientTable> table, double M,
                                     std::vector<double> states)
    : table_(std::move(table)), M_(M), states_(std::move(states)) {}

Eigen::MatrixXd FundamentalSystem::snapshot(int i) const {
  const int n = table_->n;
  return Eigen::Map<const Eigen::MatrixXd>(states_.data() + static_cast<std::size_t>(i) * n * n, n,
                                           n);
}

Eigen::MatrixXd FundamentalSystem::state_at(double t) const {
  const CoefficientTable& tab = *table_;
  if (!(t >= tab.a && t <= tab.b)) {
    std::ostringstream msg;
    msg << "t=" << t << " outside [" << tab.a << ", " << tab.b << "]";
    throw RangeError(msg.str());
  }
  int i = static_cast<int>(std::floor((t - tab.a) / tab.h));
  i = std::clamp(i, 0, tab.steps);
  if (i < tab.steps && tab.t(i + 1) <= t) ++i;
  const double dt = t - tab.t(i);
  Eigen::MatrixXd x = snapshot(i);
  if (dt == 0.0 || i == tab.steps) return x;
  const int n = tab.n;
  std::vector<double> cm = coefficients_at(tab, tab.t(i) + 0.5 * dt);
  std::vector<double> c1 = coefficients_at(tab, t);
  Stepper stepper(n, n);
  stepper.step(x.data(), dt, &tab.node[static_cast<std::size_t>(i) * n], cm.data(), c1.data(), M_);
  return x;
}

FundamentalSystem integrate_fundamental(std::shared_ptr<const CoefficientTable> table, double M) {
  const CoefficientTable& tab = *table;
  const int n = tab.n;
  const std::size_t block = static_cast<std::size_t>(n) * n;
  std::vector<double> states(block * (tab.steps + 1), 0.0);
  for (int i = 0; i < n; ++i) states[i * n + i] = 1.0;
  Stepper stepper(n, n);
  for (int i = 0; i < tab.steps; ++i) {
    double* next = states.data() + block * (i + 1);
    std::copy_n(states.data() + block * i, block, next);
    stepper.step(next, tab.h, &tab.node[i * n], &tab.mid[i * n], &tab.node[(i + 1) * n], M);
  }
  return FundamentalSystem(std::move(table), M, std::move(states));
}

FundamentalSystem integrate_fundamental(const ProblemSpec& spec, double M, int steps) {
  return integrate_fundamental(make_coefficient_table(spec, steps), M);
}

Eigen::MatrixXd integrate_to_end(const CoefficientTable& tab, double M,
                                 const Eigen::MatrixXd& initial) {
  const int n = tab.n;
  Eigen::MatrixXd x = initial;
  Stepper stepper(n, static_cast<int>(x.cols()));
  for (int i = 0; i < tab.steps; ++i) {
    stepper.step(x.data(), tab.h, &tab.node[i * n], &tab.mid[i * n], &tab.node[(i + 1) * n], M);
  }
  return x;
}

double eval_solution(const FundamentalSystem& fs, int column, double t, int d) {
  const int n = fs.n();
  if (column < 0 || column >= n) throw RangeError("column index out of range");
  if (d < 0 || d > n) throw RangeError("derivative order out of range");
  Eigen::MatrixXd x = fs.state_at(t);
  if (d < n) return x(d, column);
  std::vector<double> c = coefficients_at(fs.table(), t);
  double y = 0.0;
  std::vector<double> out(n);
  companion_apply(n, 1, c.data(), fs.M(), x.col(column).data(), out.data());
  y = out[n - 1];
  return y;
}

namespace {

std::vector<double> leading_minors(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  std::vector<double> w(n);
  for (int k = 1; k <= n; ++k) w[k - 1] = x.topLeftCorner(k, k).determinant();
  return w;
}

}  // namespace

std::vector<double> wronskians(const FundamentalSystem& fs, double t) {
  return leading_minors(fs.state_at(t));
}

MarkovDecomposition markov_decomposition(const FundamentalSystem& fs) {
  const int n = fs.n();
  MarkovDecomposition md;
  md.v.assign(n, {});
  for (int i = 0; i <= fs.steps(); ++i) {
    std::vector<double> w = leading_minors(fs.snapshot(i));
    for (int k = 0; k < n; ++k) {
      if (!(w[k] > 0.0)) {
        md.failure = DisconjugacyFailure{i, fs.node_t(i), k + 1, w[k]};
        break;
      }
    }
    if (md.failure) break;
    md.t.push_back(fs.node_t(i));
    for (int k = 0; k < n; ++k) {
      double v;
      if (k == 0) {
        v = w[0];
      } else if (k == 1) {
        v = w[1] / (w[0] * w[0]);
      } else {
        v = w[k] * w[k - 2] / (w[k - 1] * w[k - 1]);
      }
      md.v[k].push_back(v);
    }
  }
  md.window_end = md.t.back();
  md.full_interval = !md.failure.has_value();
  return md;
}

MarkovDecomposition require_markov_decomposition(const FundamentalSystem& fs) {
  MarkovDecomposition md = markov_decomposition(fs);
  if (md.failure) {
    std::ostringstream msg;
    msg << "W_" << md.failure->k << " = " << md.failure->value << " <= 0 at t=" << md.failure->t
        << " (node " << md.failure->node << ")";
    throw DisconjugacyError(msg.str());
  }
  return md;
}

double liouville_deviation(const FundamentalSystem& fs) {
  const CoefficientTable& tab = fs.table();
  const int n = tab.n;
  double integral = 0.0;
  double worst = 0.0;
  for (int i = 0; i <= tab.steps; ++i) {
    if (i > 0) {
      integral += tab.h / 6.0 *
                  (tab.node[(i - 1) * n] + 4.0 * tab.mid[(i - 1) * n] + tab.node[i * n]);
    }
    const double wn = fs.snapshot(i).determinant();
    worst = std::max(worst, std::fabs(wn * std::exp(integral) - 1.0));
  }
  return worst;
}

}  // namespace greensign
