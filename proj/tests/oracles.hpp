#pragma once

// Reference values shared by the unit and acceptance tests. Closed-form
// roots are computed here by plain bisection on the defining equations so
// they do not depend on the library under test.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "greensign/coeffexpr.hpp"
#include "greensign/problem.hpp"

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Least root of f in (lo, hi] found by a uniform scan and bisection.
inline double first_root(const std::function<double(double)>& f, double lo, double hi, int cells = 4000) {
  double prev = lo;
  for (int i = 1; i <= cells; ++i) {
    const double x = lo + (hi - lo) * i / cells;
    if ((f(prev) < 0) != (f(x) < 0)) return bisect(f, prev, x);
    prev = x;
  }
  return std::nan("");
}

// Third-order roots.
inline double m4() {
  return first_root([](double m) { return std::exp(-m) + 2 * std::exp(m / 2) * std::cos(std::sqrt(3.0) / 2 * m); },
                    1e-3, 6.0);
}
inline double m5() {
  return first_root(
      [](double m) {
        const double x = std::sqrt(3.0) / 2 * m;
        return std::exp(-m) - std::exp(m / 2) * (std::cos(x) + std::sqrt(3.0) * std::sin(x));
      },
      1e-3, 6.0);
}
inline double m6() {
  return first_root(
      [](double m) {
        const double x = std::sqrt(3.0) / 2 * m;
        return std::exp(-m) - std::exp(m / 2) * (std::cos(x) - std::sqrt(3.0) * std::sin(x));
      },
      1e-3, 6.0);
}

// tan m + tanh m = 0, least positive root.
inline double m1() {
  return bisect([](double m) { return std::tan(m) + std::tanh(m); }, kPi / 2 + 1e-9, kPi);
}

// tan m - tanh m = 0, least positive root.
inline double m3() {
  return bisect([](double m) { return std::tan(m) - std::tanh(m); }, kPi + 1e-9, 1.5 * kPi - 1e-9);
}

// tan(m/sqrt2) - tanh(m/sqrt2) = 0, least positive root.
inline double m2() { return std::sqrt(2.0) * m3(); }

// Printed fixtures with their relative tolerance on the m-value.
inline constexpr double kM2Printed = 5.550305;
inline constexpr double kM3Printed = 3.9266;
inline constexpr double kM1Printed = 2.36502;
inline constexpr double kM4 = 1.85;
inline constexpr double kM5 = 3.017;
inline constexpr double kM6Printed = 4.223;
inline constexpr double kM7 = 5.47916;
inline constexpr double kM8 = 4.14577;
inline constexpr double kM9 = 3.17334;

// T4 with p1 = exp(2t) sin(2t) on [0,1] in X_{0,2}^{1,2}.
inline constexpr double kNc1 = 2.62355;      // lambda_1, X_{0,2}^{1,2}
inline constexpr double kNc2pp = 4.69621;    // lambda_2'', X_{0,1,2}^{1}
inline constexpr double kNc2p = 6.18170;     // lambda_2', X_{0}^{0,1,2}
inline constexpr double kNcEps = 3.45041;    // X_{0,1,2}^{2}
inline constexpr double kNcSigma = 4.20409;  // X_{2}^{0,1,2}
inline constexpr double kNc3p = 3.22872;     // lambda_3', X_{0,1}^{1,2}
inline constexpr double kNc3pp = 4.33768;    // lambda_3'', X_{0,2}^{0,1}

// Green's function of u'''' = h, u(0) = u''(0) = u'(1) = u''(1) = 0.
inline double g_t4(double t, double s) {
  if (t <= s) {
    return (1 - s) * t * t * t / 3 + t * (1 - s) * (s * s - t * t) / 2 + t * s * (1 - s) * (1 - s) / 2;
  }
  return (1 - s) * s * s * s / 3 + s * ((t * t - s * s) / 2 - (t * t * t - s * s * s) / 3) +
         t * s * (1 - t) * (1 - t) / 2;
}

// d/dt g(0, s).
inline double dg_t4_at_0(double s) { return (s - s * s) / 2; }

// Lower and upper profiles of the bounds phi(t) k1(s) <= g <= phi(t) k2(s), phi(t) = t.
inline double k1_t4(double s) { return s * (1 - s * s) / 6; }
inline double k2_t4(double s) { return s * (1 - s) / 2; }

inline greensign::ProblemSpec t4_nonconstant() {
  using namespace greensign;
  return make_problem(4, 0.0, 1.0,
                      {parse_expr("exp(2*t)*sin(2*t)"), parse_expr("0"), parse_expr("0"), parse_expr("0")},
                      0.0, {0, 2}, {1, 2});
}

inline double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace oracle
