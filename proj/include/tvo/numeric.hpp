#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdio>
#include <string>

namespace tvo {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// exp(2*pi*i * num/den) computed from the reduced angle so that equal rational
// angles give bit-identical values.
inline cd unit_root(long long num, long long den) {
  num %= den;
  if (num < 0) num += den;
  double theta = 2.0 * kPi * (static_cast<double>(num) / static_cast<double>(den));
  return {std::cos(theta), std::sin(theta)};
}

// Integer power of a phase, by angle arithmetic: forces the modulus to 1 so
// that negative exponents of a slightly-off-unit t stay stable.
inline cd unit_pow(cd t, long long a) {
  double theta = std::arg(t);
  double phi = theta * static_cast<double>(a);
  return {std::cos(phi), std::sin(phi)};
}

// Canonical float format used by every serialized artifact: shortest %.17g,
// with negative zero normalized.  Round-trips doubles exactly.
inline std::string fmt_double(double x) {
  if (x == 0.0) x = 0.0;  // flush -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline bool almost_equal(cd a, cd b, double tol = kDefaultTol) {
  return std::abs(a - b) <= tol;
}

inline double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace tvo
