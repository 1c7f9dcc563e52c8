#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace besselrg::detail {

// Integrals over [u, v] of the Lagrange basis through t0, t1, t2.
inline void quadratic_weights(double t0, double t1, double t2, double u, double v, double w[3]) {
  const double t[3] = {t0 - u, t1 - u, t2 - u};
  const double h = v - u;
  const double m1 = h, m2 = h * h / 2.0, m3 = h * h * h / 3.0;
  for (int k = 0; k < 3; ++k) {
    const double a = t[(k + 1) % 3], b = t[(k + 2) % 3];
    w[k] = (m3 - (a + b) * m2 + a * b * m1) / ((t[k] - a) * (t[k] - b));
  }
}

// Running integral of samples y on nodes x, starting at x[0] with value 0.
// Each panel averages the two quadratics through its neighbours.
template <class T>
std::vector<T> cumulative_integral(const std::vector<double>& x, const std::vector<T>& y) {
  const std::size_t n = x.size();
  std::vector<T> out(n, T{});
  if (n < 2) return out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    T piece{};
    if (n == 2) {
      piece = (y[0] + y[1]) * (0.5 * (x[1] - x[0]));
    } else {
      double w[3];
      int count = 0;
      if (i >= 1) {
        quadratic_weights(x[i - 1], x[i], x[i + 1], x[i], x[i + 1], w);
        piece += w[0] * y[i - 1] + w[1] * y[i] + w[2] * y[i + 1];
        ++count;
      }
      if (i + 2 < n) {
        quadratic_weights(x[i], x[i + 1], x[i + 2], x[i], x[i + 1], w);
        piece += w[0] * y[i] + w[1] * y[i + 1] + w[2] * y[i + 2];
        ++count;
      }
      piece /= static_cast<double>(count);
    }
    out[i + 1] = out[i] + piece;
  }
  return out;
}

}  // namespace besselrg::detail
