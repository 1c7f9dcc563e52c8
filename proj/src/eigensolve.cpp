#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "besselrg/spectral.hpp"

namespace besselrg {

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data) s += v * v;
  return std::sqrt(s);
}

namespace {

EigenResult run_dsyevr(const Matrix& m, char range, double vl, double vu, bool want_vectors) {
  for (double v : m.data)
    if (!std::isfinite(v)) throw DomainError("matrix has non-finite entries");
  const lapack_int n = static_cast<lapack_int>(m.n);
  EigenResult res;
  if (n == 0) return res;
  // The matrix is symmetric, so the row-major buffer is also its column-major form.
  std::vector<double> a = m.data;
  std::vector<double> w(m.n);
  std::vector<double> z(want_vectors ? m.n * m.n : 1);
  std::vector<lapack_int> isuppz(2 * m.n);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', range, 'U',
                                         n, a.data(), n, vl, vu, 1, n, 0.0, &found, w.data(),
                                         z.data(), want_vectors ? n : 1, isuppz.data());
  if (info < 0) throw DomainError("dsyevr rejected its arguments");
  if (info > 0) throw ConvergenceError("dsyevr failed to converge");
  res.values.assign(w.begin(), w.begin() + found);
  if (want_vectors) {
    res.vectors.resize(found);
    for (lapack_int k = 0; k < found; ++k)
      res.vectors[k].assign(z.begin() + k * n, z.begin() + (k + 1) * n);
  }
  return res;
}

}  // namespace

EigenResult symmetric_eigensolve(const Matrix& m, bool want_vectors) {
  return run_dsyevr(m, 'A', 0.0, 0.0, want_vectors);
}

EigenResult symmetric_eigensolve_range(const Matrix& m, double lower, double upper,
                                       bool want_vectors) {
  if (!(lower < upper)) throw DomainError("empty eigenvalue range");
  return run_dsyevr(m, 'V', lower, upper, want_vectors);
}

}  // namespace besselrg
