#pragma once

#include <cmath>
#include <vector>

#include "eigengame/data.hpp"
#include "eigengame/linalg.hpp"
#include "eigengame/mat.hpp"
#include "eigengame/rng.hpp"
#include "eigengame/updates.hpp"

namespace eigengame::test {

inline Vec random_unit(std::size_t d, Philox& rng) {
  Vec v(d);
  double n = 0.0;
  do {
    for (std::size_t i = 0; i < d; ++i) v[i] = rng.next_normal();
    n = norm2(v);
  } while (n == 0.0);
  scale(v, 1.0 / n);
  return v;
}

/// Random PSD matrix with eigenvalues drawn uniformly from [lo, hi],
/// sorted descending.
inline Mat random_psd(std::size_t d, Philox& rng, double lo = 0.1,
                      double hi = 1.0) {
  Vec lambda(d);
  for (std::size_t i = 0; i < d; ++i)
    lambda[i] = lo + (hi - lo) * rng.next_double();
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const Mat q = random_orthogonal(d, rng.next_u64());
  Mat ql(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) ql(r, c) = q(r, c) * lambda[c];
  Mat s = matmul(ql, q.transposed());
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r + 1; c < d; ++c) {
      const double m = 0.5 * (s(r, c) + s(c, r));
      s(r, c) = m;
      s(c, r) = m;
    }
  return s;
}

inline Mat random_gaussian(std::size_t n, std::size_t d, Philox& rng) {
  Mat x(n, d);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) x(r, c) = rng.next_normal();
  return x;
}

inline double rel_err(const Vec& got, const Vec& want) {
  Vec diff = got;
  axpy(-1.0, want, diff);
  return norm2(diff) / std::max(norm2(want), 1e-300);
}

inline double max_abs_diff_vec(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Best response for the given parents, found independently of the update
/// path: dense maximization of the deflated Rayleigh quotient via the
/// eigendecomposition oracle.
inline Vec best_response(const Mat& sigma, const std::vector<Vec>& parents) {
  const std::size_t d = sigma.rows();
  Mat deflated = sigma;
  for (const Vec& p : parents) {
    const Vec sp = matvec(sigma, p);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) deflated(r, c) -= p[r] * sp[c];
  }
  // The quadratic form only sees the symmetric part.
  Mat sym(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      sym(r, c) = 0.5 * (deflated(r, c) + deflated(c, r));
  return jacobi_eigh(sym).eigenvectors.col(0);
}

}  // namespace eigengame::test
