#include "eigengame/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eigengame/errors.hpp"
#include "eigengame/rng.hpp"

namespace eigengame {

namespace {

double off_diagonal_norm(const Mat& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
  return std::sqrt(2.0 * s);
}

// Largest-magnitude entry positive; first occurrence wins on ties.
void fix_column_signs(Mat& q) {
  for (std::size_t c = 0; c < q.cols(); ++c) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t r = 0; r < q.rows(); ++r) {
      const double a = std::abs(q(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (q(arg, c) < 0.0) {
      for (std::size_t r = 0; r < q.rows(); ++r) q(r, c) = -q(r, c);
    }
  }
}

}  // namespace

SymEig jacobi_eigh(const Mat& s, int max_sweeps) {
  if (s.rows() != s.cols())
    throw ShapeError("jacobi_eigh: input must be square, got " +
                     std::to_string(s.rows()) + "x" + std::to_string(s.cols()));
  if (s.rows() > 4096)
    throw ShapeError("jacobi_eigh: dense oracle limited to d <= 4096");
  if (!all_finite(s)) throw ShapeError("jacobi_eigh: non-finite entries");
  const std::size_t d = s.rows();

  const double scale = std::max(1.0, max_abs(s));
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q)
      if (std::abs(s(p, q) - s(q, p)) > 1e-8 * scale)
        throw ShapeError("jacobi_eigh: input is not symmetric at (" +
                         std::to_string(p) + "," + std::to_string(q) + ")");

  Mat a = s;
  // Work on the exactly symmetric average so rotations stay consistent.
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q) {
      const double m = 0.5 * (a(p, q) + a(q, p));
      a(p, q) = m;
      a(q, p) = m;
    }

  Mat v = Mat::identity(d);
  const double tol = 1e-12 * std::max(frob_norm(s), 1e-300);

  bool converged = off_diagonal_norm(a) <= tol;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        const double tau = sn / (1.0 + c);

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p), arq = a(r, q);
            a(r, p) = arp - sn * (arq + tau * arp);
            a(p, r) = a(r, p);
            a(r, q) = arq + sn * (arp - tau * arq);
            a(q, r) = a(r, q);
          }
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp - sn * (vrq + tau * vrp);
          v(r, q) = vrq + sn * (vrp - tau * vrq);
        }
      }
    }
    converged = off_diagonal_norm(a) <= tol;
  }
  if (!converged)
    throw ConvergenceError("jacobi_eigh: no convergence after " +
                           std::to_string(max_sweeps) + " sweeps");

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymEig out;
  out.eigenvalues.resize(d);
  out.eigenvectors = Mat(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < d; ++r)
      out.eigenvectors(r, c) = v(r, order[c]);
  }
  fix_column_signs(out.eigenvectors);
  return out;
}

Vec tangent_project(const Vec& v, const Vec& y) {
  if (v.size() != y.size()) throw ShapeError("tangent_project: length mismatch");
  const double n = norm2(v);
  if (std::abs(n - 1.0) > 1e-8)
    throw DomainError("tangent_project: base point must be unit length, ||v|| = " +
                      std::to_string(n));
  Vec out = y;
  axpy(-dot(y, v), v, out);
  return out;
}

Vec retract(const Vec& v, const Vec& z) {
  if (v.size() != z.size()) throw ShapeError("retract: length mismatch");
  const double n = norm2(v);
  if (std::abs(n - 1.0) > 1e-8)
    throw DomainError("retract: base point must be unit length, ||v|| = " +
                      std::to_string(n));
  Vec out = v;
  axpy(1.0, z, out);
  const double m = norm2(out);
  if (m < 1e-300) throw DegenerateStepError("retract: step collapsed to zero");
  scale(out, 1.0 / m);
  return out;
}

Mat orthonormalize(const Mat& v) {
  Mat q = v;
  const std::size_t d = v.rows(), k = v.cols();
  if (k > d)
    throw RankError("orthonormalize: more columns than rows", d);
  for (std::size_t c = 0; c < k; ++c) {
    Vec col = q.col(c);
    const double original = norm2(col);
    // Two modified Gram-Schmidt passes for numerical orthogonality.
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < c; ++j) col_axpy(-col_dot(q, j, col), q, j, col);
    const double residual = norm2(col);
    if (!(original > 0.0) || residual <= 1e-10 * original)
      throw RankError("orthonormalize: column " + std::to_string(c) +
                          " is numerically dependent; rank " + std::to_string(c),
                      c);
    scale(col, 1.0 / residual);
    q.set_col(c, col);
  }
  return q;
}

Mat random_orthogonal(std::size_t d, std::uint64_t seed) {
  if (d < 1) throw ShapeError("random_orthogonal: d must be >= 1");
  Philox rng(seed);
  Mat g(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) g(r, c) = rng.next_normal();
  return orthonormalize(g);
}

}  // namespace eigengame
