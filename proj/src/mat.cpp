#include "eigengame/mat.hpp"

#include <cmath>
#include <string>

#include "eigengame/errors.hpp"

namespace eigengame {

Mat::Mat(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("matrix dimensions must be positive, got " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec Mat::col(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = data_[r * cols_ + c];
  return v;
}

void Mat::set_col(std::size_t c, const Vec& v) {
  if (v.size() != rows_) throw ShapeError("set_col: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) data_[r * cols_ + c] = v[r];
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

void axpy(double a, const Vec& x, Vec& y) {
  if (x.size() != y.size()) throw ShapeError("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale(Vec& v, double a) {
  for (double& x : v) x *= a;
}

Vec scaled(const Vec& v, double a) {
  Vec r = v;
  scale(r, a);
  return r;
}

double col_dot(const Mat& m, std::size_t c, const Vec& v) {
  if (v.size() != m.rows()) throw ShapeError("col_dot: length mismatch");
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, c) * v[r];
  return s;
}

void col_axpy(double a, const Mat& m, std::size_t c, Vec& y) {
  if (y.size() != m.rows()) throw ShapeError("col_axpy: length mismatch");
  for (std::size_t r = 0; r < m.rows(); ++r) y[r] += a * m(r, c);
}

Vec matvec(const Mat& a, const Vec& x) { return matvec_rows(a, 0, a.rows(), x); }

Vec matvec_t(const Mat& a, const Vec& x) { return matvec_t_rows(a, 0, a.rows(), x); }

Vec matvec_rows(const Mat& a, std::size_t r0, std::size_t r1, const Vec& x) {
  if (x.size() != a.cols()) throw ShapeError("matvec: length mismatch");
  if (r1 > a.rows() || r0 > r1) throw ShapeError("matvec: bad row range");
  Vec y(r1 - r0, 0.0);
  for (std::size_t r = r0; r < r1; ++r) {
    const double* row = a.row_ptr(r);
    double s = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) s += row[c] * x[c];
    y[r - r0] = s;
  }
  return y;
}

Vec matvec_t_rows(const Mat& a, std::size_t r0, std::size_t r1, const Vec& w) {
  if (w.size() != r1 - r0) throw ShapeError("matvec_t: length mismatch");
  if (r1 > a.rows() || r0 > r1) throw ShapeError("matvec_t: bad row range");
  Vec y(a.cols(), 0.0);
  for (std::size_t r = r0; r < r1; ++r) {
    const double* row = a.row_ptr(r);
    const double wr = w[r - r0];
    for (std::size_t c = 0; c < a.cols(); ++c) y[c] += wr * row[c];
  }
  return y;
}

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimension mismatch");
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Mat matmul_tn(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw ShapeError("matmul_tn: row count mismatch");
  Mat c(a.cols(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double ari = a(r, i);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ari * b(r, j);
    }
  return c;
}

double frob_norm(const Mat& m) {
  double s = 0.0;
  const double* p = m.data();
  for (std::size_t i = 0; i < m.rows() * m.cols(); ++i) s += p[i] * p[i];
  return std::sqrt(s);
}

double max_abs(const Mat& m) {
  double s = 0.0;
  const double* p = m.data();
  for (std::size_t i = 0; i < m.rows() * m.cols(); ++i)
    s = std::max(s, std::abs(p[i]));
  return s;
}

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const Mat& m) {
  const double* p = m.data();
  for (std::size_t i = 0; i < m.rows() * m.cols(); ++i)
    if (!std::isfinite(p[i])) return false;
  return true;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("max_abs_diff: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    s = std::max(s, std::abs(a.data()[i] - b.data()[i]));
  return s;
}

}  // namespace eigengame
