#pragma once

#include <cstddef>
#include <vector>

namespace eigengame {

using Vec = std::vector<double>;

/// Dense row-major matrix of doubles.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0);
  static Mat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const double* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

  Vec col(std::size_t c) const;
  void set_col(std::size_t c, const Vec& v);
  Mat transposed() const;

  bool operator==(const Mat& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& v);
/// y += a * x
void axpy(double a, const Vec& x, Vec& y);
void scale(Vec& v, double a);
Vec scaled(const Vec& v, double a);

/// <m[:,c], v>
double col_dot(const Mat& m, std::size_t c, const Vec& v);
/// y += a * m[:,c]
void col_axpy(double a, const Mat& m, std::size_t c, Vec& y);

/// A x
Vec matvec(const Mat& a, const Vec& x);
/// A^T x
Vec matvec_t(const Mat& a, const Vec& x);
/// A x restricted to rows [r0, r1); result has r1 - r0 entries.
Vec matvec_rows(const Mat& a, std::size_t r0, std::size_t r1, const Vec& x);
/// A^T w where w indexes rows [r0, r1) of A; result has cols(A) entries.
Vec matvec_t_rows(const Mat& a, std::size_t r0, std::size_t r1, const Vec& w);

Mat matmul(const Mat& a, const Mat& b);
/// A^T B
Mat matmul_tn(const Mat& a, const Mat& b);

double frob_norm(const Mat& m);
double max_abs(const Mat& m);
bool all_finite(const Vec& v);
bool all_finite(const Mat& m);

/// max_ij |A_ij - B_ij| over same-shape matrices.
double max_abs_diff(const Mat& a, const Mat& b);

}  // namespace eigengame
