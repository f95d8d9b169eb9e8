#include "eigengame/data.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "eigengame/errors.hpp"

namespace eigengame {

Spectrum Spectrum::exponential(std::size_t d, double lambda1, double ratio) {
  Spectrum s;
  s.kind = SpectrumKind::exponential;
  s.d = d;
  s.lambda1 = lambda1;
  s.ratio = ratio;
  return s;
}

Spectrum Spectrum::linear(std::size_t d, double lambda1, double lambda_d) {
  Spectrum s;
  s.kind = SpectrumKind::linear;
  s.d = d;
  s.lambda1 = lambda1;
  s.lambda_d = lambda_d;
  return s;
}

Vec Spectrum::eigenvalues() const {
  if (d < 1) throw ConfigError("spectrum: d must be >= 1");
  if (!(lambda1 > 0.0)) throw ConfigError("spectrum: lambda1 must be positive");
  Vec values(d);
  if (kind == SpectrumKind::exponential) {
    if (!(ratio > 0.0 && ratio < 1.0))
      throw ConfigError("spectrum: ratio must lie in (0, 1)");
    double v = lambda1;
    for (std::size_t i = 0; i < d; ++i) {
      values[i] = v;
      v *= ratio;
    }
  } else {
    if (d == 1) {
      values[0] = lambda1;
    } else {
      if (!(lambda_d > 0.0 && lambda_d < lambda1))
        throw ConfigError(
            "spectrum: linear decay needs 0 < lambda_d < lambda1");
      const double step = (lambda1 - lambda_d) / static_cast<double>(d - 1);
      for (std::size_t i = 0; i < d; ++i)
        values[i] = lambda1 - static_cast<double>(i) * step;
    }
  }
  for (std::size_t i = 0; i + 1 < d; ++i)
    if (!(values[i] > values[i + 1]))
      throw ConfigError("spectrum: eigenvalues must be strictly decreasing");
  if (!(values[d - 1] > 0.0))
    throw ConfigError("spectrum: eigenvalues must be strictly positive");
  return values;
}

namespace {

SynthCovariance assemble(const Vec& lambda, const Mat& q) {
  const std::size_t d = lambda.size();
  if (q.rows() != d || q.cols() != d)
    throw ShapeError("synth_covariance: rotation must be d x d");
  // Q diag(L) Q^T, then exact symmetrization of the float result.
  Mat ql(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) ql(r, c) = q(r, c) * lambda[c];
  Mat sigma = matmul(ql, q.transposed());
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r + 1; c < d; ++c) {
      const double m = 0.5 * (sigma(r, c) + sigma(c, r));
      sigma(r, c) = m;
      sigma(c, r) = m;
    }
  SynthCovariance out;
  out.sigma = std::move(sigma);
  out.truth.eigenvalues = lambda;
  out.truth.eigenvectors = q;
  return out;
}

}  // namespace

SynthCovariance synth_covariance(const Spectrum& spec, std::uint64_t seed) {
  return assemble(spec.eigenvalues(), random_orthogonal(spec.d, seed));
}

SynthCovariance synth_covariance(const Spectrum& spec, const Mat& q) {
  return assemble(spec.eigenvalues(), q);
}

Dataset Dataset::from_rows(Mat rows) {
  if (rows.rows() == 0) throw ConfigError("dataset: empty row matrix");
  Dataset d;
  d.has_rows_ = true;
  d.rows_ = std::move(rows);
  return d;
}

Dataset Dataset::gaussian(const SymEig& covariance_truth) {
  const std::size_t d = covariance_truth.eigenvectors.rows();
  if (covariance_truth.eigenvalues.size() != d ||
      covariance_truth.eigenvectors.cols() != d)
    throw ShapeError("dataset: need a full eigendecomposition");
  // Sigma^{1/2} = Q diag(sqrt(lambda)) Q^T
  Mat qs(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const double l = covariance_truth.eigenvalues[c];
      if (l < 0.0)
        throw DomainError("dataset: covariance must be positive semidefinite");
      qs(r, c) = covariance_truth.eigenvectors(r, c) * std::sqrt(l);
    }
  Dataset out;
  out.has_rows_ = false;
  out.sqrt_sigma_ = matmul(qs, covariance_truth.eigenvectors.transposed());
  return out;
}

const Mat& Dataset::rows() const {
  if (!has_rows_) throw ConfigError("dataset: generator datasets have no rows");
  return rows_;
}

std::size_t Dataset::dim() const {
  return has_rows_ ? rows_.cols() : sqrt_sigma_.cols();
}

Mat sample_batch(const Dataset& ds, std::size_t n, Philox& rng,
                 bool sequential_full) {
  if (n < 1) throw ConfigError("sample_batch: batch size must be >= 1");
  const std::size_t d = ds.dim();
  if (sequential_full) {
    if (!ds.has_rows_ || n != ds.rows_.rows())
      throw ConfigError(
          "sample_batch: sequential mode requires a matrix dataset and the "
          "full row count");
    return ds.rows_;
  }
  Mat batch(n, d);
  if (ds.has_rows_) {
    const std::size_t total = ds.rows_.rows();
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t pick = rng.next_index(total);
      const double* src = ds.rows_.row_ptr(pick);
      for (std::size_t c = 0; c < d; ++c) batch(r, c) = src[c];
    }
    return batch;
  }
  Vec g(d);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) g[c] = rng.next_normal();
    const Vec row = matvec(ds.sqrt_sigma_, g);
    for (std::size_t c = 0; c < d; ++c) batch(r, c) = row[c];
  }
  return batch;
}

CovarianceSource CovarianceSource::explicit_sigma(Mat sigma) {
  if (sigma.rows() != sigma.cols())
    throw ShapeError("covariance source: sigma must be square");
  CovarianceSource s;
  s.sigma_ = std::make_shared<const Mat>(std::move(sigma));
  return s;
}

CovarianceSource CovarianceSource::row_dataset(Dataset dataset) {
  CovarianceSource s;
  s.dataset_ = std::make_shared<const Dataset>(std::move(dataset));
  return s;
}

const Mat& CovarianceSource::sigma() const {
  if (!sigma_) throw ConfigError("covariance source: no explicit sigma");
  return *sigma_;
}

const Dataset& CovarianceSource::dataset() const {
  if (!dataset_) throw ConfigError("covariance source: no dataset");
  return *dataset_;
}

std::size_t CovarianceSource::dim() const {
  return sigma_ ? sigma_->cols() : dataset_->dim();
}

}  // namespace eigengame
