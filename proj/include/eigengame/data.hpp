#pragma once

#include <cstdint>
#include <memory>

#include "eigengame/linalg.hpp"
#include "eigengame/mat.hpp"
#include "eigengame/rng.hpp"

namespace eigengame {

enum class SpectrumKind { exponential, linear };

/// Parametric family of strictly positive, strictly decreasing eigenvalue
/// sequences used to build synthetic covariances.
struct Spectrum {
  SpectrumKind kind = SpectrumKind::exponential;
  std::size_t d = 0;
  double lambda1 = 1.0;
  double ratio = 0.9;     // exponential: lambda_i = lambda1 * ratio^(i-1)
  double lambda_d = 0.0;  // linear: arithmetic decay from lambda1 to lambda_d

  static Spectrum exponential(std::size_t d, double lambda1, double ratio);
  static Spectrum linear(std::size_t d, double lambda1, double lambda_d);

  /// Materialized eigenvalues, validated (throws ConfigError).
  Vec eigenvalues() const;
};

struct SynthCovariance {
  Mat sigma;    // Q diag(L) Q^T, symmetrized exactly
  SymEig truth;  // the Q and L that built it, in oracle conventions
};

/// Covariance with a known spectrum: rotates diag(spectrum) by a seeded
/// random orthogonal matrix.
SynthCovariance synth_covariance(const Spectrum& spec, std::uint64_t seed);
/// Same, with the rotation supplied by the caller (test hook).
SynthCovariance synth_covariance(const Spectrum& spec, const Mat& q);

/// Sample source: either an explicit n x d row matrix, or a Gaussian
/// generator colored to a target covariance.
class Dataset {
 public:
  static Dataset from_rows(Mat rows);
  /// Draws rows as Sigma^{1/2} g with g standard normal; Sigma^{1/2} is
  /// rebuilt from the decomposition's eigenbasis.
  static Dataset gaussian(const SymEig& covariance_truth);

  bool has_rows() const { return has_rows_; }
  const Mat& rows() const;
  std::size_t dim() const;

 private:
  Dataset() = default;
  bool has_rows_ = false;
  Mat rows_;
  Mat sqrt_sigma_;
  friend Mat sample_batch(const Dataset&, std::size_t, Philox&, bool);
};

/// Draws an n x d minibatch. Matrix datasets sample rows uniformly with
/// replacement; Gaussian datasets draw fresh colored samples. When
/// `sequential_full` is set (matrix datasets only, n equal to the row
/// count), the dataset matrix itself is returned in order — the exact
/// full-batch mode.
Mat sample_batch(const Dataset& ds, std::size_t n, Philox& rng,
                 bool sequential_full = false);

/// What a solver run draws covariance estimates from: an explicit symmetric
/// matrix (exact, full-batch) or a row-sampled dataset. Graph edge streams
/// are the third source family; they are handled by the graph runner, which
/// realizes the same matrix-vector products through incidence operators.
class CovarianceSource {
 public:
  static CovarianceSource explicit_sigma(Mat sigma);
  static CovarianceSource row_dataset(Dataset dataset);

  bool is_sigma() const { return sigma_ != nullptr; }
  const Mat& sigma() const;
  const Dataset& dataset() const;
  std::size_t dim() const;

 private:
  CovarianceSource() = default;
  std::shared_ptr<const Mat> sigma_;
  std::shared_ptr<const Dataset> dataset_;
};

}  // namespace eigengame
