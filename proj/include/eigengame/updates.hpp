#pragma once

#include <string>

#include "eigengame/mat.hpp"

namespace eigengame {

enum class Constraint { unit_sphere, unit_ball };

/// The per-player update direction family.
enum class UpdateRule { mu, alpha, gha, mu_grad };

std::string to_string(UpdateRule rule);
UpdateRule parse_update_rule(const std::string& name);

/// The k candidate eigenvectors, one per column of a d x k matrix, plus the
/// norm constraint they live under.
struct EigenState {
  Mat vectors;  // column i holds candidate i
  Constraint constraint = Constraint::unit_sphere;

  std::size_t dim() const { return vectors.rows(); }
  std::size_t k() const { return vectors.cols(); }
  /// Enforces the column-norm invariant (throws DomainError).
  void validate() const;
};

/// Read-only view of a covariance estimate: either an explicit symmetric
/// matrix, or a sample block X whose rows induce X^T X / n. The batch form
/// never materializes the d x d matrix.
class CovView {
 public:
  enum class Kind { sigma, batch };

  static CovView from_sigma(const Mat& sigma);
  /// Whole matrix as one batch.
  static CovView from_batch(const Mat& x);
  /// Contiguous row range [r0, r1) of a batch (a data shard).
  static CovView from_batch_rows(const Mat& x, std::size_t r0, std::size_t r1);

  Kind kind() const { return kind_; }
  std::size_t dim() const;
  /// Number of sample rows backing a batch view (0 for explicit sigma).
  std::size_t samples() const;

  /// Sigma v.
  Vec apply(const Vec& v) const;
  /// Batch only: X v over the view's rows.
  Vec half_apply(const Vec& v) const;
  /// Batch only: X^T w / n, mapping row space back to feature space.
  Vec lift(const Vec& w) const;
  /// Batch only: <a, b> / n for row-space vectors a, b.
  double inner(const Vec& a, const Vec& b) const;

 private:
  CovView() = default;
  Kind kind_ = Kind::sigma;
  const Mat* mat_ = nullptr;
  std::size_t row_begin_ = 0;
  std::size_t row_end_ = 0;
};

/// Guard threshold below which a penalty denominator counts as singular.
inline constexpr double kDenominatorGuard = 1e-12;

/// Update direction that is linear in the covariance:
///   Sigma v_i - sum_{j<i} (v_i^T Sigma v_j) v_j.
/// Sample estimates of it average without bias, so it decomposes exactly
/// over data shards.
Vec mu_update(const CovView& cov, const EigenState& state, int player);

/// Ratio-penalty update:
///   Sigma v_i - sum_{j<i} (v_i^T Sigma v_j / v_j^T Sigma v_j) Sigma v_j.
/// On a batch the same sample estimate feeds numerator, denominator, and
/// direction, which is what makes minibatch estimates of it biased.
/// Throws SingularPenaltyError when a denominator falls under the guard.
Vec alpha_update(const CovView& cov, const EigenState& state, int player);

/// Hebbian variant: penalties run over j <= i (the self term included).
Vec gha_update(const CovView& cov, const EigenState& state, int player);

/// True gradient of the deflated quadratic form (up to the customary 1/2
/// scaling absorbed by the step size):
///   Sigma v_i - 1/2 sum_{j<i} [(v_i^T Sigma v_j) v_j + (v_i^T v_j) Sigma v_j].
Vec mu_grad_update(const CovView& cov, const EigenState& state, int player);

/// Variance captured minus the ratio-form orthogonality penalties.
double alpha_utility(const CovView& cov, const EigenState& state, int player);

/// Deflated Rayleigh value v_i^T [I - sum_{j<i} v_j v_j^T] Sigma v_i.
double mu_utility(const CovView& cov, const EigenState& state, int player);

}  // namespace eigengame
