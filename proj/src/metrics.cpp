#include "eigengame/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eigengame/errors.hpp"
#include "eigengame/linalg.hpp"
#include "eigengame/rng.hpp"

namespace eigengame {

double angular_error(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw ShapeError("angular_error: length mismatch");
  const double nu = norm2(u), nv = norm2(v);
  if (nu == 0.0 || nv == 0.0)
    throw DomainError("angular_error: zero vector");
  const double c = std::clamp(std::abs(dot(u, v)) / (nu * nv), 0.0, 1.0);
  return std::acos(c);
}

int longest_streak(const Mat& v_hat, const Mat& v_true, double theta) {
  if (v_hat.rows() != v_true.rows() || v_hat.cols() != v_true.cols())
    throw ShapeError("longest_streak: shape mismatch");
  int streak = 0;
  for (std::size_t c = 0; c < v_hat.cols(); ++c) {
    if (angular_error(v_hat.col(c), v_true.col(c)) < theta)
      ++streak;
    else
      break;
  }
  return streak;
}

double subspace_distance(const Mat& v_hat, const Mat& v_true, std::size_t k) {
  if (v_hat.cols() != k || v_true.cols() != k)
    throw ShapeError("subspace_distance: expected " + std::to_string(k) +
                     " columns");
  if (v_hat.rows() != v_true.rows())
    throw ShapeError("subspace_distance: row count mismatch");
  // Orthonormal bases make both projectors Q Q^T, so the trace reduces to
  // the squared Frobenius norm of the k x k overlap.
  const Mat qt = orthonormalize(v_true);
  const Mat qh = orthonormalize(v_hat);
  const Mat overlap = matmul_tn(qt, qh);
  double tr = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) tr += overlap(i, j) * overlap(i, j);
  return 1.0 - tr / static_cast<double>(k);
}

namespace {

double sq_dist(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

struct LloydOutcome {
  std::vector<int> assign;
  Mat centers;
  double wcss = 0.0;
};

LloydOutcome run_lloyd(const Mat& points, int c, Philox& rng, int max_iters) {
  const std::size_t n = points.rows(), d = points.cols();

  // k-means++ seeding.
  Mat centers(static_cast<std::size_t>(c), d);
  std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
  {
    const std::size_t first = rng.next_index(n);
    for (std::size_t j = 0; j < d; ++j) centers(0, j) = points(first, j);
    for (int picked = 1; picked < c; ++picked) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        min_d2[i] = std::min(
            min_d2[i], sq_dist(points.row_ptr(i), centers.row_ptr(picked - 1), d));
        total += min_d2[i];
      }
      std::size_t pick = 0;
      if (total > 0.0) {
        const double target = rng.next_double() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          acc += min_d2[i];
          if (acc >= target) {
            pick = i;
            break;
          }
          pick = i;
        }
      } else {
        pick = rng.next_index(n);
      }
      for (std::size_t j = 0; j < d; ++j)
        centers(static_cast<std::size_t>(picked), j) = points(pick, j);
    }
  }

  std::vector<int> assign(n, 0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(c), 0);
  double wcss = 0.0;
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int j = 0; j < c; ++j) {
        const double dj =
            sq_dist(points.row_ptr(i), centers.row_ptr(static_cast<std::size_t>(j)), d);
        if (dj < best_d) {
          best_d = dj;
          best = j;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
      wcss += best_d;
    }
    if (!changed && iter > 0) break;

    centers = Mat(static_cast<std::size_t>(c), d);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int j = assign[i];
      ++counts[static_cast<std::size_t>(j)];
      for (std::size_t col = 0; col < d; ++col)
        centers(static_cast<std::size_t>(j), col) += points(i, col);
    }
    for (int j = 0; j < c; ++j) {
      if (counts[static_cast<std::size_t>(j)] == 0) {
        // Re-seed an empty cluster to the point farthest from its center.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const int a = assign[i];
          if (counts[static_cast<std::size_t>(a)] <= 1) continue;
          const double di = sq_dist(points.row_ptr(i),
                                    centers.row_ptr(static_cast<std::size_t>(a)), d);
          if (di > far_d) {
            far_d = di;
            far = i;
          }
        }
        for (std::size_t col = 0; col < d; ++col)
          centers(static_cast<std::size_t>(j), col) = points(far, col);
        continue;
      }
      const double inv = 1.0 / static_cast<double>(counts[static_cast<std::size_t>(j)]);
      for (std::size_t col = 0; col < d; ++col)
        centers(static_cast<std::size_t>(j), col) *= inv;
    }
  }

  // Final pass so wcss matches the returned centers/assignment.
  wcss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < c; ++j) {
      const double dj =
          sq_dist(points.row_ptr(i), centers.row_ptr(static_cast<std::size_t>(j)), d);
      if (dj < best_d) {
        best_d = dj;
        best = j;
      }
    }
    assign[i] = best;
    wcss += best_d;
  }
  return {std::move(assign), std::move(centers), wcss};
}

}  // namespace

KMeansResult kmeans(const Mat& points, int clusters, std::uint64_t seed,
                    int max_iters, int restarts) {
  if (clusters < 1) throw ConfigError("kmeans: need at least one cluster");
  if (static_cast<std::size_t>(clusters) > points.rows())
    throw ConfigError("kmeans: more clusters than points");
  Philox master(seed);
  LloydOutcome best;
  best.wcss = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Philox rng = master.split(static_cast<std::uint64_t>(r));
    LloydOutcome out = run_lloyd(points, clusters, rng, max_iters);
    if (out.wcss < best.wcss) best = std::move(out);
  }
  KMeansResult result;
  result.labeling.assignments = std::move(best.assign);
  result.labeling.num_clusters = clusters;
  result.centers = std::move(best.centers);
  result.wcss = best.wcss;
  return result;
}

double v_measure(const Labeling& truth, const Labeling& pred) {
  const std::size_t n = truth.assignments.size();
  if (n != pred.assignments.size())
    throw ShapeError("v_measure: labelings cover different sample counts");
  if (n == 0) throw ShapeError("v_measure: empty labelings");

  int ct = 0, cp = 0;
  for (int a : truth.assignments) ct = std::max(ct, a + 1);
  for (int a : pred.assignments) cp = std::max(cp, a + 1);

  // Contingency counts.
  std::vector<double> joint(static_cast<std::size_t>(ct) * cp, 0.0);
  std::vector<double> row(static_cast<std::size_t>(ct), 0.0);
  std::vector<double> colsum(static_cast<std::size_t>(cp), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int a = truth.assignments[i], b = pred.assignments[i];
    if (a < 0 || b < 0) throw DomainError("v_measure: negative label");
    joint[static_cast<std::size_t>(a) * cp + b] += 1.0;
    row[static_cast<std::size_t>(a)] += 1.0;
    colsum[static_cast<std::size_t>(b)] += 1.0;
  }
  const double total = static_cast<double>(n);

  auto entropy = [&](const std::vector<double>& counts) {
    double h = 0.0;
    for (double cnt : counts)
      if (cnt > 0.0) h -= (cnt / total) * std::log(cnt / total);
    return h;
  };
  const double h_truth = entropy(row);
  const double h_pred = entropy(colsum);

  double h_truth_given_pred = 0.0;
  double h_pred_given_truth = 0.0;
  for (int a = 0; a < ct; ++a)
    for (int b = 0; b < cp; ++b) {
      const double nij = joint[static_cast<std::size_t>(a) * cp + b];
      if (nij == 0.0) continue;
      h_truth_given_pred -=
          (nij / total) * std::log(nij / colsum[static_cast<std::size_t>(b)]);
      h_pred_given_truth -=
          (nij / total) * std::log(nij / row[static_cast<std::size_t>(a)]);
    }

  const double homogeneity = h_truth == 0.0 ? 1.0 : 1.0 - h_truth_given_pred / h_truth;
  const double completeness = h_pred == 0.0 ? 1.0 : 1.0 - h_pred_given_truth / h_pred;
  if (homogeneity + completeness == 0.0) return 0.0;
  return 2.0 * homogeneity * completeness / (homogeneity + completeness);
}

}  // namespace eigengame
