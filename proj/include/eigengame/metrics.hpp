#pragma once

#include <cstdint>
#include <vector>

#include "eigengame/mat.hpp"

namespace eigengame {

/// One evaluation record emitted by a run.
struct MetricRow {
  long iteration = 0;
  double wall_ms = 0.0;
  int streak = -1;                 // -1 when no ground truth was supplied
  double subspace_distance = 0.0;  // NaN when no ground truth was supplied
  std::vector<double> utilities;   // one per player; NaN where evaluation failed
  int skipped_players = 0;         // player-steps skipped since the previous row
  bool has_truth = false;
};

struct MetricTrace {
  std::size_t k = 0;
  std::vector<MetricRow> rows;
};

/// Cluster assignment over samples.
struct Labeling {
  std::vector<int> assignments;
  int num_clusters = 0;
};

/// Sign-invariant angle between the lines spanned by u and v, in [0, pi/2].
double angular_error(const Vec& u, const Vec& v);

/// Largest m such that column i of v_hat is within angle theta of column i
/// of v_true for every i <= m (prefix semantics).
int longest_streak(const Mat& v_hat, const Mat& v_true, double theta);

/// Normalized distance between the spans of the two column sets:
/// 1 - Tr(P_true P_hat) / k, computed through orthonormalized bases.
double subspace_distance(const Mat& v_hat, const Mat& v_true, std::size_t k);

struct KMeansResult {
  Labeling labeling;
  Mat centers;  // c x dim
  double wcss = 0.0;
};

/// Lloyd iterations with k-means++ seeding, best of `restarts` by
/// within-cluster sum of squares. Deterministic per seed; empty clusters are
/// re-seeded to the point farthest from its assigned center.
KMeansResult kmeans(const Mat& points, int clusters, std::uint64_t seed,
                    int max_iters = 100, int restarts = 10);

/// Harmonic mean of homogeneity and completeness from the contingency table
/// of two labelings (natural-log entropies).
double v_measure(const Labeling& truth, const Labeling& pred);

}  // namespace eigengame
