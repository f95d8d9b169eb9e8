#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "eigengame/linalg.hpp"
#include "eigengame/mat.hpp"
#include "eigengame/metrics.hpp"
#include "eigengame/solver.hpp"
#include "eigengame/updates.hpp"

namespace eigengame {

/// Directed edge list over nodes [0, num_nodes). Rows of the implied
/// incidence matrix carry +1 at the outgoing node and -1 at the incoming
/// node, so X^T X is the unnormalized graph Laplacian.
class EdgeList {
 public:
  explicit EdgeList(std::size_t num_nodes);

  void add(std::uint32_t out, std::uint32_t in);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const {
    return edges_;
  }

 private:
  std::size_t num_nodes_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
};

/// X v for the batch's incidence rows: one entry per edge, v(out) - v(in).
Vec incidence_apply(const EdgeList& batch, const Vec& v);

/// X^T w: scatter-adds w_e at out(e) and -w_e at in(e), sequentially, into a
/// zero vector over nodes. Composed with incidence_apply this is the batch
/// Laplacian product.
Vec incidence_t_apply(const EdgeList& batch, const Vec& w);

/// Dense Laplacian assembled from the full edge set (oracle-side helper).
Mat dense_laplacian(const EdgeList& edges);

enum class LambdaStarMode { fixed_2v, tracked_max };

std::string to_string(LambdaStarMode mode);
LambdaStarMode parse_lambda_star_mode(const std::string& name);

/// Running upper bound for the Laplacian's top eigenvalue, used as the
/// spectrum shift. Both modes keep the maximum Rayleigh estimate observed so
/// far and never decrease; fixed_2v additionally floors the bound at the
/// initial 2|V| (always safe), while tracked_max trusts the estimates once
/// one arrives (tighter shift, closer to streamed estimation).
class LambdaTracker {
 public:
  LambdaTracker(LambdaStarMode mode, std::size_t num_nodes);

  void observe(double rayleigh_estimate);
  double lambda_star() const;
  bool has_estimate() const { return seen_; }
  double estimate_max() const { return est_max_; }

 private:
  LambdaStarMode mode_;
  double init_bound_;
  double est_max_ = 0.0;
  bool seen_ = false;
};

/// Direction and top-eigenvalue estimate for the tracking player, computed
/// from one edge batch. `scale` is the per-batch Laplacian scaling (full
/// edge count over batch size) that keeps sampled estimates unbiased.
struct LeaderDirection {
  Vec dir;
  double estimate;
};
LeaderDirection graph_leader_direction(const EdgeList& batch, const Vec& v1,
                                       double batch_scale);

/// Shifted-spectrum direction for player i > 1; parents run over
/// 2 <= j < i (the tracking player is not a parent).
Vec graph_follower_direction(const EdgeList& batch, const EigenState& state,
                             int player, double lambda_star,
                             double batch_scale);

/// Per-player direction for the shifted Laplacian game. Player 1 performs
/// power iteration on the Laplacian and feeds the tracker; later players
/// chase the top of lambda* I - L. The tracker is read before it is updated,
/// so a full sweep i = 1..k+1 sees one consistent shift.
Vec graph_update(const EdgeList& batch, const EigenState& state, int player,
                 LambdaTracker& tracker, double batch_scale = 1.0);

struct GraphConfig {
  SolverConfig base;  // base.k = number of reported eigenvectors
  LambdaStarMode lambda_star_mode = LambdaStarMode::fixed_2v;
};

struct GraphRunResult {
  Mat vectors;  // |V| x k, ascending Laplacian eigenvalue order
  MetricTrace trace;
};

/// Streamed bottom-k Laplacian eigenvectors. Maintains k+1 unit vectors
/// (one extra to track the top eigenvalue), draws per-shard edge minibatches
/// of size n'/M (batch_size 0 streams the full edge set, split contiguously),
/// and returns the k learned vectors in ascending eigenvalue order.
/// `laplacian_truth` is the dense-oracle decomposition of L (descending) and
/// enables the trace metrics.
GraphRunResult run_graph(const GraphConfig& config, const EdgeList& edges,
                         const SymEig* laplacian_truth = nullptr);

}  // namespace eigengame
