#include "eigengame/graph.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "eigengame/errors.hpp"
#include "eigengame/rng.hpp"

namespace eigengame {

namespace {

constexpr std::uint64_t kEdgeStreamBase = 100;
constexpr double kStreakTheta = 0.39269908169872414;  // pi/8

}  // namespace

EdgeList::EdgeList(std::size_t num_nodes) : num_nodes_(num_nodes) {
  if (num_nodes < 1) throw ConfigError("edge list: need at least one node");
}

void EdgeList::add(std::uint32_t out, std::uint32_t in) {
  if (out == in)
    throw DomainError("edge list: self-loop at node " + std::to_string(out));
  if (out >= num_nodes_ || in >= num_nodes_)
    throw IndexError("edge list: node id out of range (" + std::to_string(out) +
                     ", " + std::to_string(in) + ") with " +
                     std::to_string(num_nodes_) + " nodes");
  edges_.emplace_back(out, in);
}

Vec incidence_apply(const EdgeList& batch, const Vec& v) {
  if (v.size() != batch.num_nodes())
    throw ShapeError("incidence_apply: vector length must equal node count");
  Vec w(batch.size());
  const auto& e = batch.edges();
  for (std::size_t i = 0; i < e.size(); ++i)
    w[i] = v[e[i].first] - v[e[i].second];
  return w;
}

Vec incidence_t_apply(const EdgeList& batch, const Vec& w) {
  if (w.size() != batch.size())
    throw ShapeError("incidence_t_apply: weight length must equal edge count");
  Vec y(batch.num_nodes(), 0.0);
  const auto& e = batch.edges();
  for (std::size_t i = 0; i < e.size(); ++i) {
    y[e[i].first] += w[i];
    y[e[i].second] -= w[i];
  }
  return y;
}

Mat dense_laplacian(const EdgeList& edges) {
  Mat l(edges.num_nodes(), edges.num_nodes());
  for (const auto& [out, in] : edges.edges()) {
    l(out, out) += 1.0;
    l(in, in) += 1.0;
    l(out, in) -= 1.0;
    l(in, out) -= 1.0;
  }
  return l;
}

std::string to_string(LambdaStarMode mode) {
  return mode == LambdaStarMode::fixed_2v ? "fixed2v" : "tracked";
}

LambdaStarMode parse_lambda_star_mode(const std::string& name) {
  if (name == "fixed2v" || name == "fixed_2v") return LambdaStarMode::fixed_2v;
  if (name == "tracked" || name == "tracked_max")
    return LambdaStarMode::tracked_max;
  throw ConfigError("unknown lambda-star mode '" + name + "'");
}

LambdaTracker::LambdaTracker(LambdaStarMode mode, std::size_t num_nodes)
    : mode_(mode), init_bound_(2.0 * static_cast<double>(num_nodes)) {
  if (num_nodes < 1)
    throw ConfigError("lambda tracker: node count must be positive");
}

void LambdaTracker::observe(double rayleigh_estimate) {
  if (!std::isfinite(rayleigh_estimate) || rayleigh_estimate < 0.0)
    throw DomainError("lambda tracker: estimate must be finite and >= 0");
  est_max_ = seen_ ? std::max(est_max_, rayleigh_estimate) : rayleigh_estimate;
  seen_ = true;
}

double LambdaTracker::lambda_star() const {
  if (mode_ == LambdaStarMode::fixed_2v)
    return seen_ ? std::max(init_bound_, est_max_) : init_bound_;
  return seen_ ? est_max_ : init_bound_;
}

LeaderDirection graph_leader_direction(const EdgeList& batch, const Vec& v1,
                                       double batch_scale) {
  Vec xv = incidence_apply(batch, v1);
  const double estimate = batch_scale * dot(xv, xv);
  Vec dir = incidence_t_apply(batch, xv);
  scale(dir, batch_scale);
  return {std::move(dir), estimate};
}

Vec graph_follower_direction(const EdgeList& batch, const EigenState& state,
                             int player, double lambda_star,
                             double batch_scale) {
  if (player < 2 || static_cast<std::size_t>(player) > state.k())
    throw IndexError("graph follower: player index " + std::to_string(player) +
                     " out of range 2.." + std::to_string(state.k()));
  if (!(lambda_star > 0.0))
    throw ConfigError("graph follower: lambda* must be positive");
  const Mat& v = state.vectors;
  const Vec vi = v.col(static_cast<std::size_t>(player - 1));

  // Scaled batch Laplacian product L vi.
  Vec lv = incidence_t_apply(batch, incidence_apply(batch, vi));
  scale(lv, batch_scale);

  // lambda* (vi - sum (vi.vj) vj) - (L vi - sum (vj.L vi) vj), parents 2<=j<i.
  Vec dir = vi;
  for (int j = 1; j < player - 1; ++j)
    col_axpy(-col_dot(v, static_cast<std::size_t>(j), vi), v,
             static_cast<std::size_t>(j), dir);
  scale(dir, lambda_star);
  axpy(-1.0, lv, dir);
  for (int j = 1; j < player - 1; ++j)
    col_axpy(col_dot(v, static_cast<std::size_t>(j), lv), v,
             static_cast<std::size_t>(j), dir);
  return dir;
}

Vec graph_update(const EdgeList& batch, const EigenState& state, int player,
                 LambdaTracker& tracker, double batch_scale) {
  if (player < 1 || static_cast<std::size_t>(player) > state.k())
    throw IndexError("graph_update: player index out of range");
  if (!(tracker.lambda_star() > 0.0))
    throw ConfigError("graph_update: lambda* must be positive");
  if (player == 1) {
    LeaderDirection lead =
        graph_leader_direction(batch, state.vectors.col(0), batch_scale);
    tracker.observe(lead.estimate);
    return std::move(lead.dir);
  }
  return graph_follower_direction(batch, state, player, tracker.lambda_star(),
                                  batch_scale);
}

GraphRunResult run_graph(const GraphConfig& config, const EdgeList& edges,
                         const SymEig* laplacian_truth) {
  const std::size_t num_nodes = edges.num_nodes();
  const long k = config.base.k;
  if (k == 0) return {};  // nothing asked for, nothing to iterate
  if (k < 0 || static_cast<std::size_t>(k) + 1 > num_nodes)
    throw ConfigError("run_graph: need k <= |V| - 1");
  if (edges.size() == 0) throw ConfigError("run_graph: empty edge list");
  if (laplacian_truth && laplacian_truth->eigenvectors.rows() != num_nodes)
    throw ShapeError("run_graph: ground truth dimension mismatch");

  SolverConfig base = config.base;
  base.k = static_cast<int>(k) + 1;  // extra player tracks the top eigenvalue
  base.validate();
  if (base.rule != UpdateRule::mu)
    throw ConfigError("run_graph: the streamed Laplacian update is mu-only");

  const std::size_t total_edges = edges.size();
  const std::size_t shards = static_cast<std::size_t>(base.shards);
  std::size_t batch_edges = 0;  // n' per iteration
  bool sequential_full = false;
  if (base.batch_size == 0) {
    batch_edges = total_edges;
    sequential_full = true;
  } else {
    batch_edges = static_cast<std::size_t>(base.batch_size);
  }
  if (batch_edges % shards != 0)
    throw ConfigError("run_graph: shards must divide the edge batch size");
  const std::size_t per_shard = batch_edges / shards;
  if (sequential_full && per_shard == 0)
    throw ConfigError("run_graph: more shards than edges");

  EigenState state = init_state(num_nodes, static_cast<std::size_t>(base.k),
                                base.seed, Constraint::unit_sphere);
  OptState opt(num_nodes, static_cast<std::size_t>(base.k));
  LambdaTracker tracker(config.lambda_star_mode, num_nodes);
  const int threads = resolve_threads(base.threads);

  std::vector<Philox> shard_rngs;
  for (std::size_t m = 0; m < shards; ++m)
    shard_rngs.push_back(Philox(base.seed).split(kEdgeStreamBase + m));

  // Ascending-order ground truth basis: the k smallest-eigenvalue columns.
  Mat truth_k;
  if (laplacian_truth) {
    truth_k = Mat(num_nodes, static_cast<std::size_t>(k));
    const std::size_t d = num_nodes;
    for (long c = 0; c < k; ++c)
      for (std::size_t r = 0; r < d; ++r)
        truth_k(r, static_cast<std::size_t>(c)) =
            laplacian_truth->eigenvectors(r, d - 1 - static_cast<std::size_t>(c));
  }

  MetricTrace trace;
  trace.k = static_cast<std::size_t>(k);
  const auto t_start = std::chrono::steady_clock::now();

  std::vector<EdgeList> batches;
  std::vector<Vec> dirs;
  std::vector<Vec> player_dirs(shards);
  std::vector<double> estimates(shards, 0.0);
  std::vector<std::size_t> sizes(shards, per_shard);

  for (long t = 1; t <= base.steps; ++t) {
    batches.clear();
    if (sequential_full) {
      for (std::size_t m = 0; m < shards; ++m) {
        EdgeList b(num_nodes);
        for (std::size_t e = m * per_shard; e < (m + 1) * per_shard; ++e)
          b.add(edges.edges()[e].first, edges.edges()[e].second);
        batches.push_back(std::move(b));
      }
    } else {
      for (std::size_t m = 0; m < shards; ++m) {
        EdgeList b(num_nodes);
        for (std::size_t e = 0; e < per_shard; ++e) {
          const std::size_t pick = shard_rngs[m].next_index(total_edges);
          b.add(edges.edges()[pick].first, edges.edges()[pick].second);
        }
        batches.push_back(std::move(b));
      }
    }
    const double scale_factor = static_cast<double>(total_edges) /
                                static_cast<double>(per_shard);

    const EigenState snapshot = state;
    const double shift = tracker.lambda_star();  // one shift per sweep
    const std::size_t players = static_cast<std::size_t>(base.k);
    dirs.assign(shards * players, Vec());
    std::exception_ptr failure = nullptr;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) num_threads(threads) \
    if (threads > 1)
#endif
    for (std::int64_t m = 0; m < static_cast<std::int64_t>(shards); ++m) {
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(players); ++i) {
        try {
          const std::size_t mm = static_cast<std::size_t>(m);
          if (i == 0) {
            LeaderDirection lead = graph_leader_direction(
                batches[mm], snapshot.vectors.col(0), scale_factor);
            estimates[mm] = lead.estimate;
            dirs[mm * players] = std::move(lead.dir);
          } else {
            dirs[mm * players + static_cast<std::size_t>(i)] =
                graph_follower_direction(batches[mm], snapshot,
                                         static_cast<int>(i) + 1, shift,
                                         scale_factor);
          }
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
          if (!failure) failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);

    const double eta = step_size(base.schedule, base.lr, t);
    for (std::size_t i = 0; i < players; ++i) {
      for (std::size_t m = 0; m < shards; ++m)
        player_dirs[m] = std::move(dirs[m * players + i]);
      const Vec agg = aggregate_shards(player_dirs, sizes);
      Vec mom = opt.momentum.col(i);
      const Vec updated = apply_update(snapshot.vectors.col(i), agg, eta, mom,
                                       base, Constraint::unit_sphere);
      opt.momentum.set_col(i, mom);
      state.vectors.set_col(i, updated);
    }
    for (std::size_t m = 0; m < shards; ++m) tracker.observe(estimates[m]);

    if (t % base.eval_every == 0 || t == base.steps) {
      MetricRow row;
      row.iteration = t;
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t_start)
                        .count();
      row.has_truth = laplacian_truth != nullptr;
      Mat reported(num_nodes, static_cast<std::size_t>(k));
      for (long c = 0; c < k; ++c)
        for (std::size_t r = 0; r < num_nodes; ++r)
          reported(r, static_cast<std::size_t>(c)) =
              state.vectors(r, static_cast<std::size_t>(c) + 1);
      if (laplacian_truth) {
        row.streak = longest_streak(reported, truth_k, kStreakTheta);
        row.subspace_distance =
            subspace_distance(reported, truth_k, static_cast<std::size_t>(k));
      } else {
        row.streak = -1;
        row.subspace_distance = std::numeric_limits<double>::quiet_NaN();
      }
      // Per-player exact Rayleigh quotients of L over the full edge set;
      // these estimate the bottom eigenvalues being learned.
      row.utilities.resize(static_cast<std::size_t>(k));
      for (long c = 0; c < k; ++c) {
        const Vec vi = reported.col(static_cast<std::size_t>(c));
        const Vec xv = incidence_apply(edges, vi);
        row.utilities[static_cast<std::size_t>(c)] = dot(xv, xv);
      }
      trace.rows.push_back(std::move(row));
    }
  }

  GraphRunResult result;
  result.vectors = Mat(num_nodes, static_cast<std::size_t>(k));
  for (long c = 0; c < k; ++c)
    for (std::size_t r = 0; r < num_nodes; ++r)
      result.vectors(r, static_cast<std::size_t>(c)) =
          state.vectors(r, static_cast<std::size_t>(c) + 1);
  result.trace = std::move(trace);
  return result;
}

}  // namespace eigengame
