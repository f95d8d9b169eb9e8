#pragma once

#include <cstdint>
#include <vector>

#include "eigengame/data.hpp"
#include "eigengame/linalg.hpp"
#include "eigengame/mat.hpp"
#include "eigengame/metrics.hpp"
#include "eigengame/updates.hpp"

namespace eigengame {

enum class Schedule { constant, inverse_t };

std::string to_string(Schedule s);
Schedule parse_schedule(const std::string& name);

struct SolverConfig {
  int k = 8;
  UpdateRule rule = UpdateRule::mu;
  long steps = 1000;       // T
  long batch_size = 0;     // n'; 0 selects full-batch mode
  int shards = 1;          // M, must divide the batch size
  Schedule schedule = Schedule::constant;
  double lr = 0.1;         // eta (constant) or eta_0 (inverse_t)
  double momentum = 0.0;   // in [0, 1)
  bool nesterov = false;
  bool riemannian_projection = false;
  std::uint64_t seed = 0;
  long eval_every = 10;
  int threads = 0;         // worker cap; 0 = hardware, bounded by EIGENGAME_THREADS

  /// Settings used for the large-scale language-embedding runs.
  static SolverConfig meena_profile();

  void validate() const;  // throws ConfigError
};

/// Per-player momentum buffers, one column per player, zero-initialized.
struct OptState {
  Mat momentum;
  OptState() = default;
  OptState(std::size_t d, std::size_t k) : momentum(d, k) {}
};

/// eta (constant) or eta0 / t (inverse-t decay); t is 1-based.
double step_size(Schedule schedule, double eta, long t);

/// Size-weighted average sum_m (n_m / n) g_m, reduced left to right.
Vec aggregate_shards(const std::vector<Vec>& dirs,
                     const std::vector<std::size_t>& sizes);

/// One optimizer step for a single player: optional tangent projection,
/// momentum (classic or Nesterov), then the constraint map — renormalize on
/// the sphere, rescale into the ball only when the step leaves it.
Vec apply_update(const Vec& v, const Vec& dir, double eta, Vec& momentum_buf,
                 const SolverConfig& config, Constraint constraint);

/// Unit-normalized seeded Gaussian columns.
EigenState init_state(std::size_t d, std::size_t k, std::uint64_t seed,
                      Constraint constraint = Constraint::unit_sphere);

/// Resolves the shard-level worker count: `requested` if positive, otherwise
/// hardware parallelism, always capped by the EIGENGAME_THREADS environment
/// variable when set.
int resolve_threads(int requested);

/// Fills dirs[m * k + i] with the rule's direction for player i+1 on shard
/// view m, reading an immutable state snapshot. Shards/players whose
/// computation hits a singular penalty are flagged in `skipped` (one entry
/// per player) instead of throwing.
///
/// With threads > 1 the (shard, player) tasks are distributed with OpenMP;
/// each task runs the identical scalar code either way, so the parallel
/// result matches the serial reference bit for bit.
void compute_step_directions(const std::vector<CovView>& shard_views,
                             const EigenState& snapshot, UpdateRule rule,
                             int threads, std::vector<Vec>& dirs,
                             std::vector<std::uint8_t>& skipped);

/// Serial reference for compute_step_directions (plain nested loops).
void compute_step_directions_serial(const std::vector<CovView>& shard_views,
                                    const EigenState& snapshot, UpdateRule rule,
                                    std::vector<Vec>& dirs,
                                    std::vector<std::uint8_t>& skipped);

struct RunResult {
  EigenState state;
  MetricTrace trace;
};

/// Simultaneous-update training loop. Per iteration: draw one minibatch,
/// split it into M contiguous shards, compute every (player, shard)
/// direction against the iteration-start snapshot, reduce shard results in
/// fixed order, then step each player. Evaluation rows are appended every
/// eval_every iterations and at the final step. Deterministic for a fixed
/// (config, source) regardless of thread count.
RunResult run(const SolverConfig& config, const CovarianceSource& source,
              const SymEig* ground_truth = nullptr);

}  // namespace eigengame
