#include "eigengame/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eigengame/errors.hpp"

namespace eigengame {

namespace {

// Substream ids carved out of the master seed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kBatchStream = 1;

constexpr double kStreakTheta = 0.39269908169872414;  // pi/8

Vec direction_for(UpdateRule rule, const CovView& cov, const EigenState& state,
                  int player) {
  switch (rule) {
    case UpdateRule::mu: return mu_update(cov, state, player);
    case UpdateRule::alpha: return alpha_update(cov, state, player);
    case UpdateRule::gha: return gha_update(cov, state, player);
    case UpdateRule::mu_grad: return mu_grad_update(cov, state, player);
  }
  throw ConfigError("unknown update rule");
}

}  // namespace

std::string to_string(Schedule s) {
  return s == Schedule::constant ? "constant" : "inv-t";
}

Schedule parse_schedule(const std::string& name) {
  if (name == "constant") return Schedule::constant;
  if (name == "inv-t" || name == "inverse_t") return Schedule::inverse_t;
  throw ConfigError("unknown schedule '" + name + "'");
}

SolverConfig SolverConfig::meena_profile() {
  SolverConfig c;
  c.lr = 5e-5;
  c.momentum = 0.9;
  c.nesterov = true;
  return c;
}

void SolverConfig::validate() const {
  if (k < 1) throw ConfigError("config: k must be >= 1");
  if (steps < 1) throw ConfigError("config: steps must be >= 1");
  if (batch_size < 0) throw ConfigError("config: batch size must be >= 0");
  if (shards < 1) throw ConfigError("config: shards must be >= 1");
  if (batch_size > 0 && batch_size % shards != 0)
    throw ConfigError("config: shards must divide the batch size");
  if (!(lr > 0.0)) throw ConfigError("config: learning rate must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0))
    throw ConfigError("config: momentum must lie in [0, 1)");
  if (eval_every < 1) throw ConfigError("config: eval-every must be >= 1");
  if (threads < 0) throw ConfigError("config: threads must be >= 0");
  if (riemannian_projection && rule == UpdateRule::gha)
    throw ConfigError(
        "config: tangent projection needs the unit-sphere constraint, which "
        "the gha rule does not use");
}

double step_size(Schedule schedule, double eta, long t) {
  if (t < 1) throw ConfigError("step_size: iterations are 1-based");
  return schedule == Schedule::constant ? eta : eta / static_cast<double>(t);
}

Vec aggregate_shards(const std::vector<Vec>& dirs,
                     const std::vector<std::size_t>& sizes) {
  if (dirs.empty() || dirs.size() != sizes.size())
    throw ShapeError("aggregate_shards: need one size per direction");
  std::size_t total = 0;
  for (std::size_t s : sizes) {
    if (s == 0) throw ShapeError("aggregate_shards: shard sizes must be positive");
    total += s;
  }
  Vec out(dirs[0].size(), 0.0);
  for (std::size_t m = 0; m < dirs.size(); ++m) {
    if (dirs[m].size() != out.size())
      throw ShapeError("aggregate_shards: direction length mismatch");
    axpy(static_cast<double>(sizes[m]) / static_cast<double>(total), dirs[m], out);
  }
  return out;
}

Vec apply_update(const Vec& v, const Vec& dir, double eta, Vec& momentum_buf,
                 const SolverConfig& config, Constraint constraint) {
  if (v.size() != dir.size() || v.size() != momentum_buf.size())
    throw ShapeError("apply_update: length mismatch");
  const Vec g = config.riemannian_projection ? tangent_project(v, dir) : dir;
  for (std::size_t i = 0; i < g.size(); ++i)
    momentum_buf[i] = config.momentum * momentum_buf[i] + g[i];
  Vec step = config.nesterov ? g : momentum_buf;
  if (config.nesterov) axpy(config.momentum, momentum_buf, step);

  if (constraint == Constraint::unit_sphere)
    return retract(v, scaled(step, eta));
  Vec out = v;
  axpy(eta, step, out);
  const double n = norm2(out);
  if (n > 1.0) scale(out, 1.0 / n);
  return out;
}

EigenState init_state(std::size_t d, std::size_t k, std::uint64_t seed,
                      Constraint constraint) {
  if (k > d) throw ConfigError("init_state: k must not exceed the dimension");
  if (k < 1) throw ConfigError("init_state: k must be >= 1");
  Philox rng = Philox(seed).split(kInitStream);
  EigenState state;
  state.vectors = Mat(d, k);
  state.constraint = constraint;
  Vec col(d);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < d; ++r) col[r] = rng.next_normal();
    const double n = norm2(col);
    if (n == 0.0) throw DomainError("init_state: degenerate draw");
    for (std::size_t r = 0; r < d; ++r) state.vectors(r, c) = col[r] / n;
  }
  return state;
}

int resolve_threads(int requested) {
  int n = requested;
  if (n <= 0) {
#ifdef _OPENMP
    n = omp_get_max_threads();
#else
    n = static_cast<int>(std::thread::hardware_concurrency());
#endif
    if (n <= 0) n = 1;
  }
  if (const char* cap = std::getenv("EIGENGAME_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v > 0)
      n = std::min(n, static_cast<int>(v));
  }
  return std::max(1, n);
}

namespace {

// One (shard, player) task. Singular penalties mark the player as skipped;
// anything else propagates to the caller.
inline void direction_task(const std::vector<CovView>& views,
                           const EigenState& snapshot, UpdateRule rule,
                           std::size_t m, std::size_t i, std::vector<Vec>& dirs,
                           std::vector<std::uint8_t>& skipped) {
  try {
    dirs[m * snapshot.k() + i] =
        direction_for(rule, views[m], snapshot, static_cast<int>(i) + 1);
  } catch (const SingularPenaltyError&) {
    skipped[i] = 1;
  }
}

}  // namespace

void compute_step_directions_serial(const std::vector<CovView>& shard_views,
                                    const EigenState& snapshot, UpdateRule rule,
                                    std::vector<Vec>& dirs,
                                    std::vector<std::uint8_t>& skipped) {
  const std::size_t num_shards = shard_views.size();
  const std::size_t k = snapshot.k();
  dirs.assign(num_shards * k, Vec());
  skipped.assign(k, 0);
  for (std::size_t m = 0; m < num_shards; ++m)
    for (std::size_t i = 0; i < k; ++i)
      direction_task(shard_views, snapshot, rule, m, i, dirs, skipped);
}

void compute_step_directions(const std::vector<CovView>& shard_views,
                             const EigenState& snapshot, UpdateRule rule,
                             int threads, std::vector<Vec>& dirs,
                             std::vector<std::uint8_t>& skipped) {
#ifdef _OPENMP
  if (threads > 1) {
    const std::int64_t num_shards = static_cast<std::int64_t>(shard_views.size());
    const std::int64_t k = static_cast<std::int64_t>(snapshot.k());
    dirs.assign(static_cast<std::size_t>(num_shards * k), Vec());
    skipped.assign(static_cast<std::size_t>(k), 0);
    std::exception_ptr failure = nullptr;
#pragma omp parallel for collapse(2) schedule(static) num_threads(threads)
    for (std::int64_t m = 0; m < num_shards; ++m) {
      for (std::int64_t i = 0; i < k; ++i) {
        try {
          direction_task(shard_views, snapshot, rule,
                         static_cast<std::size_t>(m),
                         static_cast<std::size_t>(i), dirs, skipped);
        } catch (...) {
#pragma omp critical
          if (!failure) failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
    return;
  }
#else
  (void)threads;
#endif
  compute_step_directions_serial(shard_views, snapshot, rule, dirs, skipped);
}

RunResult run(const SolverConfig& config, const CovarianceSource& source,
              const SymEig* ground_truth) {
  config.validate();
  const std::size_t d = source.dim();
  if (static_cast<std::size_t>(config.k) > d)
    throw ConfigError("run: k exceeds the data dimension");
  if (ground_truth && ground_truth->eigenvectors.rows() != d)
    throw ShapeError("run: ground truth dimension mismatch");

  const bool sigma_source = source.is_sigma();
  if (sigma_source && config.shards != 1)
    throw ConfigError("run: sharding requires a sampled dataset source");

  std::size_t batch_rows = 0;  // n' per iteration for dataset sources
  bool sequential_full = false;
  if (!sigma_source) {
    if (config.batch_size == 0) {
      if (!source.dataset().has_rows())
        throw ConfigError("run: full-batch mode requires a matrix dataset");
      batch_rows = source.dataset().rows().rows();
      sequential_full = true;
    } else {
      batch_rows = static_cast<std::size_t>(config.batch_size);
    }
    if (batch_rows % static_cast<std::size_t>(config.shards) != 0)
      throw ConfigError("run: shards must divide the per-iteration batch size");
  }

  const Constraint constraint = config.rule == UpdateRule::gha
                                    ? Constraint::unit_ball
                                    : Constraint::unit_sphere;
  EigenState state = init_state(d, static_cast<std::size_t>(config.k),
                                config.seed, constraint);
  OptState opt(d, static_cast<std::size_t>(config.k));
  Philox batch_rng = Philox(config.seed).split(kBatchStream);
  const int threads = resolve_threads(config.threads);

  Mat truth_k;
  if (ground_truth) {
    truth_k = Mat(d, static_cast<std::size_t>(config.k));
    for (std::size_t c = 0; c < truth_k.cols(); ++c)
      for (std::size_t r = 0; r < d; ++r)
        truth_k(r, c) = ground_truth->eigenvectors(r, c);
  }

  MetricTrace trace;
  trace.k = static_cast<std::size_t>(config.k);

  const auto t_start = std::chrono::steady_clock::now();
  std::vector<Vec> dirs;
  std::vector<std::uint8_t> skipped;
  std::vector<Vec> player_dirs(static_cast<std::size_t>(config.shards));
  int skip_accum = 0;

  for (long t = 1; t <= config.steps; ++t) {
    Mat batch;
    std::vector<CovView> views;
    std::vector<std::size_t> sizes;
    if (sigma_source) {
      views.push_back(CovView::from_sigma(source.sigma()));
      sizes.push_back(1);
    } else {
      batch = sample_batch(source.dataset(), batch_rows, batch_rng,
                           sequential_full);
      const std::size_t per_shard =
          batch_rows / static_cast<std::size_t>(config.shards);
      for (int m = 0; m < config.shards; ++m) {
        views.push_back(CovView::from_batch_rows(
            batch, static_cast<std::size_t>(m) * per_shard,
            (static_cast<std::size_t>(m) + 1) * per_shard));
        sizes.push_back(per_shard);
      }
    }

    const EigenState snapshot = state;  // simultaneous updates
    compute_step_directions(views, snapshot, config.rule, threads, dirs,
                            skipped);

    const double eta = step_size(config.schedule, config.lr, t);
    for (int i = 0; i < config.k; ++i) {
      if (skipped[static_cast<std::size_t>(i)]) {
        ++skip_accum;
        continue;
      }
      player_dirs.resize(views.size());
      for (std::size_t m = 0; m < views.size(); ++m)
        player_dirs[m] = std::move(
            dirs[m * static_cast<std::size_t>(config.k) + static_cast<std::size_t>(i)]);
      const Vec agg = aggregate_shards(player_dirs, sizes);
      Vec mom = opt.momentum.col(static_cast<std::size_t>(i));
      const Vec updated =
          apply_update(snapshot.vectors.col(static_cast<std::size_t>(i)), agg,
                       eta, mom, config, constraint);
      opt.momentum.set_col(static_cast<std::size_t>(i), mom);
      state.vectors.set_col(static_cast<std::size_t>(i), updated);
    }

    if (t % config.eval_every == 0 || t == config.steps) {
      MetricRow row;
      row.iteration = t;
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t_start)
                        .count();
      row.skipped_players = skip_accum;
      skip_accum = 0;
      row.has_truth = ground_truth != nullptr;
      if (ground_truth) {
        row.streak = longest_streak(state.vectors, truth_k, kStreakTheta);
        row.subspace_distance = subspace_distance(
            state.vectors, truth_k, static_cast<std::size_t>(config.k));
      } else {
        row.streak = -1;
        row.subspace_distance = std::numeric_limits<double>::quiet_NaN();
      }
      row.utilities.resize(static_cast<std::size_t>(config.k));
      // Utilities come from the iteration's full view: exact for an
      // explicit sigma, the whole minibatch otherwise.
      const CovView full_view =
          sigma_source ? views[0] : CovView::from_batch(batch);
      for (int i = 0; i < config.k; ++i) {
        try {
          row.utilities[static_cast<std::size_t>(i)] =
              config.rule == UpdateRule::alpha
                  ? alpha_utility(full_view, state, i + 1)
                  : mu_utility(full_view, state, i + 1);
        } catch (const SingularPenaltyError&) {
          row.utilities[static_cast<std::size_t>(i)] =
              std::numeric_limits<double>::quiet_NaN();
        }
      }
      trace.rows.push_back(std::move(row));
    }
  }
  return {std::move(state), std::move(trace)};
}

}  // namespace eigengame
