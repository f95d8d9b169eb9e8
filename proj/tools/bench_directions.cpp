// Compares the serial reference direction kernel against the OpenMP one on a
// synthetic workload and checks that the two agree bit for bit.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "eigengame/data.hpp"
#include "eigengame/rng.hpp"
#include "eigengame/solver.hpp"
#include "eigengame/updates.hpp"

using namespace eigengame;

namespace {

double time_ms(const std::vector<CovView>& views, const EigenState& state,
               UpdateRule rule, int threads, int reps, bool serial) {
  std::vector<Vec> dirs;
  std::vector<std::uint8_t> skipped;
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) {
    if (serial)
      compute_step_directions_serial(views, state, rule, dirs, skipped);
    else
      compute_step_directions(views, state, rule, threads, dirs, skipped);
  }
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
             .count() /
         reps;
}

bool bitwise_equal(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    if (!a[i].empty() &&
        std::memcmp(a[i].data(), b[i].data(), a[i].size() * sizeof(double)) != 0)
      return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t d = 256, n = 4096;
  int k = 16, shards = 4, reps = 20;
  if (argc > 1) d = static_cast<std::size_t>(std::atol(argv[1]));
  if (argc > 2) n = static_cast<std::size_t>(std::atol(argv[2]));
  if (argc > 3) k = std::atoi(argv[3]);
  if (argc > 4) shards = std::atoi(argv[4]);
  if (argc > 5) reps = std::atoi(argv[5]);

  const SynthCovariance synth =
      synth_covariance(Spectrum::exponential(d, 1.0, 0.95), 7);
  const Dataset ds = Dataset::gaussian(synth.truth);
  Philox rng(7);
  const Mat batch = sample_batch(ds, n, rng);

  std::vector<CovView> views;
  const std::size_t per_shard = n / static_cast<std::size_t>(shards);
  for (int m = 0; m < shards; ++m)
    views.push_back(CovView::from_batch_rows(
        batch, static_cast<std::size_t>(m) * per_shard,
        (static_cast<std::size_t>(m) + 1) * per_shard));

  const EigenState state =
      init_state(d, static_cast<std::size_t>(k), 7, Constraint::unit_sphere);
  const int threads = resolve_threads(0);

  std::printf("direction kernel, d=%zu n=%zu k=%d shards=%d reps=%d\n", d, n, k,
              shards, reps);
  std::printf("%-10s %-10s %12s\n", "rule", "path", "ms/iter");
  for (UpdateRule rule : {UpdateRule::mu, UpdateRule::alpha, UpdateRule::gha,
                          UpdateRule::mu_grad}) {
    const double serial_ms = time_ms(views, state, rule, 1, reps, true);
    const double parallel_ms = time_ms(views, state, rule, threads, reps, false);
    std::printf("%-10s %-10s %12.3f\n", to_string(rule).c_str(), "serial",
                serial_ms);
    std::printf("%-10s %-10s %12.3f  (x%.2f, %d threads)\n",
                to_string(rule).c_str(), "openmp", parallel_ms,
                serial_ms / parallel_ms, threads);

    std::vector<Vec> ref, par;
    std::vector<std::uint8_t> skipped;
    compute_step_directions_serial(views, state, rule, ref, skipped);
    compute_step_directions(views, state, rule, threads, par, skipped);
    if (!bitwise_equal(ref, par)) {
      std::printf("MISMATCH: parallel result differs from serial reference\n");
      return 1;
    }
  }
  std::printf("parallel results identical to the serial reference\n");
  return 0;
}
