#include "lfl/ensemble.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "lfl/errors.hpp"

namespace lfl {

namespace {

unsigned resolve_workers(unsigned n_workers, std::size_t n_chains) {
  if (n_workers == 0) n_workers = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::min<std::size_t>(n_workers, std::max<std::size_t>(1, n_chains)));
}

// Run `body(chain)` for every chain index on `n_workers` threads over
// contiguous chain ranges, rethrowing the first failure with its chain
// attached.  The partition never affects results: bodies write only to
// rows indexed by their chain.
template <typename Body>
void parallel_chains(std::size_t n_chains, unsigned n_workers, const Body& body) {
  n_workers = resolve_workers(n_workers, n_chains);
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto run_range = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t c = begin; c < end; ++c) {
        try {
          body(static_cast<std::uint32_t>(c));
        } catch (const DivergenceError& e) {
          throw DivergenceError(std::string(e.what()) + " (chain " +
                                    std::to_string(c) + ")",
                                e.step());
        }
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (n_workers == 1) {
    run_range(0, n_chains);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    const std::size_t base = n_chains / n_workers;
    const std::size_t extra = n_chains % n_workers;
    std::size_t begin = 0;
    for (unsigned w = 0; w < n_workers; ++w) {
      const std::size_t count = base + (w < extra ? 1 : 0);
      threads.emplace_back(run_range, begin, begin + count);
      begin += count;
    }
    for (std::thread& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<EnsembleSnapshot> ensemble_run(
    const Sampler& sampler, std::span<const std::uint64_t> snapshot_steps,
    unsigned n_workers) {
  const RunConfig& config = sampler.config();
  const std::size_t n_chains = config.n_chains;
  const std::size_t dim = config.dim;
  const bool vr = config.variant == Variant::kVrLmc;

  std::vector<EnsembleSnapshot> snapshots(snapshot_steps.size());
  for (std::size_t s = 0; s < snapshots.size(); ++s) {
    EnsembleSnapshot& snap = snapshots[s];
    snap.step = snapshot_steps[s];
    snap.time = config.schedule.elapsed(snapshot_steps[s]);
    snap.n_chains = n_chains;
    snap.dim = dim;
    snap.positions.assign(n_chains * dim, 0.0);
    if (vr) {
      snap.grad_estimates.assign(n_chains * dim, 0.0);
      snap.eval_counts.assign(n_chains, 0);
    }
  }

  parallel_chains(n_chains, n_workers, [&](std::uint32_t chain) {
    const Trajectory traj = sampler.run(chain, snapshot_steps);
    for (std::size_t s = 0; s < snapshots.size(); ++s) {
      const ChainState& state = traj.snapshots[s];
      EnsembleSnapshot& snap = snapshots[s];
      std::copy(state.x.begin(), state.x.end(),
                snap.positions.begin() + chain * dim);
      if (vr) {
        std::copy(state.g->begin(), state.g->end(),
                  snap.grad_estimates.begin() + chain * dim);
        snap.eval_counts[chain] = state.evals;
      }
    }
  });
  return snapshots;
}

AveragedEnsemble averaged_ensemble(const Sampler& sampler, unsigned n_workers) {
  const RunConfig& config = sampler.config();
  AveragedEnsemble out;
  out.n_chains = config.n_chains;
  out.dim = config.dim;
  out.positions.assign(out.n_chains * out.dim, 0.0);
  out.times.assign(out.n_chains, 0.0);

  parallel_chains(out.n_chains, n_workers, [&](std::uint32_t chain) {
    const double u = sampler.averaged_time(chain);
    const Point x = sampler.averaged_draw_at(chain, u);
    out.times[chain] = u;
    std::copy(x.begin(), x.end(), out.positions.begin() + chain * out.dim);
  });
  return out;
}

}  // namespace lfl
