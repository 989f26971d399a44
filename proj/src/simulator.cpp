#include "ircc/simulator.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "ircc/errors.hpp"
#include "ircc/numerics.hpp"
#include "ircc/puncturing.hpp"

namespace ircc {

namespace {

// Everything a frame needs, precomputed once per run.
struct FrameContext {
  const CoopConfig* coop = nullptr;
  std::vector<double> broadcast_snrs;  // index j-1 for helper j
  std::vector<double> downlink_snrs;   // index i for node i
  double chi0 = 0.0;                   // broadcast-slot threshold
  double gamma_threshold = 1.0;        // e^{-c_star}
};

FrameContext make_context(const Scenario& sc) {
  FrameContext ctx;
  ctx.coop = &sc.coop;
  const SnrTable snrs = link_snrs(sc.geometry);
  ctx.broadcast_snrs = snrs.broadcast();
  ctx.downlink_snrs = snrs.downlink();
  ctx.chi0 = punctured_threshold(sc.c_star, sc.coop.taus[0]);
  ctx.gamma_threshold = std::exp(-sc.c_star);
  return ctx;
}

// Per-worker reusable buffers, to keep the frame loop allocation-free.
struct FrameScratch {
  std::vector<double> nu;
  ReliableSet f;
};

// Draw layout within a frame's stream: draws 0..M-2 are the broadcast-slot
// fades of helpers 1..M-1; draw M-1 is the sender's relay-slot fade; draw
// M-1+j is helper j's relay-slot fade.  Unused draws are simply never
// evaluated; the generator is random-access.
FrameOutcome run_frame(const FrameContext& ctx, const CounterRng& rng,
                       bool mirror, FrameScratch& scratch) {
  const int m = ctx.coop->m;
  const auto fade = [&](std::uint64_t draw) {
    const double u = mirror ? rng.unit_mirror_at(draw) : rng.unit_at(draw);
    return -std::log(u);
  };

  FrameOutcome out;
  scratch.f.members.clear();
  for (int j = 1; j < m; ++j) {
    const double theta = fade(j - 1) * ctx.broadcast_snrs[j - 1];
    if (theta > ctx.chi0) {
      out.reliable_mask |= 1u << (j - 1);
      scratch.f.members.push_back(j);
    }
  }

  scratch.nu.assign(m, 0.0);
  scratch.nu[0] = fade(m - 1);
  for (int j : scratch.f.members) scratch.nu[j] = fade(m - 1 + j);

  out.avg_bhatt =
      avg_bhattacharyya(scratch.nu, scratch.f, *ctx.coop, ctx.downlink_snrs);
  out.error = out.avg_bhatt >= ctx.gamma_threshold;
  return out;
}

struct BlockTally {
  std::uint64_t errors = 0;
  double gamma_sum = 0.0;
  std::map<std::uint32_t, std::uint64_t> histogram;
};

}  // namespace

FrameOutcome simulate_frame(const CounterRng& rng, const Scenario& sc,
                            bool mirror) {
  validate_scenario(sc);
  const FrameContext ctx = make_context(sc);
  FrameScratch scratch;
  return run_frame(ctx, rng, mirror, scratch);
}

SimResult simulate_fer(const SimConfig& cfg) {
  validate_scenario(cfg.scenario);
  if (cfg.n_frames < 10000) {
    throw DomainError("frame count must be at least 10000");
  }
  if (cfg.workers < 1) throw DomainError("worker count must be positive");

  const FrameContext ctx = make_context(cfg.scenario);
  const std::uint64_t n = cfg.n_frames;
  const std::uint64_t seed = cfg.seed;
  const bool antithetic = cfg.antithetic;

  // Frames are grouped into a fixed number of blocks; workers pull whole
  // blocks and the final reduction walks blocks in index order, so the result
  // does not depend on the worker count or scheduling.
  const std::uint64_t n_blocks = std::min<std::uint64_t>(n, 1024);
  std::vector<BlockTally> blocks(n_blocks);
  std::atomic<std::uint64_t> next_block{0};

  const auto work = [&]() {
    FrameScratch scratch;
    for (;;) {
      const std::uint64_t b = next_block.fetch_add(1);
      if (b >= n_blocks) return;
      BlockTally& tally = blocks[b];
      const std::uint64_t begin = n * b / n_blocks;
      const std::uint64_t end = n * (b + 1) / n_blocks;
      for (std::uint64_t frame = begin; frame < end; ++frame) {
        const std::uint64_t stream = antithetic ? frame / 2 : frame;
        const bool mirror = antithetic && (frame & 1);
        const CounterRng rng(seed, stream);
        const FrameOutcome out = run_frame(ctx, rng, mirror, scratch);
        tally.errors += out.error ? 1 : 0;
        tally.gamma_sum += out.avg_bhatt;
        ++tally.histogram[out.reliable_mask];
      }
    }
  };

  const int n_threads = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.workers), n_blocks));
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  SimResult result;
  result.frames = n;
  double gamma_total = 0.0;
  for (const BlockTally& tally : blocks) {
    result.errors += tally.errors;
    gamma_total += tally.gamma_sum;
    for (const auto& [mask, count] : tally.histogram) {
      result.reliable_set_histogram[mask] += count;
    }
  }
  result.mean_avg_bhattacharyya = gamma_total / static_cast<double>(n);

  result.fer.value =
      static_cast<double>(result.errors) / static_cast<double>(n);
  result.fer.kind = FerKind::Simulation;
  result.fer.half_width = wilson_half_width(
      static_cast<std::int64_t>(result.errors), static_cast<std::int64_t>(n),
      kZ99);
  result.fer.samples = n;
  if (result.errors < 50) result.fer.flags.push_back(kFlagWeakStatistics);
  return result;
}

bool simulate_firf_threshold(double c_star, double eta) {
  if (!(c_star >= 0.0) || !std::isfinite(c_star)) {
    throw DomainError("decoding threshold must be non-negative and finite");
  }
  if (!(eta >= 0.0)) throw DomainError("receive SNR must be non-negative");
  return eta > std::expm1(c_star);
}

}  // namespace ircc
