#pragma once

#include <cstdint>
#include <map>

#include "ircc/fer.hpp"
#include "ircc/protocol.hpp"
#include "ircc/rng.hpp"

namespace ircc {

// Frame-level Monte Carlo run description.  Results are a pure function of
// this struct: the same config gives bit-identical output for any worker
// count, because every random draw is addressed by (seed, frame, draw index)
// and floating-point reductions follow a fixed block order.
struct SimConfig {
  Scenario scenario;
  std::uint64_t n_frames = 100000;  // at least 10000
  std::uint64_t seed = 0;
  bool antithetic = false;  // pair frames 2k/2k+1 on mirrored fade draws
  int workers = 1;          // threads; does not affect the result
};

// Outcome of a single simulated frame.
struct FrameOutcome {
  bool error = false;            // destination failed to decode
  std::uint32_t reliable_mask = 0;  // helpers that decoded the broadcast slot
  double avg_bhatt = 1.0;        // time-averaged Bhattacharyya parameter
};

// Simulates one frame of the cooperation protocol: draws the broadcast-slot
// fades to form the reliable set, then the relay-slot fades, and declares an
// error when the averaged Bhattacharyya parameter meets or exceeds the code
// threshold e^{-c_star}.  `mirror` replays the frame on mirrored uniforms
// (antithetic partner).  The scenario must already be validated.
FrameOutcome simulate_frame(const CounterRng& rng, const Scenario& sc,
                            bool mirror = false);

struct SimResult {
  FerEstimate fer;  // kind = Simulation, Wilson 99% half-width
  // Reliable-set occurrence counts keyed by helper bitmask (bit j-1 set when
  // helper j decoded the broadcast slot).  Counts sum to n_frames.
  std::map<std::uint32_t, std::uint64_t> reliable_set_histogram;
  double mean_avg_bhattacharyya = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t errors = 0;
};

// Runs the frame simulation n_frames times and aggregates.  Throws
// DomainError for invalid run parameters and propagates scenario validation
// errors.  Deterministic given (scenario, n_frames, seed, antithetic).
SimResult simulate_fer(const SimConfig& cfg);

// Decodability of the fully-interleaved-fading baseline at receive SNR eta:
// reliable exactly when eta > e^{c_star} - 1 (strict).
bool simulate_firf_threshold(double c_star, double eta);

}  // namespace ircc
