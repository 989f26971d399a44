#pragma once

#include <cstdint>
#include <vector>

#include "ircc/fer.hpp"
#include "ircc/protocol.hpp"

namespace ircc {

inline constexpr std::uint64_t kDefaultMcSeed = 1;

// Frame error probability of plain direct transmission over a quasi-static
// Rayleigh link with the given average SNR: 1 - e^{-c*/snr}.  Exact.
FerEstimate outage_m1(double c_star, double snr);

// Two-slot cooperative outage given a reliable helper, by adaptive
// quadrature of the closed-form single integral.  Requires the regime
// tau0, tau1 <= e^{-c*} in which the formula's inner expression stays a
// probability; outside it, use outage_given_set.
FerEstimate outage_m2_cooperative(double c_star, double tau0, double tau1,
                                  double snr02, double snr12);

// Probability that the slot-averaged channel parameter crosses e^{-c*} for
// a fixed reliable set, under independent unit-mean exponential fading
// powers.  Monte Carlo, restricted exactly to the product box of per-link
// fades outside which the event is impossible (truncated-exponential
// sampling with the box probability factored out analytically), plus
// antithetic pairing.  Unbiased at every SNR; the half-width is a 99%
// binomial-proportion interval scaled by the box probability.
FerEstimate outage_given_set(const CoopConfig& cfg, const ReliableSet& f,
                             const std::vector<double>& downlink_snrs,
                             double c_star, std::uint64_t n_samples,
                             std::uint64_t seed = kDefaultMcSeed);

// Full frame-error-rate bound: reliable-set probabilities times per-set
// outage, summed over all 2^{M-1} helper subsets.  M = 1 is closed form;
// M = 2 uses the quadrature form when its regime applies; everything else
// runs outage_given_set with n_samples draws per subset (the estimate's
// `samples` field totals them).  Half-widths combine linearly.
FerEstimate fer_bound(const CoopConfig& cfg, const Geometry& geom,
                      double c_star, std::uint64_t n_samples,
                      std::uint64_t seed = kDefaultMcSeed);

}  // namespace ircc
