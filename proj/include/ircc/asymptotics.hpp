#pragma once

#include <utility>
#include <vector>

#include "ircc/fer.hpp"
#include "ircc/protocol.hpp"

namespace ircc {

// Limiting network layouts for the high-SNR bounds: helpers collapsed onto
// the sender, helpers collapsed onto the destination, or the general
// in-between placement described by the (r, d, D) hop profile.
enum class ScenarioKind {
    TransmitterClustering,
    ReceiverClustering,
    ClusterHopping,
};

// Limit of prod(rate_m) * P{sum tau_m e^{-nu_m rate_m} > c} as all rates
// grow: (1/Q!) * prod ln[tau_m / (c - (1 - tau_m))].  Requires every
// tau_m > 1 - c; c is on the probability scale (0, 1).
double theorem3_rhs(const std::vector<double>& taus, double c);

// High-symbol-energy closed-form FER bound for the chosen layout.  The
// geometry must carry a symmetric hop profile; every slot fraction must be
// self-decodable.  The estimate decays exactly as E^{-M} and is flagged
// when its value exceeds 0.1, where the high-SNR regime is meaningless.
FerEstimate fer_asym(ScenarioKind kind, const CoopConfig& cfg,
                     const Geometry& geom, double c_star);

// Same bound with every per-block threshold replaced by its small-c* limit
// c*/tau, leaving a pure power of c* in each subset term.
FerEstimate fer_asym_small_cstar(const CoopConfig& cfg, const Geometry& geom,
                                 double c_star);

// Least-squares slope of -log10(FER) against log10(SNR) over the highest
// SNR decade of the curve.  Needs at least 4 points spanning two decades,
// at least two of them in the top decade, and strictly positive FERs.
double diversity_estimate(const std::vector<std::pair<double, double>>& curve);

// Threshold-independent lower bound on the product of code threshold and
// cooperative coding gain implied by the hopping bound: the subset sum of
// normalized-distance factors, raised to -1/M.
double coding_gain_bound(const CoopConfig& cfg, const Geometry& geom,
                         double c_star);

}  // namespace ircc
