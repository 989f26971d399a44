#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ircc {

// Node indexing convention used throughout: node 0 is the sender, nodes
// 1..M-1 are cooperating helpers, node M is the destination.  A frame
// spans M time slots.

struct Geometry {
    int m = 1;                  // slot count M (and transmitter count)
    double path_loss = 2.0;     // propagation exponent L
    double symbol_energy = 1.0; // per-symbol transmit energy E
    // Row-major M x M block: entry (i, j) is the distance from transmitter
    // i in [0, M) to receiver j in [1, M], stored at i*M + (j-1).
    std::vector<double> dist;

    double distance(int i, int j) const;  // bounds-checked accessor
};

// Build from a full distance matrix: `entries` is row-major M x M, row i =
// transmitter i, column j-1 = receiver j.  Helper self/helper-to-helper
// entries must be positive but are never read by any operation.
Geometry geometry_from_matrix(int m, const std::vector<double>& entries,
                              double path_loss, double symbol_energy);

// Symmetric hop profile: every helper sits at distance r from the sender
// and d from the destination; the sender-destination distance is big_d.
// Unused helper-to-helper entries are filled with r.
Geometry geometry_from_profile(int m, double r, double d, double big_d,
                               double path_loss, double symbol_energy);

void validate_geometry(const Geometry& g);

// Advisory messages for sender-helper-destination triples that violate the
// triangle inequality.  Such geometries are suspicious but not rejected.
std::vector<std::string> geometry_warnings(const Geometry& g);

// Extracted symmetric profile of a geometry.  Present only when all
// sender-to-helper distances agree and all helper-to-destination distances
// agree (always true for M <= 2).
struct HopProfile {
    double r = 0.0;      // sender to helper (0 when M == 1)
    double d = 0.0;      // helper to destination (0 when M == 1)
    double big_d = 0.0;  // sender to destination
};
bool try_hop_profile(const Geometry& g, HopProfile& out);

struct SnrTable {
    int m = 1;
    std::vector<double> snr;  // same layout as Geometry::dist

    double at(int i, int j) const;
    std::vector<double> broadcast() const;  // sender to each helper, size M-1
    std::vector<double> downlink() const;   // each node to destination, size M
};

// Average link SNRs E * d^{-L}, linear scale.
SnrTable link_snrs(const Geometry& g);

struct CoopConfig {
    int m = 1;
    std::vector<double> taus;  // slot-time fractions, one per transmitter
};

void validate_coop(const CoopConfig& cfg);

// True when every slot fraction exceeds 1 - e^{-c*}, i.e. each node's
// block alone suffices for decoding at high enough SNR.
bool all_self_decodable(const CoopConfig& cfg, double c_star);

// Helpers that decoded the broadcast slot and will relay in their own
// slots.  Members are strictly increasing indices in [1, M-1].
struct ReliableSet {
    std::vector<int> members;
};

// Bit j-1 of the mask corresponds to helper j.
std::uint32_t mask_of(const ReliableSet& f, int m);
ReliableSet set_from_mask(std::uint32_t mask, int m);

// Probability of each of the 2^{M-1} helper subsets under independent
// Rayleigh broadcast links.
struct ReliableSetDist {
    int m = 1;
    std::vector<double> prob;  // indexed by helper-subset mask

    double prob_of(const ReliableSet& f) const;
};

ReliableSetDist reliable_set_prob(const CoopConfig& cfg,
                                  const std::vector<double>& broadcast_snrs,
                                  double chi0);

// Transmitting node per slot: slot 0 belongs to the sender; slot j to
// helper j when it decoded, otherwise the sender repeats.
struct Schedule {
    std::vector<int> slot_tx;
};

Schedule schedule(const ReliableSet& f, int m);

// Frame-averaged Bhattacharyya parameter seen by the destination for one
// fading realization.  `nu` holds the fading power of each transmitting
// node toward the destination (index = node); only the sender's entry and
// those of reliable helpers are read.
double avg_bhattacharyya(const std::vector<double>& nu, const ReliableSet& f,
                         const CoopConfig& cfg,
                         const std::vector<double>& downlink_snrs);

// A complete evaluation scenario: who is where, how time is split, and the
// code threshold.
struct Scenario {
    Geometry geometry;
    CoopConfig coop;
    double c_star = 0.0;
    bool has_seed = false;
    std::uint64_t seed = 0;
};

void validate_scenario(const Scenario& sc);

// JSON scenario file:
// {
//   "schema_version": 1,
//   "geometry": {"mode": "profile", "r": .., "d": .., "D": ..,
//                "path_loss": .., "symbol_energy": ..}
//             | {"mode": "matrix", "distances": [[..], ..],
//                "path_loss": .., "symbol_energy": ..},
//   "coop": {"m": .., "taus": [..]},
//   "code": {"c_star": ..},
//   "seed": <u64, optional>
// }
// Unknown fields are rejected.  Matrix rows follow the Geometry layout.
Scenario load_scenario(const std::filesystem::path& file);

}  // namespace ircc
