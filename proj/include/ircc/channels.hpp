// Binary-input symmetric-output channel measures: Bhattacharyya parameter,
// capacity, Bhattacharyya rate and cutoff rate.  Rates are in bits per
// channel use; SNR-like parameters are linear (not dB).
#pragma once

namespace ircc {

enum class ChannelKind {
    Bec,     // binary erasure, param = erasure probability p
    BiAwgn,  // binary-input AWGN, param = received SNR lambda
    Firf,    // fully-interleaved Rayleigh fading, param = average SNR eta
    Dummy,   // zero-capacity placeholder for a silent slot
};

struct ChannelSpec {
    ChannelKind kind;
    double param = 0.0;
};

// Bhattacharyya parameter gamma in [0, 1].
double bhattacharyya(const ChannelSpec& ch);

// Shannon capacity in bits per use.  The BiAwgn value comes from adaptive
// quadrature (absolute tolerance 1e-9).  Firf has no supported closed form
// here and throws UnsupportedMeasure.
double capacity(const ChannelSpec& ch);

// B = 1 - gamma, the rate at which the union bound with threshold c0
// starts to bite.
double bhattacharyya_rate(const ChannelSpec& ch);

// R0 = 1 - log2(1 + gamma).
double cutoff_rate(const ChannelSpec& ch);

}  // namespace ircc
