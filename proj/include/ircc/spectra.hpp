// Weight spectra of binary code ensembles and the decoding thresholds
// derived from them.
//
// A spectrum is the normalized log weight enumerator r(delta) in nats,
// sampled on an increasing delta grid ending at 1 and interpolated
// piecewise-linearly in between.  Rates are in bits per channel use;
// thresholds (c0, c*) are in nats.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ircc {

struct WeightSpectrum {
    std::string label;
    double rate = 0.0;            // R, bits per use, in (0,1)
    std::vector<double> delta;    // strictly increasing, front() > 0, back() == 1
    std::vector<double> r;        // exponent samples, nats
};

// Full validation: sample-count/ordering/range checks (MalformedFile) plus
// the coding-bound sanity check sup r/delta >= -ln(1-R) - 1e-9, without
// which no binary ensemble can have this spectrum (InconsistentSpectrum).
void validate_spectrum(const WeightSpectrum& ws);

// JSON file I/O.  Schema: {"schema_version":1, "label":str, "rate":num,
// "samples":[[delta, r], ...]}.  Unknown fields are rejected.  load also
// runs validate_spectrum.
WeightSpectrum load_spectrum(const std::filesystem::path& file);
void write_spectrum(const std::filesystem::path& file, const WeightSpectrum& ws);

// Random-binary ensemble exponent H(delta) - (1-R) ln 2 in nats.
double random_binary_exponent(double rate, double delta);

// Sampled random-binary spectrum on the uniform grid delta = k/n, k=1..n.
WeightSpectrum random_binary_spectrum(double rate, int n_samples,
                                      const std::string& label = "");

// Piecewise-linear evaluation; delta must lie inside [delta.front(), 1].
double spectrum_r(const WeightSpectrum& ws, double delta);

// Spectral distance to the random-binary exponent,
//   xi = sup_delta [r(delta) - rRB(delta)] * log2(e),   in bits.
double sf_distance(const WeightSpectrum& ws);

// Union-bound threshold c0 = sup_delta r(delta)/delta, nats.
double ub_threshold(const WeightSpectrum& ws);

// Quantities of the spectrum restricted to the partition parameterized by
// P in [0, 0.5): c_P is the sup of r/delta outside the band
// (0.5-P, 0.5+P], xi_P the spectral distance inside it (0 at P = 0).
struct RestrictedQuantities {
    double c_p;    // nats
    double xi_p;   // bits
};
RestrictedQuantities restricted_quantities(const WeightSpectrum& ws, double p);

struct CodeThresholds {
    double rate;       // bits per use
    double c0;         // union-bound threshold, nats
    double c_star;     // simple threshold, nats
    double p_star;     // partition parameter attaining c_star
    double xi_p_star;  // spectral distance at p_star, bits
};

// Simple threshold: minimize c_P over P subject to
// c_P >= -ln(1 - R - xi_P), searching a 512-point coarse grid refined by
// bisection; ties resolved toward smaller P.  Throws InfeasibleSpectrum
// when no P qualifies.
CodeThresholds simple_threshold(const WeightSpectrum& ws);

}  // namespace ircc
