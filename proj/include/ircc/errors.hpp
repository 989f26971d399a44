// Error taxonomy for the ircc library.  Every failure mode callers are
// expected to handle gets its own type so they can be told apart without
// string matching.  All of them derive from ircc::Error.
#pragma once

#include <stdexcept>
#include <string>

namespace ircc {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An argument is outside the mathematical domain of the operation
// (negative SNR, tau outside (0,1], malformed tau vector, ...).
struct DomainError : Error {
    using Error::Error;
};

// The requested measure has no supported closed form or integral for this
// channel family (e.g. capacity of the fully-interleaved fading channel).
struct UnsupportedMeasure : Error {
    using Error::Error;
};

// A spectrum/scenario file failed to parse or violates its schema.
struct MalformedFile : Error {
    using Error::Error;
};

// A weight spectrum whose union-bound threshold falls below -ln(1-R).
// No binary code ensemble can do that, so the file is rejected as bogus.
struct InconsistentSpectrum : Error {
    using Error::Error;
};

// simple_threshold found no partition parameter P that satisfies the
// feasibility constraint.
struct InfeasibleSpectrum : Error {
    using Error::Error;
};

// Punctured block carries too little of the codeword to decode on its own:
// tau <= 1 - e^{-c*}.
struct NotSelfDecodable : Error {
    using Error::Error;
};

// Listening-phase SNR threshold theta does not exceed chi(tau0), so no
// feasible early-stopping fraction exists.
struct NotReliable : Error {
    using Error::Error;
};

// Safety margin pushes the early-stopping fraction past tau0.
struct MarginTooLarge : Error {
    using Error::Error;
};

// Distances / energies / path-loss exponent do not describe a usable
// network geometry.
struct InvalidGeometry : Error {
    using Error::Error;
};

// A node or decoding-set index is out of range for the configured network.
struct InvalidMember : Error {
    using Error::Error;
};

// Helper count exceeds the exact-enumeration cap (2^(M-1) subsets).
struct TooManyHelpers : Error {
    using Error::Error;
};

// The closed-form two-node outage requires tau0, tau1 <= e^{-c*}.
struct AssumptionViolated : Error {
    using Error::Error;
};

// An asymptotic formula was queried outside its hypothesis
// (non-self-decodable taus, taus not summing to one, ...).
struct HypothesisViolated : Error {
    using Error::Error;
};

// A curve handed to the diversity-slope fit spans too little SNR range or
// contains non-positive FER values.
struct InsufficientRange : Error {
    using Error::Error;
};

// No tau0 satisfies the self-decodability guardband for this (M, c*).
struct InfeasibleTauRange : Error {
    using Error::Error;
};

}  // namespace ircc
