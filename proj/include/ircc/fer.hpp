#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ircc {

// How a frame-error-rate number was produced.
enum class FerKind {
    ClosedForm,
    Quadrature,
    MonteCarloIntegral,
    Simulation,
    AsymptoticBound,
};

const char* fer_kind_name(FerKind kind);

// A frame-error-rate value together with its provenance and, for
// statistical kinds, a 99%-confidence half-width.
struct FerEstimate {
    double value = 0.0;
    FerKind kind = FerKind::ClosedForm;
    double half_width = 0.0;     // 0 for deterministic kinds
    std::uint64_t samples = 0;   // total random draws (statistical kinds)
    std::vector<std::string> flags;  // advisory markers, e.g. weak statistics

    bool has_flag(const std::string& name) const;
};

// Flag names used across the library.
inline constexpr const char* kFlagWeakStatistics = "weak-statistics";
inline constexpr const char* kFlagAsymptoteInvalid = "outside-asymptotic-regime";

}  // namespace ircc
