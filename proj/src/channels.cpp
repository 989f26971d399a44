#include "ircc/channels.hpp"

#include <cmath>

#include "ircc/errors.hpp"
#include "ircc/numerics.hpp"

namespace ircc {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_param(const ChannelSpec& ch) {
    switch (ch.kind) {
        case ChannelKind::Bec:
            if (!(ch.param >= 0.0 && ch.param <= 1.0))
                throw DomainError("bec: erasure probability outside [0,1]");
            return;
        case ChannelKind::BiAwgn:
        case ChannelKind::Firf:
            if (!(ch.param >= 0.0) || !std::isfinite(ch.param))
                throw DomainError("channel: SNR must be finite and non-negative");
            return;
        case ChannelKind::Dummy:
            return;
    }
    throw DomainError("channel: unknown kind");
}

// Capacity of binary-input AWGN with received SNR lambda:
//   C = 1 - (1/sqrt(pi)) Int exp(-(y-sqrt(lambda))^2) log2(1+exp(-4 y sqrt(lambda))) dy.
// The Gaussian factor has standard deviation 1/sqrt(2); the integrand is
// evaluated in a log-stable form and the domain truncated where the
// Gaussian underflows.
double biawgn_capacity(double lambda) {
    if (lambda == 0.0) return 0.0;
    const double a = std::sqrt(lambda);
    const double half_width = 32.0;  // exp(-32^2) is far below double underflow
    const double inv_sqrt_pi = 0.5641895835477563;
    auto integrand = [a, inv_sqrt_pi](double y) {
        const double g = std::exp(-(y - a) * (y - a));
        return inv_sqrt_pi * g * log1p_exp(-4.0 * y * a) / kLn2;
    };
    // The loss integrand is a narrow product of a Gaussian centred at
    // sqrt(lambda) and a softplus ramp centred at 0; integrating in fixed
    // slices keeps the adaptive pass from overlooking either feature when
    // they are far apart.
    const double lo = a - half_width, hi = a + half_width;
    const int slices = 32;
    double loss = 0.0;
    for (int k = 0; k < slices; ++k) {
        const double x0 = lo + (hi - lo) * k / slices;
        const double x1 = lo + (hi - lo) * (k + 1) / slices;
        loss += integrate(integrand, x0, x1, 1e-9 / slices);
    }
    return 1.0 - loss;
}

}  // namespace

double bhattacharyya(const ChannelSpec& ch) {
    check_param(ch);
    switch (ch.kind) {
        case ChannelKind::Bec:
            return ch.param;
        case ChannelKind::BiAwgn:
            return std::exp(-ch.param);
        case ChannelKind::Firf:
            return 1.0 / (1.0 + ch.param);
        case ChannelKind::Dummy:
            return 1.0;
    }
    throw DomainError("channel: unknown kind");
}

double capacity(const ChannelSpec& ch) {
    check_param(ch);
    switch (ch.kind) {
        case ChannelKind::Bec:
            return 1.0 - ch.param;
        case ChannelKind::BiAwgn:
            return biawgn_capacity(ch.param);
        case ChannelKind::Firf:
            throw UnsupportedMeasure(
                "capacity: no closed form for the fully-interleaved fading channel; "
                "use bhattacharyya_rate or cutoff_rate");
        case ChannelKind::Dummy:
            return 0.0;
    }
    throw DomainError("channel: unknown kind");
}

double bhattacharyya_rate(const ChannelSpec& ch) { return 1.0 - bhattacharyya(ch); }

double cutoff_rate(const ChannelSpec& ch) {
    return 1.0 - std::log2(1.0 + bhattacharyya(ch));
}

}  // namespace ircc
