#include "ircc/puncturing.hpp"

#include <cmath>

#include "ircc/errors.hpp"

namespace ircc {

namespace {

void check_domain(double c_star, double tau) {
    if (!(c_star >= 0.0) || !std::isfinite(c_star))
        throw DomainError("threshold must be a finite non-negative value");
    if (!(tau > 0.0) || !(tau <= 1.0))
        throw DomainError("surviving fraction must lie in (0, 1]");
}

}  // namespace

bool is_self_decodable(double c_star, double tau) {
    check_domain(c_star, tau);
    // -expm1(-c) keeps the boundary sharp for small thresholds.
    return tau > -std::expm1(-c_star);
}

double punctured_threshold(double c_star, double tau) {
    if (!is_self_decodable(c_star, tau))
        throw NotSelfDecodable(
            "surviving fraction too small for the code threshold");
    // chi = ln[ tau / (e^{-c} - (1 - tau)) ]; the denominator equals
    // tau - (1 - e^{-c}) > 0 by the self-decodable condition.
    const double denom = tau + std::expm1(-c_star);
    return std::log(tau / denom);
}

double effective_listen_fraction(double c_star, double theta, double tau0,
                                 double margin) {
    check_domain(c_star, tau0);
    if (!(margin >= 0.0) || !std::isfinite(margin))
        throw DomainError("margin must be finite and non-negative");
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw DomainError("SNR must be finite and positive");
    if (!(theta > punctured_threshold(c_star, tau0)))
        throw NotReliable("SNR does not exceed the listening threshold");
    const double lo = -std::expm1(-c_star) / -std::expm1(-theta);
    const double tau_eff = lo * (1.0 + margin);
    if (!(tau_eff < tau0))
        throw MarginTooLarge("inflated fraction reaches the original one");
    return tau_eff;
}

double adjusted_threshold(double c_star, double tau0, double tau_d) {
    check_domain(c_star, tau0);
    if (!(tau_d >= 0.0) || !std::isfinite(tau_d))
        throw DomainError("latency fraction must be finite and non-negative");
    if (!(tau0 - tau_d > 0.0))
        throw NotSelfDecodable("latency leaves no listening fraction");
    return punctured_threshold(c_star, tau0 - tau_d);
}

}  // namespace ircc
