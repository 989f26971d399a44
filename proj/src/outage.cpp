#include "ircc/outage.hpp"

#include <algorithm>
#include <cmath>

#include "ircc/errors.hpp"
#include "ircc/numerics.hpp"
#include "ircc/puncturing.hpp"
#include "ircc/rng.hpp"

namespace ircc {

namespace {

const char* fer_kind_names[] = {"closed-form", "quadrature", "mc-integral",
                                "simulation", "asymptotic"};

void check_threshold(double c_star) {
    if (!(c_star > 0.0) || !std::isfinite(c_star))
        throw DomainError("code threshold must be positive and finite");
}

void check_snr(double snr) {
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw DomainError("SNRs must be positive and finite");
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

const char* fer_kind_name(FerKind kind) {
    return fer_kind_names[static_cast<int>(kind)];
}

bool FerEstimate::has_flag(const std::string& name) const {
    return std::find(flags.begin(), flags.end(), name) != flags.end();
}

FerEstimate outage_m1(double c_star, double snr) {
    check_threshold(c_star);
    check_snr(snr);
    FerEstimate est;
    est.kind = FerKind::ClosedForm;
    est.value = -std::expm1(-c_star / snr);
    return est;
}

FerEstimate outage_m2_cooperative(double c_star, double tau0, double tau1,
                                  double snr02, double snr12) {
    check_threshold(c_star);
    check_snr(snr02);
    check_snr(snr12);
    if (!(tau0 > 0.0) || !(tau1 > 0.0) || std::abs(tau0 + tau1 - 1.0) > 1e-12)
        throw DomainError("slot fractions must be positive and sum to 1");
    const double threshold = std::exp(-c_star);
    if (tau0 > threshold || tau1 > threshold)
        throw AssumptionViolated(
            "two-slot quadrature needs both slot fractions at or below e^{-c*}");

    // Write the two fading powers as uniforms x = e^{-nu0}, y = e^{-nu1}.
    // The outage event tau0 x^s02 + tau1 y^s12 >= e^{-c*} is impossible for
    // x below omega, and above it the y-threshold is an explicit CDF value.
    const double omega = std::pow((threshold - tau1) / tau0, 1.0 / snr02);
    auto y_fraction = [&](double x) {
        const double bracket = clamp01((threshold - tau0 * std::pow(x, snr02)) / tau1);
        return std::pow(bracket, 1.0 / snr12);
    };
    FerEstimate est;
    est.kind = FerKind::Quadrature;
    double integral = 0.0;
    if (omega < 1.0) integral = integrate(y_fraction, omega, 1.0, 1e-9);
    est.value = clamp01(1.0 - omega - integral);
    return est;
}

FerEstimate outage_given_set(const CoopConfig& cfg, const ReliableSet& f,
                             const std::vector<double>& downlink_snrs,
                             double c_star, std::uint64_t n_samples,
                             std::uint64_t seed) {
    validate_coop(cfg);
    mask_of(f, cfg.m);  // membership validation
    check_threshold(c_star);
    if (downlink_snrs.size() != static_cast<std::size_t>(cfg.m))
        throw DomainError("need one destination SNR per transmitter");
    for (double s : downlink_snrs) check_snr(s);
    if (n_samples < 10000)
        throw DomainError("need at least 10^4 samples");

    const double threshold = std::exp(-c_star);

    // The event requires every contributing link's fade to sit inside a
    // per-link box: if node i carries weight w_i of the frame, outage
    // forces w_i e^{-nu_i snr_i} >= e^{-c*} - (1 - w_i), i.e. nu_i <=
    // chi(w_i)/snr_i whenever w_i clears the self-decodable edge (the
    // bound is vacuous otherwise).  Sampling the fades as truncated
    // exponentials on those boxes and multiplying by the exact box
    // probability keeps the estimator unbiased while its relative error
    // stays flat as the SNRs grow.
    std::vector<int> active{0};
    for (int j : f.members) active.push_back(j);
    std::vector<double> weight(cfg.m, 0.0);
    weight[0] = 1.0;
    for (int j : f.members) {
        weight[j] = cfg.taus[j];
        weight[0] -= cfg.taus[j];
    }
    std::vector<double> floor_x(cfg.m, 0.0);  // e^{-bound}; 0 when unbounded
    double box_prob = 1.0;
    for (int node : active) {
        if (is_self_decodable(c_star, weight[node])) {
            const double bound =
                punctured_threshold(c_star, weight[node]) / downlink_snrs[node];
            floor_x[node] = std::exp(-bound);
            box_prob *= -std::expm1(-bound);
        }
    }

    std::uint64_t errors = 0;
    std::vector<double> nu(cfg.m, 0.0);
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        CounterRng rng(seed, s >> 1);
        const bool mirrored = s & 1;
        for (int node : active) {
            const double u = mirrored ? rng.unit_mirror_at(node) : rng.unit_at(node);
            // e^{-nu} uniform on (floor_x, 1]: exactly the exponential law
            // conditioned on the box (the whole half-line when floor_x=0).
            nu[node] = -std::log(floor_x[node] + u * (1.0 - floor_x[node]));
        }
        if (avg_bhattacharyya(nu, f, cfg, downlink_snrs) >= threshold) ++errors;
    }

    FerEstimate est;
    est.kind = FerKind::MonteCarloIntegral;
    est.samples = n_samples;
    est.value = box_prob * (static_cast<double>(errors) / n_samples);
    est.half_width = box_prob * wilson_half_width(errors, n_samples, kZ99);
    return est;
}

FerEstimate fer_bound(const CoopConfig& cfg, const Geometry& geom,
                      double c_star, std::uint64_t n_samples,
                      std::uint64_t seed) {
    validate_coop(cfg);
    validate_geometry(geom);
    if (cfg.m != geom.m)
        throw DomainError("geometry and slot plan disagree on the slot count");
    check_threshold(c_star);

    const SnrTable snr = link_snrs(geom);
    const std::vector<double> downlink = snr.downlink();
    const double chi0 = punctured_threshold(c_star, cfg.taus[0]);
    const ReliableSetDist dist = reliable_set_prob(cfg, snr.broadcast(), chi0);

    FerEstimate total;
    total.kind = cfg.m == 1 ? FerKind::ClosedForm
                            : (cfg.m == 2 ? FerKind::Quadrature
                                          : FerKind::MonteCarloIntegral);
    for (std::uint32_t mask = 0; mask < dist.prob.size(); ++mask) {
        FerEstimate term;
        if (mask == 0) {
            // Empty set: only the sender talks, so the average parameter is
            // a single exponential and the closed form is exact at any M.
            term = outage_m1(c_star, downlink[0]);
        } else if (cfg.m == 2) {
            try {
                term = outage_m2_cooperative(c_star, cfg.taus[0], cfg.taus[1],
                                             downlink[0], downlink[1]);
            } catch (const AssumptionViolated&) {
                term = outage_given_set(cfg, set_from_mask(mask, cfg.m), downlink,
                                        c_star, n_samples,
                                        detail::avalanche64(seed + mask));
                total.kind = FerKind::MonteCarloIntegral;
            }
        } else {
            term = outage_given_set(cfg, set_from_mask(mask, cfg.m), downlink,
                                    c_star, n_samples,
                                    detail::avalanche64(seed + mask));
        }
        const double p = dist.prob[mask];
        total.value += p * term.value;
        total.half_width += p * term.half_width;
        total.samples += term.samples;
    }
    total.value = clamp01(total.value);
    return total;
}

}  // namespace ircc
