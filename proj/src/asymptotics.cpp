#include "ircc/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "ircc/errors.hpp"
#include "ircc/puncturing.hpp"

namespace ircc {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Validates the shared preconditions of the high-SNR formulas and extracts
// the hop profile.
HopProfile asym_profile(const CoopConfig& cfg, const Geometry& geom,
                        double c_star) {
    validate_coop(cfg);
    validate_geometry(geom);
    if (cfg.m != geom.m)
        throw DomainError("geometry and slot plan disagree on the slot count");
    if (!(c_star > 0.0) || !std::isfinite(c_star))
        throw DomainError("code threshold must be positive and finite");
    HopProfile hp;
    if (!try_hop_profile(geom, hp))
        throw InvalidGeometry("high-SNR formulas need a symmetric hop profile");
    if (!all_self_decodable(cfg, c_star))
        throw HypothesisViolated(
            "every slot fraction must exceed 1 - e^{-c*} for the high-SNR bounds");
    return hp;
}

FerEstimate wrap_asym(double value) {
    FerEstimate est;
    est.kind = FerKind::AsymptoticBound;
    est.value = value;
    if (value > 0.1) est.flags.push_back(kFlagAsymptoteInvalid);
    return est;
}

}  // namespace

double theorem3_rhs(const std::vector<double>& taus, double c) {
    if (!(c > 0.0) || !(c < 1.0))
        throw DomainError("probability-scale threshold must lie in (0, 1)");
    if (taus.empty()) throw DomainError("need at least one weight");
    double sum = 0.0;
    for (double t : taus) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw DomainError("weights must be positive");
        sum += t;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError("weights must sum to 1");
    double product = 1.0;
    for (double t : taus) {
        const double denom = c - (1.0 - t);
        if (!(denom > 0.0))
            throw HypothesisViolated("every weight must exceed 1 - c");
        product *= std::log(t / denom);
    }
    return product / factorial(static_cast<int>(taus.size()));
}

FerEstimate fer_asym(ScenarioKind kind, const CoopConfig& cfg,
                     const Geometry& geom, double c_star) {
    const HopProfile hp = asym_profile(cfg, geom, c_star);
    const int m = cfg.m;
    const double L = geom.path_loss;
    const double e_pow_m = std::pow(geom.symbol_energy, m);

    if (kind == ScenarioKind::TransmitterClustering) {
        double chi_prod = 1.0;
        for (double t : cfg.taus) chi_prod *= punctured_threshold(c_star, t);
        const double value =
            std::pow(hp.big_d, m * L) / (e_pow_m * factorial(m)) * chi_prod;
        return wrap_asym(value);
    }
    if (kind == ScenarioKind::ReceiverClustering) {
        const double chi0 = punctured_threshold(c_star, cfg.taus[0]);
        const double value =
            std::pow(chi0, m - 1) * c_star / e_pow_m * std::pow(hp.big_d, m * L);
        return wrap_asym(value);
    }

    // General placement: every reliable set contributes one term whose
    // geometry factor counts a broadcast-stage failure per silent helper
    // (distance r), one relay hop per reliable helper (distance d), and
    // the sender-destination hop (distance D).
    const double chi0 = punctured_threshold(c_star, cfg.taus[0]);
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
        int k = 0;
        double tau_in_set = 0.0;
        double chi_prod = 1.0;
        for (int j = 1; j < m; ++j) {
            if (!(mask & (1u << (j - 1)))) continue;
            ++k;
            tau_in_set += cfg.taus[j];
            chi_prod *= punctured_threshold(c_star, cfg.taus[j]);
        }
        const double coeff = std::pow(chi0, m - k - 1) *
                             punctured_threshold(c_star, 1.0 - tau_in_set) /
                             factorial(k + 1) * chi_prod;
        const double geo = std::pow(
            std::pow(hp.r, m - k - 1) * std::pow(hp.d, k) * hp.big_d, L);
        total += coeff * geo;
    }
    return wrap_asym(total / e_pow_m);
}

FerEstimate fer_asym_small_cstar(const CoopConfig& cfg, const Geometry& geom,
                                 double c_star) {
    const HopProfile hp = asym_profile(cfg, geom, c_star);
    const int m = cfg.m;
    const double L = geom.path_loss;
    const double numer = std::pow(c_star, m) / std::pow(geom.symbol_energy, m);

    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
        int k = 0;
        double tau_in_set = 0.0;
        double tau_prod = 1.0;
        for (int j = 1; j < m; ++j) {
            if (!(mask & (1u << (j - 1)))) continue;
            ++k;
            tau_in_set += cfg.taus[j];
            tau_prod *= cfg.taus[j];
        }
        const double denom = std::pow(cfg.taus[0], m - k - 1) *
                             (1.0 - tau_in_set) * tau_prod * factorial(k + 1);
        const double geo = std::pow(
            std::pow(hp.r, m - k - 1) * std::pow(hp.d, k) * hp.big_d, L);
        total += geo / denom;
    }
    return wrap_asym(numer * total);
}

double diversity_estimate(const std::vector<std::pair<double, double>>& curve) {
    if (curve.size() < 4)
        throw InsufficientRange("need at least 4 curve points");
    double snr_min = curve.front().first, snr_max = curve.front().first;
    for (const auto& [snr, fer] : curve) {
        if (!(snr > 0.0) || !std::isfinite(snr))
            throw DomainError("SNRs must be positive and finite");
        if (!(fer > 0.0))
            throw InsufficientRange("every FER on the curve must be positive");
        snr_min = std::min(snr_min, snr);
        snr_max = std::max(snr_max, snr);
    }
    if (snr_max < 100.0 * snr_min * (1.0 - 1e-9))
        throw InsufficientRange("curve must span at least two SNR decades");

    // Fit only the top decade; lower points bend away from the asymptote.
    const double cutoff = snr_max / 10.0 * (1.0 - 1e-9);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& [snr, fer] : curve) {
        if (snr < cutoff) continue;
        const double x = std::log10(snr);
        const double y = -std::log10(fer);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2)
        throw InsufficientRange("need at least 2 points in the top SNR decade");
    const double det = n * sxx - sx * sx;
    if (!(det > 0.0))
        throw InsufficientRange("top-decade points are too close for a slope fit");
    return (n * sxy - sx * sy) / det;
}

double coding_gain_bound(const CoopConfig& cfg, const Geometry& geom,
                         double c_star) {
    const HopProfile hp = asym_profile(cfg, geom, c_star);
    const int m = cfg.m;
    const double L = geom.path_loss;
    const double r_ratio = m > 1 ? hp.r / hp.big_d : 1.0;
    const double d_ratio = m > 1 ? hp.d / hp.big_d : 1.0;

    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
        int k = 0;
        double tau_in_set = 0.0;
        double tau_prod = 1.0;
        for (int j = 1; j < m; ++j) {
            if (!(mask & (1u << (j - 1)))) continue;
            ++k;
            tau_in_set += cfg.taus[j];
            tau_prod *= cfg.taus[j];
        }
        const double geo =
            std::pow(std::pow(r_ratio, m - k - 1) * std::pow(d_ratio, k), L);
        const double denom = std::pow(cfg.taus[0], m - k - 1) *
                             (1.0 - tau_in_set) * tau_prod * factorial(k + 1);
        total += geo / denom;
    }
    return std::pow(total, -1.0 / m);
}

}  // namespace ircc
