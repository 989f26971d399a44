#include "ircc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ircc/errors.hpp"

namespace ircc {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1].  Kronrod nodes with
// even index embed the 7-point Gauss rule.
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};

constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};

constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct PanelResult {
    double kronrod;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double gauss = 0.0;
    double kronrod = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fx = f(c + h * kKronrodNodes[i]);
        kronrod += kKronrodWeights[i] * fx;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fx;
    }
    gauss *= h;
    kronrod *= h;
    // |K - G| overestimates the Kronrod error on smooth integrands, which
    // just costs a few extra panel splits; we prefer that to the sharper
    // QUADPACK estimate that can under-report.
    return {kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_intervals) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw DomainError("integrate: non-finite interval");
    if (!(abs_tol > 0.0)) throw DomainError("integrate: tolerance must be positive");
    if (a == b) return 0.0;

    struct Interval {
        double a, b, value, err;
    };
    PanelResult whole = gk15(f, a, b);
    std::vector<Interval> stack{{a, b, whole.kronrod, whole.err}};
    double total = whole.kronrod;
    double total_err = whole.err;
    int used = 1;

    while (total_err > abs_tol) {
        // Split the interval with the largest error estimate.
        auto worst = std::max_element(
            stack.begin(), stack.end(),
            [](const Interval& x, const Interval& y) { return x.err < y.err; });
        if (++used > max_intervals)
            throw DomainError("integrate: interval budget exhausted before tolerance");
        const Interval iv = *worst;
        const double mid = 0.5 * (iv.a + iv.b);
        if (mid <= iv.a || mid >= iv.b)
            throw DomainError("integrate: interval underflow before tolerance");
        PanelResult left = gk15(f, iv.a, mid);
        PanelResult right = gk15(f, mid, iv.b);
        total += left.kronrod + right.kronrod - iv.value;
        total_err += left.err + right.err - iv.err;
        *worst = {iv.a, mid, left.kronrod, left.err};
        stack.push_back({mid, iv.b, right.kronrod, right.err});
    }
    return total;
}

double binary_entropy_nats(double d) {
    if (!(d >= 0.0 && d <= 1.0)) throw DomainError("binary_entropy_nats: d outside [0,1]");
    if (d == 0.0 || d == 1.0) return 0.0;
    return -d * std::log(d) - (1.0 - d) * std::log(1.0 - d);
}

double log1p_exp(double t) {
    if (t > 0.0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

double wilson_half_width(std::int64_t errors, std::int64_t trials, double z) {
    if (trials <= 0) throw DomainError("wilson_half_width: trials must be positive");
    if (errors < 0 || errors > trials)
        throw DomainError("wilson_half_width: errors outside [0, trials]");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    return (z / (1.0 + z2 / n)) *
           std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
}

double binomial_half_width(double p_hat, std::int64_t trials, double z) {
    if (trials <= 0) throw DomainError("binomial_half_width: trials must be positive");
    const double p = std::clamp(p_hat, 0.0, 1.0);
    return z * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

namespace {

// Regularized lower incomplete gamma P(s, x) by series (x < s+1) or by
// continued fraction for the complement (x >= s+1).
double reg_lower_gamma(double s, double x) {
    if (x < 0.0 || s <= 0.0) throw DomainError("reg_lower_gamma: bad arguments");
    if (x == 0.0) return 0.0;
    const double log_pref = s * std::log(x) - x - std::lgamma(s);
    if (x < s + 1.0) {
        double term = 1.0 / s;
        double sum = term;
        for (int k = 1; k < 500; ++k) {
            term *= x / (s + k);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        return std::exp(log_pref) * sum;
    }
    // Lentz's algorithm for the continued fraction of Q(s, x).
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 - std::exp(log_pref) * h;
}

}  // namespace

double chi_square_sf(double x, int k) {
    if (k <= 0) throw DomainError("chi_square_sf: degrees of freedom must be positive");
    if (x < 0.0) return 1.0;
    return 1.0 - reg_lower_gamma(0.5 * k, 0.5 * x);
}

double db_from_linear(double x) {
    if (!(x > 0.0)) throw DomainError("db_from_linear: value must be positive");
    return 10.0 * std::log10(x);
}

double linear_from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace ircc
