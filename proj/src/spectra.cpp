#include "ircc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"

#include "ircc/errors.hpp"
#include "ircc/numerics.hpp"

namespace ircc {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kLog2E = 1.4426950408889634;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Piecewise-linear evaluation without domain checks; idx is a hint for the
// segment search.
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return ys.front();
    if (it == xs.end()) return ys.back();
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

// Dense evaluation grid: the sample points united with a uniform
// refinement grid, plus running maxima that make the restricted sups O(1)
// per query.  On each linear segment both r/delta and r - rRB attain their
// maximum at an endpoint, so this grid evaluates the sups of the
// interpolant exactly (cut points of the restriction band are added by the
// queries themselves).
struct EvalGrid {
    std::vector<double> x;
    std::vector<double> ratio;      // r/x
    std::vector<double> gap;        // r - rRB, nats
    std::vector<double> pre_ratio;  // max ratio over x[0..i]
    std::vector<double> suf_ratio;  // max ratio over x[i..]
    std::vector<double> gap_left;   // max gap over x[i..center]
    std::vector<double> gap_right;  // max gap over x[center+1..i]
    std::ptrdiff_t center = -1;     // last index with x <= 0.5
    double rate = 0.0;
};

constexpr int kRefinement = 100000;

EvalGrid build_grid(const WeightSpectrum& ws) {
    EvalGrid g;
    g.rate = ws.rate;
    const double d1 = ws.delta.front();
    const double dN = ws.delta.back();
    g.x.reserve(ws.delta.size() + kRefinement + 1);
    std::size_t si = 0;
    for (int k = 0; k <= kRefinement; ++k) {
        const double u = d1 + (dN - d1) * static_cast<double>(k) / kRefinement;
        while (si < ws.delta.size() && ws.delta[si] <= u) {
            if (g.x.empty() || ws.delta[si] > g.x.back()) g.x.push_back(ws.delta[si]);
            ++si;
        }
        if (g.x.empty() || u > g.x.back()) g.x.push_back(u);
    }
    while (si < ws.delta.size()) {
        if (ws.delta[si] > g.x.back()) g.x.push_back(ws.delta[si]);
        ++si;
    }

    const std::size_t n = g.x.size();
    g.ratio.resize(n);
    g.gap.resize(n);
    const double off = (1.0 - ws.rate) * kLn2;
    for (std::size_t i = 0; i < n; ++i) {
        const double rv = interp(ws.delta, ws.r, g.x[i]);
        g.ratio[i] = rv / g.x[i];
        g.gap[i] = rv - (binary_entropy_nats(std::min(g.x[i], 1.0)) - off);
    }
    g.pre_ratio.resize(n);
    g.suf_ratio.resize(n);
    double m = kNegInf;
    for (std::size_t i = 0; i < n; ++i) g.pre_ratio[i] = m = std::max(m, g.ratio[i]);
    m = kNegInf;
    for (std::size_t i = n; i-- > 0;) g.suf_ratio[i] = m = std::max(m, g.ratio[i]);

    g.center = std::upper_bound(g.x.begin(), g.x.end(), 0.5) - g.x.begin() - 1;
    g.gap_left.assign(n, kNegInf);
    g.gap_right.assign(n, kNegInf);
    m = kNegInf;
    for (std::ptrdiff_t i = g.center; i >= 0; --i)
        g.gap_left[i] = m = std::max(m, g.gap[i]);
    m = kNegInf;
    for (std::size_t i = g.center + 1; i < n; ++i)
        g.gap_right[i] = m = std::max(m, g.gap[i]);
    return g;
}

// sup of r/delta over the kept region (0, 0.5-P] u (0.5+P, 1].
double restricted_ratio_sup(const WeightSpectrum& ws, const EvalGrid& g, double p) {
    const double lo = 0.5 - p, hi = 0.5 + p;
    double best = kNegInf;
    const auto lo_it = std::upper_bound(g.x.begin(), g.x.end(), lo);
    if (lo_it != g.x.begin()) best = g.pre_ratio[lo_it - g.x.begin() - 1];
    if (lo >= ws.delta.front() && lo <= ws.delta.back())
        best = std::max(best, interp(ws.delta, ws.r, lo) / lo);
    const auto hi_it = std::lower_bound(g.x.begin(), g.x.end(), hi);
    if (hi_it != g.x.end())
        best = std::max(best, g.suf_ratio[hi_it - g.x.begin()]);
    if (hi >= ws.delta.front() && hi <= ws.delta.back())
        best = std::max(best, interp(ws.delta, ws.r, hi) / hi);
    return best;
}

// Spectral distance restricted to the excluded band (0.5-P, 0.5+P], bits.
double restricted_gap_sup(const WeightSpectrum& ws, const EvalGrid& g, double p) {
    if (p == 0.0) return 0.0;
    const double off = (1.0 - ws.rate) * kLn2;
    const double lo = 0.5 - p, hi = 0.5 + p;
    double best = kNegInf;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.x.size());
    std::ptrdiff_t i0 = std::lower_bound(g.x.begin(), g.x.end(), lo) - g.x.begin();
    std::ptrdiff_t i1 = std::upper_bound(g.x.begin(), g.x.end(), hi) - g.x.begin() - 1;
    if (i0 <= g.center && g.center >= 0) best = std::max(best, g.gap_left[i0]);
    if (i1 > g.center && i1 < n) best = std::max(best, g.gap_right[i1]);
    for (double cut : {lo, hi}) {
        if (cut >= ws.delta.front() && cut <= ws.delta.back()) {
            const double rv = interp(ws.delta, ws.r, cut);
            best = std::max(best, rv - (binary_entropy_nats(cut) - off));
        }
    }
    // Band entirely outside the sampled support: the restriction excludes
    // no codewords, so the distance correction vanishes.
    if (best == kNegInf) return 0.0;
    return best * kLog2E;
}

double feasibility_rhs(double rate, double xi_p) {
    const double room = 1.0 - rate - xi_p;
    if (!(room > 0.0)) return std::numeric_limits<double>::infinity();
    return -std::log(room);
}

void structural_checks(const WeightSpectrum& ws) {
    if (!(std::isfinite(ws.rate) && ws.rate > 0.0 && ws.rate < 1.0))
        throw MalformedFile("spectrum: rate must be in (0,1)");
    if (ws.delta.size() != ws.r.size())
        throw MalformedFile("spectrum: delta/r length mismatch");
    if (ws.delta.size() < 16)
        throw MalformedFile("spectrum: need at least 16 samples");
    if (!(ws.delta.front() > 0.0))
        throw MalformedFile("spectrum: first delta must be positive");
    for (std::size_t i = 0; i < ws.delta.size(); ++i) {
        if (!std::isfinite(ws.delta[i]) || !std::isfinite(ws.r[i]))
            throw MalformedFile("spectrum: non-finite sample");
        if (i > 0 && !(ws.delta[i] > ws.delta[i - 1]))
            throw MalformedFile("spectrum: delta samples must be strictly increasing");
    }
    if (std::abs(ws.delta.back() - 1.0) > 1e-9)
        throw MalformedFile("spectrum: last delta must equal 1");
}

}  // namespace

void validate_spectrum(const WeightSpectrum& ws) {
    structural_checks(ws);
    const double floor = -std::log(1.0 - ws.rate);
    if (ub_threshold(ws) < floor - 1e-9)
        throw InconsistentSpectrum(
            "spectrum '" + ws.label + "': union-bound threshold " +
            std::to_string(ub_threshold(ws)) + " below -ln(1-R) = " +
            std::to_string(floor));
}

double random_binary_exponent(double rate, double delta) {
    if (!(rate > 0.0 && rate < 1.0))
        throw DomainError("random_binary_exponent: rate outside (0,1)");
    return binary_entropy_nats(delta) - (1.0 - rate) * kLn2;
}

WeightSpectrum random_binary_spectrum(double rate, int n_samples,
                                      const std::string& label) {
    if (n_samples < 16)
        throw DomainError("random_binary_spectrum: need at least 16 samples");
    WeightSpectrum ws;
    ws.rate = rate;
    ws.label = label.empty() ? "random-binary R=" + std::to_string(rate) : label;
    ws.delta.resize(n_samples);
    ws.r.resize(n_samples);
    for (int k = 1; k <= n_samples; ++k) {
        const double d = static_cast<double>(k) / n_samples;
        ws.delta[k - 1] = d;
        ws.r[k - 1] = random_binary_exponent(rate, d);
    }
    ws.delta.back() = 1.0;
    return ws;
}

double spectrum_r(const WeightSpectrum& ws, double delta) {
    if (!(delta >= ws.delta.front() && delta <= ws.delta.back()))
        throw DomainError("spectrum_r: delta outside sampled support");
    return interp(ws.delta, ws.r, delta);
}

double sf_distance(const WeightSpectrum& ws) {
    // Both the interpolant and rRB are evaluated at sample points only: on
    // each segment the difference (linear minus concave) is convex, so its
    // maximum over the segment sits at an endpoint.
    const double off = (1.0 - ws.rate) * kLn2;
    double best = kNegInf;
    for (std::size_t i = 0; i < ws.delta.size(); ++i) {
        const double d = std::min(ws.delta[i], 1.0);
        best = std::max(best, ws.r[i] - (binary_entropy_nats(d) - off));
    }
    return best * kLog2E;
}

double ub_threshold(const WeightSpectrum& ws) {
    // r/delta is monotone on each linear segment, so the sup over the whole
    // interpolant is attained at a sample point.
    double best = kNegInf;
    for (std::size_t i = 0; i < ws.delta.size(); ++i)
        best = std::max(best, ws.r[i] / ws.delta[i]);
    return best;
}

RestrictedQuantities restricted_quantities(const WeightSpectrum& ws, double p) {
    if (!(p >= 0.0 && p < 0.5))
        throw DomainError("restricted_quantities: P outside [0, 0.5)");
    structural_checks(ws);
    const EvalGrid g = build_grid(ws);
    return {restricted_ratio_sup(ws, g, p), restricted_gap_sup(ws, g, p)};
}

CodeThresholds simple_threshold(const WeightSpectrum& ws) {
    validate_spectrum(ws);
    const EvalGrid g = build_grid(ws);

    auto c_p = [&](double p) { return restricted_ratio_sup(ws, g, p); };
    auto xi_p = [&](double p) { return restricted_gap_sup(ws, g, p); };
    auto feasible = [&](double p) {
        return c_p(p) >= feasibility_rhs(ws.rate, xi_p(p)) - 1e-12;
    };

    // Coarse scan.  c_P is non-increasing and the feasibility right-hand
    // side non-decreasing in P, so the minimum over the feasible set sits
    // at the feasibility edge; the scan tolerates small numerical wiggle by
    // keeping the best feasible point seen.
    const int kCoarse = 512;
    double best_p = -1.0, best_c = std::numeric_limits<double>::infinity();
    double edge_lo = -1.0, edge_hi = -1.0;
    bool prev_feasible = false;
    for (int k = 0; k < kCoarse; ++k) {
        const double p = 0.5 * k / kCoarse;
        const bool ok = feasible(p);
        if (ok) {
            const double c = c_p(p);
            if (c < best_c - 1e-15) {
                best_c = c;
                best_p = p;
            }
        } else if (prev_feasible && edge_lo < 0.0) {
            edge_lo = 0.5 * (k - 1) / kCoarse;
            edge_hi = p;
        }
        prev_feasible = ok;
    }
    if (best_p < 0.0)
        throw InfeasibleSpectrum("simple_threshold: no feasible partition parameter");
    if (edge_lo < 0.0 && prev_feasible) {
        // Feasible all the way to the end of the grid; refine toward 0.5.
        edge_lo = 0.5 * (kCoarse - 1) / kCoarse;
        edge_hi = std::nextafter(0.5, 0.0);
    }

    // Bisect the feasibility edge: the restricted objective is monotone
    // there, which makes bisection the degenerate (and exact) form of the
    // usual bracket refinement.
    if (edge_lo >= 0.0) {
        double lo = edge_lo, hi = edge_hi;
        if (!feasible(lo)) lo = best_p;
        if (feasible(lo)) {
            for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (feasible(mid))
                    lo = mid;
                else
                    hi = mid;
            }
            const double c = c_p(lo);
            if (c < best_c - 1e-15) {
                best_c = c;
                best_p = lo;
            }
        }
    }

    // Ties toward smaller P: find the first P whose objective already
    // equals the optimum (c_P is non-increasing, so bisection applies).
    const double tol = 1e-12 * std::max(1.0, std::abs(best_c));
    double lo = 0.0, hi = best_p;
    if (c_p(0.0) <= best_c + tol) {
        best_p = 0.0;
    } else {
        for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (c_p(mid) <= best_c + tol)
                hi = mid;
            else
                lo = mid;
        }
        best_p = hi;
    }

    CodeThresholds out;
    out.rate = ws.rate;
    out.c0 = ub_threshold(ws);
    out.c_star = c_p(best_p);
    out.p_star = best_p;
    out.xi_p_star = xi_p(best_p);
    return out;
}

namespace {

using nlohmann::json;

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const char* context) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return it.key() == k;
            }) == allowed.end())
            throw MalformedFile(std::string(context) + ": unknown field '" +
                                it.key() + "'");
    }
    for (const char* k : allowed) {
        if (!j.contains(k))
            throw MalformedFile(std::string(context) + ": missing field '" +
                                std::string(k) + "'");
    }
}

}  // namespace

WeightSpectrum load_spectrum(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw MalformedFile("spectrum: cannot open " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw MalformedFile("spectrum " + file.string() + ": " + e.what());
    }
    try {
        if (!j.is_object()) throw MalformedFile("spectrum: top level must be an object");
        require_keys(j, {"schema_version", "label", "rate", "samples"}, "spectrum");
        if (!j["schema_version"].is_number_integer() ||
            j["schema_version"].get<int>() != 1)
            throw MalformedFile("spectrum: unsupported schema_version");
        if (!j["label"].is_string()) throw MalformedFile("spectrum: label must be a string");
        if (!j["rate"].is_number()) throw MalformedFile("spectrum: rate must be a number");
        if (!j["samples"].is_array()) throw MalformedFile("spectrum: samples must be an array");
        WeightSpectrum ws;
        ws.label = j["label"].get<std::string>();
        ws.rate = j["rate"].get<double>();
        for (const auto& s : j["samples"]) {
            if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
                throw MalformedFile("spectrum: each sample must be a [delta, r] pair");
            ws.delta.push_back(s[0].get<double>());
            ws.r.push_back(s[1].get<double>());
        }
        validate_spectrum(ws);
        ws.delta.back() = 1.0;
        return ws;
    } catch (const json::exception& e) {
        throw MalformedFile("spectrum " + file.string() + ": " + e.what());
    }
}

void write_spectrum(const std::filesystem::path& file, const WeightSpectrum& ws) {
    json samples = json::array();
    for (std::size_t i = 0; i < ws.delta.size(); ++i)
        samples.push_back({ws.delta[i], ws.r[i]});
    const json j = {{"schema_version", 1},
                    {"label", ws.label},
                    {"rate", ws.rate},
                    {"samples", samples}};
    std::ofstream out(file);
    if (!out) throw MalformedFile("spectrum: cannot write " + file.string());
    out << j.dump(1) << "\n";
}

}  // namespace ircc
