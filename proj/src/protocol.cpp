#include "ircc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ircc/errors.hpp"

namespace ircc {

namespace {

constexpr int kMaxSlots = 20;  // exhaustive subset enumeration cap

void check_node_count(int m) {
    if (m < 1) throw DomainError("slot count must be at least 1");
    if (m > kMaxSlots) throw TooManyHelpers("more than 20 slots requested");
}

}  // namespace

double Geometry::distance(int i, int j) const {
    if (i < 0 || i >= m || j < 1 || j > m)
        throw DomainError("geometry index out of range");
    return dist[static_cast<std::size_t>(i) * m + (j - 1)];
}

void validate_geometry(const Geometry& g) {
    check_node_count(g.m);
    if (!(g.path_loss > 0.0) || !std::isfinite(g.path_loss))
        throw DomainError("path-loss exponent must be positive");
    if (!(g.symbol_energy > 0.0) || !std::isfinite(g.symbol_energy))
        throw DomainError("symbol energy must be positive");
    if (g.dist.size() != static_cast<std::size_t>(g.m) * g.m)
        throw DomainError("distance matrix has the wrong shape");
    for (double v : g.dist)
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("distances must be positive and finite");
}

Geometry geometry_from_matrix(int m, const std::vector<double>& entries,
                              double path_loss, double symbol_energy) {
    Geometry g;
    g.m = m;
    g.path_loss = path_loss;
    g.symbol_energy = symbol_energy;
    g.dist = entries;
    validate_geometry(g);
    return g;
}

Geometry geometry_from_profile(int m, double r, double d, double big_d,
                               double path_loss, double symbol_energy) {
    check_node_count(m);
    if (m > 1 && (!(r > 0.0) || !(d > 0.0)))
        throw DomainError("hop distances must be positive");
    if (!(big_d > 0.0))
        throw DomainError("sender-destination distance must be positive");
    Geometry g;
    g.m = m;
    g.path_loss = path_loss;
    g.symbol_energy = symbol_energy;
    g.dist.assign(static_cast<std::size_t>(m) * m, m > 1 ? r : big_d);
    for (int i = 0; i < m; ++i)
        g.dist[static_cast<std::size_t>(i) * m + (m - 1)] = i == 0 ? big_d : d;
    validate_geometry(g);
    return g;
}

std::vector<std::string> geometry_warnings(const Geometry& g) {
    validate_geometry(g);
    std::vector<std::string> out;
    const double d0m = g.distance(0, g.m);
    for (int j = 1; j < g.m; ++j) {
        const double d0j = g.distance(0, j);
        const double djm = g.distance(j, g.m);
        if (djm < std::abs(d0m - d0j) - 1e-12 || djm > d0m + d0j + 1e-12) {
            std::ostringstream os;
            os << "helper " << j << ": distances (" << d0j << ", " << djm
               << ", " << d0m << ") violate the triangle inequality";
            out.push_back(os.str());
        }
    }
    return out;
}

bool try_hop_profile(const Geometry& g, HopProfile& out) {
    validate_geometry(g);
    out = HopProfile{};
    out.big_d = g.distance(0, g.m);
    if (g.m == 1) return true;
    out.r = g.distance(0, 1);
    out.d = g.distance(1, g.m);
    for (int j = 1; j < g.m; ++j) {
        if (std::abs(g.distance(0, j) - out.r) > 1e-12 * out.r) return false;
        if (std::abs(g.distance(j, g.m) - out.d) > 1e-12 * out.d) return false;
    }
    return true;
}

double SnrTable::at(int i, int j) const {
    if (i < 0 || i >= m || j < 1 || j > m)
        throw DomainError("SNR index out of range");
    return snr[static_cast<std::size_t>(i) * m + (j - 1)];
}

std::vector<double> SnrTable::broadcast() const {
    std::vector<double> out;
    for (int j = 1; j < m; ++j) out.push_back(at(0, j));
    return out;
}

std::vector<double> SnrTable::downlink() const {
    std::vector<double> out;
    for (int i = 0; i < m; ++i) out.push_back(at(i, m));
    return out;
}

SnrTable link_snrs(const Geometry& g) {
    validate_geometry(g);
    SnrTable t;
    t.m = g.m;
    t.snr.reserve(g.dist.size());
    for (double d : g.dist)
        t.snr.push_back(g.symbol_energy * std::pow(d, -g.path_loss));
    return t;
}

void validate_coop(const CoopConfig& cfg) {
    check_node_count(cfg.m);
    if (cfg.taus.size() != static_cast<std::size_t>(cfg.m))
        throw DomainError("slot fractions must match the slot count");
    double sum = 0.0;
    for (double t : cfg.taus) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw DomainError("slot fractions must be positive");
        sum += t;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw DomainError("slot fractions must sum to 1");
}

bool all_self_decodable(const CoopConfig& cfg, double c_star) {
    validate_coop(cfg);
    if (!(c_star >= 0.0) || !std::isfinite(c_star))
        throw DomainError("threshold must be a finite non-negative value");
    const double edge = -std::expm1(-c_star);
    for (double t : cfg.taus)
        if (!(t > edge)) return false;
    return true;
}

std::uint32_t mask_of(const ReliableSet& f, int m) {
    check_node_count(m);
    std::uint32_t mask = 0;
    int prev = 0;
    for (int j : f.members) {
        if (j <= prev || j >= m)
            throw InvalidMember("reliable set must hold increasing helper indices");
        mask |= 1u << (j - 1);
        prev = j;
    }
    return mask;
}

ReliableSet set_from_mask(std::uint32_t mask, int m) {
    check_node_count(m);
    if (m < 32 && mask >> (m - 1))
        throw InvalidMember("mask addresses nonexistent helpers");
    ReliableSet f;
    for (int j = 1; j < m; ++j)
        if (mask & (1u << (j - 1))) f.members.push_back(j);
    return f;
}

double ReliableSetDist::prob_of(const ReliableSet& f) const {
    return prob.at(mask_of(f, m));
}

ReliableSetDist reliable_set_prob(const CoopConfig& cfg,
                                  const std::vector<double>& broadcast_snrs,
                                  double chi0) {
    validate_coop(cfg);
    if (broadcast_snrs.size() != static_cast<std::size_t>(cfg.m - 1))
        throw DomainError("need one broadcast SNR per helper");
    if (!(chi0 >= 0.0) || !std::isfinite(chi0))
        throw DomainError("listening threshold must be finite and non-negative");

    // Per-helper decoding probability under Rayleigh fading: the
    // instantaneous SNR nu*avg exceeds chi0 with probability e^{-chi0/avg}.
    std::vector<double> p_ok;
    for (double s : broadcast_snrs) {
        if (!(s > 0.0) || !std::isfinite(s))
            throw DomainError("SNRs must be positive and finite");
        p_ok.push_back(std::exp(-chi0 / s));
    }

    ReliableSetDist dist;
    dist.m = cfg.m;
    dist.prob.assign(std::size_t{1} << (cfg.m - 1), 1.0);
    for (std::uint32_t mask = 0; mask < dist.prob.size(); ++mask) {
        double p = 1.0;
        for (int j = 1; j < cfg.m; ++j)
            p *= (mask & (1u << (j - 1))) ? p_ok[j - 1] : 1.0 - p_ok[j - 1];
        dist.prob[mask] = p;
    }
    return dist;
}

Schedule schedule(const ReliableSet& f, int m) {
    const std::uint32_t mask = mask_of(f, m);
    Schedule s;
    s.slot_tx.assign(m, 0);
    for (int j = 1; j < m; ++j)
        if (mask & (1u << (j - 1))) s.slot_tx[j] = j;
    return s;
}

double avg_bhattacharyya(const std::vector<double>& nu, const ReliableSet& f,
                         const CoopConfig& cfg,
                         const std::vector<double>& downlink_snrs) {
    validate_coop(cfg);
    if (nu.size() != static_cast<std::size_t>(cfg.m) ||
        downlink_snrs.size() != static_cast<std::size_t>(cfg.m))
        throw DomainError("need one fading power and SNR per transmitter");
    const std::uint32_t mask = mask_of(f, cfg.m);
    for (int j = 1; j < cfg.m; ++j) {
        if (!(mask & (1u << (j - 1)))) continue;
        if (!(nu[j] >= 0.0)) throw DomainError("fading powers must be non-negative");
    }
    if (!(nu[0] >= 0.0)) throw DomainError("fading powers must be non-negative");

    // The sender covers its own slot plus every silent helper's slot; each
    // reliable helper covers its own.  Weights therefore sum to 1.
    double sender_weight = 1.0;
    double acc = 0.0;
    for (int j = 1; j < cfg.m; ++j) {
        if (!(mask & (1u << (j - 1)))) continue;
        sender_weight -= cfg.taus[j];
        acc += cfg.taus[j] * std::exp(-nu[j] * downlink_snrs[j]);
    }
    // Exact weights sum to 1; rounding can spill one ulp past it.
    return std::min(1.0, sender_weight * std::exp(-nu[0] * downlink_snrs[0]) + acc);
}

void validate_scenario(const Scenario& sc) {
    validate_geometry(sc.geometry);
    validate_coop(sc.coop);
    if (sc.geometry.m != sc.coop.m)
        throw DomainError("geometry and slot plan disagree on the slot count");
    if (!(sc.c_star > 0.0) || !std::isfinite(sc.c_star))
        throw DomainError("code threshold must be positive and finite");
}

namespace {

using nlohmann::json;

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
    if (!obj.is_object()) throw MalformedFile(std::string(where) + " must be an object");
    for (const char* k : required)
        if (!obj.contains(k))
            throw MalformedFile(std::string(where) + " is missing field '" + k + "'");
    for (const auto& item : obj.items()) {
        const std::string& k = item.key();
        const bool known =
            std::any_of(required.begin(), required.end(),
                        [&](const char* r) { return k == r; }) ||
            std::any_of(optional.begin(), optional.end(),
                        [&](const char* o) { return k == o; });
        if (!known)
            throw MalformedFile(std::string(where) + " has unknown field '" + k + "'");
    }
}

double number_field(const json& obj, const char* where, const char* key) {
    const json& v = obj.at(key);
    if (!v.is_number())
        throw MalformedFile(std::string(where) + "." + key + " must be a number");
    return v.get<double>();
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw MalformedFile("cannot open scenario file " + file.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw MalformedFile(std::string("scenario file is not valid JSON: ") + e.what());
    }

    Scenario sc;
    try {
        require_keys(doc, "scenario", {"schema_version", "geometry", "coop", "code"},
                     {"seed"});
        if (!doc.at("schema_version").is_number_integer() ||
            doc.at("schema_version").get<int>() != 1)
            throw MalformedFile("unsupported scenario schema_version");

        const json& coop = doc.at("coop");
        require_keys(coop, "coop", {"m", "taus"});
        if (!coop.at("m").is_number_integer())
            throw MalformedFile("coop.m must be an integer");
        const int m = coop.at("m").get<int>();
        if (m < 1) throw MalformedFile("coop.m must be at least 1");
        sc.coop.m = m;
        if (!coop.at("taus").is_array())
            throw MalformedFile("coop.taus must be an array");
        for (const json& t : coop.at("taus")) {
            if (!t.is_number()) throw MalformedFile("coop.taus entries must be numbers");
            sc.coop.taus.push_back(t.get<double>());
        }

        const json& geo = doc.at("geometry");
        require_keys(geo, "geometry",
                     {"mode", "path_loss", "symbol_energy"},
                     {"r", "d", "D", "distances"});
        const double path_loss = number_field(geo, "geometry", "path_loss");
        const double energy = number_field(geo, "geometry", "symbol_energy");
        if (!geo.at("mode").is_string())
            throw MalformedFile("geometry.mode must be a string");
        const std::string mode = geo.at("mode").get<std::string>();
        if (mode == "profile") {
            require_keys(geo, "profile geometry",
                         {"mode", "path_loss", "symbol_energy", "r", "d", "D"});
            sc.geometry = geometry_from_profile(
                m, number_field(geo, "geometry", "r"),
                number_field(geo, "geometry", "d"),
                number_field(geo, "geometry", "D"), path_loss, energy);
        } else if (mode == "matrix") {
            require_keys(geo, "matrix geometry",
                         {"mode", "path_loss", "symbol_energy", "distances"});
            const json& rows = geo.at("distances");
            if (!rows.is_array() || rows.size() != static_cast<std::size_t>(m))
                throw MalformedFile("geometry.distances must have one row per transmitter");
            std::vector<double> entries;
            for (const json& row : rows) {
                if (!row.is_array() || row.size() != static_cast<std::size_t>(m))
                    throw MalformedFile("geometry.distances rows must have one entry per receiver");
                for (const json& v : row) {
                    if (!v.is_number())
                        throw MalformedFile("geometry.distances entries must be numbers");
                    entries.push_back(v.get<double>());
                }
            }
            sc.geometry = geometry_from_matrix(m, entries, path_loss, energy);
        } else {
            throw MalformedFile("geometry.mode must be 'profile' or 'matrix'");
        }

        const json& code = doc.at("code");
        require_keys(code, "code", {"c_star"});
        sc.c_star = number_field(code, "code", "c_star");

        if (doc.contains("seed")) {
            if (!doc.at("seed").is_number_unsigned())
                throw MalformedFile("seed must be a non-negative integer");
            sc.seed = doc.at("seed").get<std::uint64_t>();
            sc.has_seed = true;
        }
    } catch (const json::exception& e) {
        throw MalformedFile(std::string("scenario file structure error: ") + e.what());
    }

    try {
        validate_scenario(sc);
    } catch (const Error& e) {
        throw MalformedFile(std::string("scenario invalid: ") + e.what());
    }
    return sc;
}

}  // namespace ircc
