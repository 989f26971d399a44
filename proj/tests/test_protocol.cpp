#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ircc/errors.hpp"
#include "ircc/protocol.hpp"
#include "ircc/puncturing.hpp"

using namespace ircc;
namespace fs = std::filesystem;

namespace {

CoopConfig uniform_coop(int m) {
    CoopConfig cfg;
    cfg.m = m;
    cfg.taus.assign(m, 1.0 / m);
    // Keep the sum exactly 1 regardless of rounding.
    cfg.taus.back() = 1.0;
    for (int i = 0; i + 1 < m; ++i) cfg.taus.back() -= cfg.taus[i];
    return cfg;
}

fs::path write_temp(const char* name, const std::string& body) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << body;
    return p;
}

const char* kGoodScenario = R"({
  "schema_version": 1,
  "geometry": {"mode": "profile", "r": 1.0, "d": 1.0, "D": 2.0,
               "path_loss": 3.0, "symbol_energy": 4.0},
  "coop": {"m": 3, "taus": [0.5, 0.25, 0.25]},
  "code": {"c_star": 0.17},
  "seed": 42
})";

}  // namespace

TEST_CASE("link SNRs follow the inverse power law") {
    const Geometry g1 = geometry_from_profile(1, 0, 0, 1.0, 2.0, 1.0);
    CHECK(link_snrs(g1).at(0, 1) == 1.0);

    // E = 8, distance 2, exponent 3: SNR = 8/8 = 1.
    const Geometry g = geometry_from_matrix(2, {2.0, 2.0, 2.0, 2.0}, 3.0, 8.0);
    const SnrTable t = link_snrs(g);
    CHECK(t.at(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t.at(1, 2) == doctest::Approx(1.0).epsilon(1e-15));

    // Symmetric hop profile exposes the three canonical SNRs.
    const double r = 1.5, d = 2.5, D = 3.0, L = 3.0, E = 10.0;
    const Geometry gp = geometry_from_profile(4, r, d, D, L, E);
    const SnrTable tp = link_snrs(gp);
    for (int j = 1; j <= 3; ++j)
        CHECK(tp.at(0, j) == doctest::Approx(E * std::pow(r, -L)).epsilon(1e-15));
    for (int i = 1; i <= 3; ++i)
        CHECK(tp.at(i, 4) == doctest::Approx(E * std::pow(d, -L)).epsilon(1e-15));
    CHECK(tp.at(0, 4) == doctest::Approx(E * std::pow(D, -L)).epsilon(1e-15));

    const auto bc = tp.broadcast();
    REQUIRE(bc.size() == 3);
    CHECK(bc[0] == tp.at(0, 1));
    const auto dl = tp.downlink();
    REQUIRE(dl.size() == 4);
    CHECK(dl[0] == tp.at(0, 4));
    CHECK(dl[3] == tp.at(3, 4));
}

TEST_CASE("profile round-trips through the detection helper") {
    const Geometry g = geometry_from_profile(5, 1.0, 2.0, 2.5, 3.0, 1.0);
    HopProfile hp;
    REQUIRE(try_hop_profile(g, hp));
    CHECK(hp.r == 1.0);
    CHECK(hp.d == 2.0);
    CHECK(hp.big_d == 2.5);

    Geometry skew = g;
    skew.dist[0] = 1.5;  // one sender-helper link moved
    CHECK_FALSE(try_hop_profile(skew, hp));

    const Geometry direct = geometry_from_profile(1, 0, 0, 4.0, 2.0, 1.0);
    REQUIRE(try_hop_profile(direct, hp));
    CHECK(hp.big_d == 4.0);
}

TEST_CASE("geometry validation and warnings") {
    CHECK_THROWS_AS(geometry_from_matrix(2, {1.0, -1.0, 1.0, 1.0}, 2.0, 1.0),
                    DomainError);
    CHECK_THROWS_AS(geometry_from_matrix(2, {1.0, 1.0, 1.0}, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(geometry_from_profile(2, 1.0, 1.0, 1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(geometry_from_profile(2, 1.0, 1.0, 1.0, 2.0, -1.0), DomainError);
    CHECK_THROWS_AS(geometry_from_profile(21, 1, 1, 1, 2, 1), TooManyHelpers);

    // Impossible triple: sender 10 from destination, helper 1 from sender
    // but 0.1 from destination.
    const Geometry bad = geometry_from_profile(2, 1.0, 0.1, 10.0, 2.0, 1.0);
    CHECK(geometry_warnings(bad).size() == 1);
    const Geometry ok = geometry_from_profile(3, 1.0, 1.5, 2.0, 2.0, 1.0);
    CHECK(geometry_warnings(ok).empty());
}

TEST_CASE("slot-plan validation") {
    CHECK_NOTHROW(validate_coop(uniform_coop(5)));
    CoopConfig bad = uniform_coop(3);
    bad.taus[0] += 1e-6;
    CHECK_THROWS_AS(validate_coop(bad), DomainError);
    bad = uniform_coop(3);
    bad.taus.pop_back();
    CHECK_THROWS_AS(validate_coop(bad), DomainError);
    bad = uniform_coop(2);
    bad.taus = {1.5, -0.5};
    CHECK_THROWS_AS(validate_coop(bad), DomainError);

    // Self-decodability of every slot fraction.
    CHECK(all_self_decodable(uniform_coop(5), 0.17));          // 1/5 > 0.156
    CHECK_FALSE(all_self_decodable(uniform_coop(5), 0.8));     // 1/5 < 0.551
    CHECK(all_self_decodable(uniform_coop(1), 5.0));           // tau=1 always
}

TEST_CASE("reliable-set distribution is a product of link probabilities") {
    const CoopConfig cfg = uniform_coop(4);
    const std::vector<double> snrs{1.0, 2.0, 4.0};
    const double chi0 = 0.3;
    const ReliableSetDist dist = reliable_set_prob(cfg, snrs, chi0);
    REQUIRE(dist.prob.size() == 8);

    double total = 0.0;
    for (double p : dist.prob) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // Marginal of helper j recovers e^{-chi0/snr_j}.
    for (int j = 1; j <= 3; ++j) {
        double marg = 0.0;
        for (std::uint32_t mask = 0; mask < 8; ++mask)
            if (mask & (1u << (j - 1))) marg += dist.prob[mask];
        CHECK(marg == doctest::Approx(std::exp(-chi0 / snrs[j - 1])).epsilon(1e-12));
    }

    // Spot value: exactly helpers {1,3} reliable.
    const double expect = std::exp(-chi0 / 1.0) * (1 - std::exp(-chi0 / 2.0)) *
                          std::exp(-chi0 / 4.0);
    CHECK(dist.prob_of(ReliableSet{{1, 3}}) == doctest::Approx(expect).epsilon(1e-12));

    // Zero listening threshold: everyone always decodes.
    const ReliableSetDist sure = reliable_set_prob(cfg, snrs, 0.0);
    CHECK(sure.prob[7] == 1.0);

    // Two-node spot check against the closed form.
    const ReliableSetDist two =
        reliable_set_prob(uniform_coop(2), {3.0}, 0.6);
    CHECK(two.prob_of(ReliableSet{{1}}) ==
          doctest::Approx(std::exp(-0.6 / 3.0)).epsilon(1e-12));
}

TEST_CASE("reliable-set guards") {
    CHECK_THROWS_AS(reliable_set_prob(uniform_coop(3), {1.0}, 0.1), DomainError);
    CHECK_THROWS_AS(reliable_set_prob(uniform_coop(3), {1.0, -2.0}, 0.1), DomainError);
    CHECK_THROWS_AS(reliable_set_prob(uniform_coop(3), {1.0, 2.0}, -0.1), DomainError);
    CHECK_THROWS_AS(mask_of(ReliableSet{{0}}, 4), InvalidMember);
    CHECK_THROWS_AS(mask_of(ReliableSet{{4}}, 4), InvalidMember);
    CHECK_THROWS_AS(mask_of(ReliableSet{{2, 2}}, 4), InvalidMember);
    CHECK_THROWS_AS(set_from_mask(0x8, 4), InvalidMember);
}

TEST_CASE("masks round-trip") {
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
        const ReliableSet f = set_from_mask(mask, 5);
        CHECK(mask_of(f, 5) == mask);
    }
}

TEST_CASE("slot schedule") {
    const Schedule s = schedule(ReliableSet{{1, 3}}, 5);
    CHECK(s.slot_tx == std::vector<int>{0, 1, 0, 3, 0});
    CHECK(schedule(ReliableSet{}, 4).slot_tx == std::vector<int>{0, 0, 0, 0});
    CHECK(schedule(ReliableSet{{1, 2, 3}}, 4).slot_tx == std::vector<int>{0, 1, 2, 3});
    CHECK(schedule(ReliableSet{{1, 3}}, 5).slot_tx == s.slot_tx);  // deterministic
    CHECK_THROWS_AS(schedule(ReliableSet{{3}}, 3), InvalidMember);
}

TEST_CASE("frame-averaged channel parameter") {
    const CoopConfig cfg = uniform_coop(2);
    const std::vector<double> snrs{0.5, 2.0};

    // No reliable helper: single-link exponential.
    CHECK(avg_bhattacharyya({1.0, 9.9}, ReliableSet{}, cfg, snrs) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    // Total deep fade: parameter 1 (weights sum to 1).
    CHECK(avg_bhattacharyya({0.0, 0.0}, ReliableSet{{1}}, cfg, snrs) == 1.0);
    // Two-transmitter split.
    const double got = avg_bhattacharyya({1.0, 2.0}, ReliableSet{{1}}, cfg, snrs);
    CHECK(got ==
          doctest::Approx(0.5 * std::exp(-0.5) + 0.5 * std::exp(-4.0)).epsilon(1e-15));

    // Strictly decreasing in each active fading power.
    double prev = 2.0;
    for (double nu : {0.0, 0.5, 1.0, 2.0}) {
        const double v = avg_bhattacharyya({nu, 1.0}, ReliableSet{{1}}, cfg, snrs);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(avg_bhattacharyya({1.0}, ReliableSet{}, cfg, snrs), DomainError);
    CHECK_THROWS_AS(avg_bhattacharyya({-1.0, 1.0}, ReliableSet{{1}}, cfg, snrs),
                    DomainError);
}

TEST_CASE("result stays within (0, 1] on random draws") {
    const CoopConfig cfg = uniform_coop(5);
    const std::vector<double> snrs{1.0, 2.0, 3.0, 4.0, 5.0};
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
        const ReliableSet f = set_from_mask(mask, 5);
        for (double scale : {0.0, 0.3, 3.0, 30.0}) {
            const std::vector<double> nu(5, scale);
            const double v = avg_bhattacharyya(nu, f, cfg, snrs);
            CHECK(v > 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("scenario files load and validate") {
    const fs::path p = write_temp("ircc_scenario_good.json", kGoodScenario);
    const Scenario sc = load_scenario(p);
    CHECK(sc.coop.m == 3);
    CHECK(sc.c_star == 0.17);
    CHECK(sc.has_seed);
    CHECK(sc.seed == 42);
    CHECK(sc.geometry.distance(0, 3) == 2.0);
    CHECK(sc.geometry.distance(1, 3) == 1.0);
    CHECK(sc.geometry.symbol_energy == 4.0);
    fs::remove(p);
}

TEST_CASE("scenario loader rejects malformed input") {
    auto expect_malformed = [](const char* name, const std::string& body) {
        const fs::path p = write_temp(name, body);
        CHECK_THROWS_AS(load_scenario(p), MalformedFile);
        fs::remove(p);
    };

    expect_malformed("ircc_sc_bad1.json", "{");
    expect_malformed("ircc_sc_bad2.json", R"({"schema_version": 1})");
    expect_malformed("ircc_sc_bad3.json", std::string(kGoodScenario).replace(
                                              std::string(kGoodScenario).find("42"),
                                              2, "-1"));
    // Unknown top-level field.
    std::string extra = kGoodScenario;
    extra.insert(extra.rfind('}'), R"(, "surprise": true)");
    expect_malformed("ircc_sc_bad4.json", extra);
    // Slot fractions that do not sum to 1.
    std::string badtau = kGoodScenario;
    badtau.replace(badtau.find("[0.5, 0.25, 0.25]"), 17, "[0.5, 0.3, 0.25]");
    expect_malformed("ircc_sc_bad5.json", badtau);
    // Matrix mode with wrong row count.
    expect_malformed("ircc_sc_bad6.json", R"({
      "schema_version": 1,
      "geometry": {"mode": "matrix", "distances": [[1.0, 1.0]],
                   "path_loss": 2.0, "symbol_energy": 1.0},
      "coop": {"m": 2, "taus": [0.5, 0.5]},
      "code": {"c_star": 0.17}
    })");
    CHECK_THROWS_AS(load_scenario(fs::temp_directory_path() / "ircc_absent.json"),
                    MalformedFile);
}

TEST_CASE("matrix-mode scenario loads") {
    const fs::path p = write_temp("ircc_sc_matrix.json", R"({
      "schema_version": 1,
      "geometry": {"mode": "matrix",
                   "distances": [[0.5, 1.0, 2.0], [0.7, 0.5, 1.5], [0.9, 0.5, 1.1]],
                   "path_loss": 2.0, "symbol_energy": 1.0},
      "coop": {"m": 3, "taus": [0.4, 0.3, 0.3]},
      "code": {"c_star": 0.3}
    })");
    const Scenario sc = load_scenario(p);
    CHECK_FALSE(sc.has_seed);
    CHECK(sc.geometry.distance(1, 3) == 1.5);
    CHECK(sc.geometry.distance(2, 3) == 1.1);
    HopProfile hp;
    CHECK_FALSE(try_hop_profile(sc.geometry, hp));
    fs::remove(p);
}
