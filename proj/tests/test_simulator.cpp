#include "ircc/simulator.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "ircc/asymptotics.hpp"
#include "ircc/errors.hpp"
#include "ircc/numerics.hpp"
#include "ircc/outage.hpp"
#include "ircc/puncturing.hpp"

using namespace ircc;

namespace {

CoopConfig uniform_coop(int m) {
  CoopConfig cfg;
  cfg.m = m;
  cfg.taus.assign(m, 1.0 / m);
  double head = 0.0;
  for (int i = 0; i + 1 < m; ++i) head += cfg.taus[i];
  cfg.taus.back() = 1.0 - head;  // make the shares sum to 1 exactly
  return cfg;
}

// Symmetric layout: helpers at distance r from the sender and at the full
// sender-destination distance from the destination, so the broadcast SNR is
// rho and every node-to-destination SNR is lambda.  Unit symbol energy,
// square-law path loss.
Scenario symmetric_scenario(int m, double rho_db, double lambda_db,
                            double c_star) {
  const double rho = linear_from_db(rho_db);
  const double lambda = linear_from_db(lambda_db);
  const double big_d = 1.0 / std::sqrt(lambda);
  const double r = m > 1 ? 1.0 / std::sqrt(rho) : 1.0;
  Scenario sc;
  sc.geometry = geometry_from_profile(m, r, big_d, big_d, 2.0, 1.0);
  sc.coop = uniform_coop(m);
  sc.c_star = c_star;
  return sc;
}

Scenario direct_scenario(double snr_db, double c_star) {
  return symmetric_scenario(1, 0.0, snr_db, c_star);
}

double sigma_of(const FerEstimate& e) { return e.half_width / kZ99; }

}  // namespace

TEST_CASE("one-node runs match the closed-form outage") {
  const double eta = linear_from_db(3.0);
  const double c_star = 0.17;
  const double expected = -std::expm1(-c_star / eta);
  SimConfig cfg;
  cfg.scenario = direct_scenario(3.0, c_star);
  cfg.n_frames = 200000;
  cfg.seed = 11;

  for (bool antithetic : {false, true}) {
    cfg.antithetic = antithetic;
    const SimResult res = simulate_fer(cfg);
    const double sigma =
        std::sqrt(expected * (1.0 - expected) / static_cast<double>(cfg.n_frames));
    CHECK(std::fabs(res.fer.value - expected) < 3.0 * sigma);
    CHECK(res.fer.kind == FerKind::Simulation);
    CHECK(res.fer.samples == cfg.n_frames);
    CHECK(res.frames == cfg.n_frames);
    CHECK(res.errors == static_cast<std::uint64_t>(
                            res.fer.value * static_cast<double>(cfg.n_frames) + 0.5));
  }
}

TEST_CASE("results are a pure function of the run description") {
  SimConfig cfg;
  cfg.scenario = symmetric_scenario(3, 3.0, 6.0, 0.17);
  cfg.n_frames = 50000;
  cfg.seed = 42;
  const SimResult a = simulate_fer(cfg);
  const SimResult b = simulate_fer(cfg);
  CHECK(a.errors == b.errors);
  CHECK(a.fer.value == b.fer.value);
  CHECK(a.mean_avg_bhattacharyya == b.mean_avg_bhattacharyya);
  CHECK(a.reliable_set_histogram == b.reliable_set_histogram);

  cfg.seed = 43;
  const SimResult c = simulate_fer(cfg);
  CHECK(a.errors != c.errors);
}

TEST_CASE("worker count does not change the result") {
  SimConfig cfg;
  cfg.scenario = symmetric_scenario(3, 3.0, 6.0, 0.17);
  cfg.n_frames = 50000;
  cfg.seed = 7;
  cfg.workers = 1;
  const SimResult serial = simulate_fer(cfg);
  for (int workers : {2, 3, 7}) {
    cfg.workers = workers;
    const SimResult parallel = simulate_fer(cfg);
    CHECK(parallel.errors == serial.errors);
    CHECK(parallel.fer.value == serial.fer.value);
    CHECK(parallel.mean_avg_bhattacharyya == serial.mean_avg_bhattacharyya);
    CHECK(parallel.reliable_set_histogram == serial.reliable_set_histogram);
  }
}

TEST_CASE("reliable-set histogram matches the analytic distribution") {
  SimConfig cfg;
  cfg.scenario = symmetric_scenario(3, 3.0, 6.0, 0.17);
  cfg.n_frames = 200000;
  cfg.seed = 5;
  const SimResult res = simulate_fer(cfg);

  std::uint64_t total = 0;
  for (const auto& [mask, count] : res.reliable_set_histogram) total += count;
  CHECK(total == cfg.n_frames);

  const SnrTable snrs = link_snrs(cfg.scenario.geometry);
  const double chi0 =
      punctured_threshold(cfg.scenario.c_star, cfg.scenario.coop.taus[0]);
  const ReliableSetDist dist =
      reliable_set_prob(cfg.scenario.coop, snrs.broadcast(), chi0);
  const double n = static_cast<double>(cfg.n_frames);
  for (std::uint32_t mask = 0; mask < dist.prob.size(); ++mask) {
    const double p = dist.prob[mask];
    const auto it = res.reliable_set_histogram.find(mask);
    const double observed =
        it == res.reliable_set_histogram.end() ? 0.0 : static_cast<double>(it->second);
    CHECK(std::fabs(observed / n - p) < 3.0 * std::sqrt(p * (1.0 - p) / n));
  }
}

TEST_CASE("vanishing broadcast threshold keeps every helper reliable") {
  // A threshold this small underflows to a zero broadcast-slot requirement,
  // which every positive fade exceeds; no frame can then be in error either,
  // because the decoding margin is the whole threshold.
  SimConfig cfg;
  cfg.scenario = symmetric_scenario(4, -10.0, -10.0, 1e-300);
  cfg.n_frames = 20000;
  cfg.seed = 3;
  const SimResult res = simulate_fer(cfg);
  REQUIRE(res.reliable_set_histogram.size() == 1);
  CHECK(res.reliable_set_histogram.count(0x7) == 1);
  CHECK(res.reliable_set_histogram.at(0x7) == cfg.n_frames);
  CHECK(res.errors == 0);
}

TEST_CASE("simulated rate stays below the analytic bound") {
  SimConfig cfg;
  cfg.scenario = symmetric_scenario(5, 0.0, 6.0, 0.17);
  cfg.n_frames = 200000;
  cfg.seed = 9;
  const SimResult sim = simulate_fer(cfg);
  const FerEstimate bound = fer_bound(cfg.scenario.coop, cfg.scenario.geometry,
                                      cfg.scenario.c_star, 100000, 17);
  const double joint = 3.0 * std::hypot(sigma_of(sim.fer), sigma_of(bound));
  CHECK(sim.fer.value <= bound.value + joint);
  CHECK(sim.mean_avg_bhattacharyya > 0.0);
  CHECK(sim.mean_avg_bhattacharyya < 1.0);
}

TEST_CASE("cooperation beats direct transmission under common randomness") {
  const std::uint64_t n = 200000;
  SimConfig coop;
  coop.scenario = symmetric_scenario(3, 6.0, 3.0, 0.17);
  coop.n_frames = n;
  coop.seed = 2024;
  SimConfig direct;
  direct.scenario = direct_scenario(3.0, 0.17);
  direct.n_frames = n;
  direct.seed = 2024;
  const SimResult rc = simulate_fer(coop);
  const SimResult rd = simulate_fer(direct);
  CHECK(rd.fer.value > rc.fer.value + 3.0 * std::hypot(sigma_of(rd.fer), sigma_of(rc.fer)));
}

TEST_CASE("diversity slope of the one-node curve is one") {
  std::vector<std::pair<double, double>> curve;
  for (int i = 0; i <= 6; ++i) {
    const double snr_db = 10.0 + 20.0 * i / 6.0;
    SimConfig cfg;
    cfg.scenario = direct_scenario(snr_db, 0.17);
    cfg.n_frames = 4000000;
    cfg.seed = 100 + static_cast<std::uint64_t>(i);
    cfg.antithetic = true;
    const SimResult res = simulate_fer(cfg);
    curve.emplace_back(linear_from_db(snr_db), res.fer.value);
  }
  CHECK(diversity_estimate(curve) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("relay-baseline decodability is a strict threshold") {
  CHECK(simulate_firf_threshold(0.17, 0.2));
  CHECK_FALSE(simulate_firf_threshold(0.17, 0.1));
  const double edge = std::expm1(0.17);
  CHECK_FALSE(simulate_firf_threshold(0.17, edge));
  CHECK(simulate_firf_threshold(
      0.17, std::nextafter(edge, 2.0)));
  CHECK_FALSE(simulate_firf_threshold(0.0, 0.0));
  CHECK(simulate_firf_threshold(0.0, 1e-300));
  CHECK_THROWS_AS(simulate_firf_threshold(0.17, -1.0), DomainError);
  CHECK_THROWS_AS(simulate_firf_threshold(-0.1, 1.0), DomainError);
}

TEST_CASE("single-frame outcomes are reproducible and mirrorable") {
  const Scenario sc = symmetric_scenario(3, 3.0, 6.0, 0.17);
  const CounterRng rng(99, 0);
  const FrameOutcome a = simulate_frame(rng, sc);
  const FrameOutcome b = simulate_frame(rng, sc);
  CHECK(a.error == b.error);
  CHECK(a.reliable_mask == b.reliable_mask);
  CHECK(a.avg_bhatt == b.avg_bhatt);
  const FrameOutcome m = simulate_frame(rng, sc, true);
  CHECK(m.avg_bhatt != a.avg_bhatt);
  CHECK(a.avg_bhatt > 0.0);
  CHECK(a.avg_bhatt <= 1.0);
}

TEST_CASE("sparse errors raise the weak-statistics flag") {
  SimConfig cfg;
  cfg.scenario = direct_scenario(40.0, 0.17);  // expected error rate 1.7e-5
  cfg.n_frames = 10000;
  cfg.seed = 1;
  const SimResult weak = simulate_fer(cfg);
  CHECK(weak.fer.has_flag(kFlagWeakStatistics));

  cfg.scenario = direct_scenario(3.0, 0.17);
  cfg.n_frames = 10000;
  const SimResult strong = simulate_fer(cfg);
  CHECK_FALSE(strong.fer.has_flag(kFlagWeakStatistics));
}

TEST_CASE("run parameter validation") {
  SimConfig cfg;
  cfg.scenario = symmetric_scenario(2, 3.0, 6.0, 0.17);
  cfg.n_frames = 9999;
  CHECK_THROWS_AS(simulate_fer(cfg), DomainError);
  cfg.n_frames = 10000;
  cfg.workers = 0;
  CHECK_THROWS_AS(simulate_fer(cfg), DomainError);
  cfg.workers = 1;
  cfg.scenario.coop.taus = {0.6, 0.6};  // shares no longer sum to one
  CHECK_THROWS_AS(simulate_fer(cfg), DomainError);
}
