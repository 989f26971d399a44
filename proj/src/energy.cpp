#include "ircc/energy.hpp"

#include <cmath>
#include <vector>

#include "ircc/errors.hpp"
#include "ircc/puncturing.hpp"

namespace ircc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw DomainError("target error rate must lie in (0, 1)");
  }
}

void check_geometry(const EnergyQuery& q) {
  if (!(q.path_loss > 0.0) || !std::isfinite(q.path_loss)) {
    throw DomainError("path-loss exponent must be positive and finite");
  }
  if (!(q.distance > 0.0) || !std::isfinite(q.distance)) {
    throw DomainError("distance must be positive and finite");
  }
}

void check_threshold(double c_star) {
  if (!(c_star > 0.0) || !std::isfinite(c_star)) {
    throw DomainError("decoding threshold must be positive and finite");
  }
}

void check_slots(int m, int minimum) {
  if (m < minimum) throw DomainError("too few transmission slots");
}

void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !(kappa < 1.0)) {
    throw DomainError("ring radius fraction must lie in (0, 1)");
  }
}

// Leading-order decay sum of the ring layout divided by E^m: the frame-error
// rate behaves as epsilon = S / E^m, so E = (S / epsilon)^{1/m}.  Shares are
// tau0 for the broadcast slot and (1 - tau0)/(m - 1) for each helper slot;
// helper-to-destination distances equal the sender-to-destination distance on
// the collinear worst ray, so the geometry enters only through kappa.
double ring_decay_sum(int m, double path_loss, double kappa, double tau0) {
  const double tau_h = (1.0 - tau0) / (m - 1);
  double sum = 0.0;
  for (int k = 0; k <= m - 1; ++k) {
    const double geom = std::pow(kappa, path_loss * (m - 1 - k)) *
                        std::pow(1.0 - kappa, path_loss * k);
    const double shares = std::pow(tau0, m - 1 - k) * std::pow(tau_h, k) *
                          (1.0 - k * tau_h) * factorial(k + 1);
    sum += binomial(m - 1, k) * geom / shares;
  }
  return sum;
}

}  // namespace

double achievable_energy(const EnergyQuery& q, EnergyMode mode,
                         std::optional<double> tau0) {
  check_epsilon(q.epsilon);
  check_geometry(q);
  check_threshold(q.c_star);
  if (tau0.has_value() != (mode == EnergyMode::KappaHopping)) {
    throw DomainError("broadcast share applies to the ring layout only");
  }
  const double dl = std::pow(q.distance, q.path_loss);
  switch (mode) {
    case EnergyMode::Direct:
      check_slots(q.m, 1);
      return q.c_star * dl / q.epsilon;
    case EnergyMode::TransmitterClusteringExact: {
      check_slots(q.m, 1);
      const double m = q.m;
      return m * q.c_star * dl / std::pow(factorial(q.m) * q.epsilon, 1.0 / m);
    }
    case EnergyMode::TransmitterClusteringStirling: {
      check_slots(q.m, 1);
      const double m = q.m;
      return q.c_star * std::exp(1.0) * dl /
             std::pow(q.epsilon * std::sqrt(kTwoPi * m), 1.0 / m);
    }
    case EnergyMode::Firf:
      return std::expm1(q.c_star) * dl;
    case EnergyMode::KappaHopping: {
      check_slots(q.m, 2);
      check_kappa(q.kappa);
      const double t0 = *tau0;
      if (!(t0 > 0.0) || !(t0 < 1.0)) {
        throw DomainError("broadcast share must lie in (0, 1)");
      }
      const double tau_h = (1.0 - t0) / (q.m - 1);
      if (!is_self_decodable(q.c_star, t0) ||
          !is_self_decodable(q.c_star, tau_h)) {
        throw HypothesisViolated(
            "every time share must be self-decodable at the given threshold");
      }
      const double sum = ring_decay_sum(q.m, q.path_loss, q.kappa, t0);
      return q.c_star * dl *
             std::pow(sum / q.epsilon, 1.0 / static_cast<double>(q.m));
    }
  }
  throw DomainError("unknown energy mode");
}

double energy_saving(const EnergyQuery& q) {
  check_epsilon(q.epsilon);
  check_slots(q.m, 2);
  const double m = q.m;
  return std::pow(kTwoPi * m, 1.0 / (2.0 * m)) /
         (std::exp(1.0) * std::pow(q.epsilon, 1.0 - 1.0 / m));
}

double energy_saving_firf(const EnergyQuery& q) {
  check_epsilon(q.epsilon);
  check_threshold(q.c_star);
  return q.c_star / (std::expm1(q.c_star) * q.epsilon);
}

double energy_saving_kappa(const EnergyQuery& q, double tau0) {
  check_epsilon(q.epsilon);
  check_slots(q.m, 2);
  check_kappa(q.kappa);
  if (!(q.path_loss > 0.0) || !std::isfinite(q.path_loss)) {
    throw DomainError("path-loss exponent must be positive and finite");
  }
  if (!(tau0 > 0.0) || !(tau0 < 1.0)) {
    throw DomainError("broadcast share must lie in (0, 1)");
  }
  const double m = q.m;
  const double sum = ring_decay_sum(q.m, q.path_loss, q.kappa, tau0);
  return std::pow(std::pow(q.epsilon, q.m - 1) * sum, -1.0 / m);
}

std::pair<double, double> optimize_tau0(const EnergyQuery& q, double kappa) {
  check_epsilon(q.epsilon);
  check_slots(q.m, 2);
  check_kappa(kappa);
  check_threshold(q.c_star);
  EnergyQuery ring = q;
  ring.kappa = kappa;

  // Feasible broadcast shares: tau0 and the common helper share
  // (1 - tau0)/(m - 1) must both exceed the self-decodability edge.
  const double edge = -std::expm1(-q.c_star) + 1e-9;
  const double lo = edge;
  const double hi = 1.0 - (q.m - 1) * edge;
  if (!(lo < hi)) {
    throw InfeasibleTauRange(
        "no broadcast share keeps every slot self-decodable");
  }

  const auto value = [&](double t0) { return energy_saving_kappa(ring, t0); };

  // Coarse grid scan, then golden-section refinement on the bracketing cell.
  constexpr int kGrid = 256;
  double best_t = 0.0, best_u = -1.0;
  int best_i = 0;
  for (int i = 1; i <= kGrid; ++i) {
    const double t = lo + (hi - lo) * i / (kGrid + 1);
    const double u = value(t);
    if (u > best_u) {
      best_u = u;
      best_t = t;
      best_i = i;
    }
  }
  double a = lo + (hi - lo) * (best_i - 1) / (kGrid + 1);
  double b = lo + (hi - lo) * (best_i + 1) / (kGrid + 1);
  const double inv_phi = 0.6180339887498948482;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = value(x1);
  double f2 = value(x2);
  for (int iter = 0; iter < 200 && (b - a) > 1e-13; ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = value(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = value(x1);
    }
  }
  const double t_opt = 0.5 * (a + b);
  const double u_opt = value(t_opt);
  if (u_opt > best_u) {
    best_u = u_opt;
    best_t = t_opt;
  }
  return {best_t, best_u};
}

}  // namespace ircc
