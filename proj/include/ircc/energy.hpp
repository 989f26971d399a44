#pragma once

#include <optional>
#include <utility>

namespace ircc {

// Inputs for the energy/target-error trade-off computations.  All energies are
// linear (not dB); `epsilon` is the target frame-error probability.
struct EnergyQuery {
  double epsilon = 0.0;    // target frame-error rate, in (0, 1)
  int m = 1;               // number of transmission slots (1 sender + m-1 helpers)
  double path_loss = 2.0;  // path-loss exponent
  double distance = 1.0;   // sender-to-destination distance
  double kappa = 0.5;      // relay ring radius as a fraction of `distance`
  double c_star = 0.0;     // decoding threshold of the unpunctured code, nats
};

// Transmission layouts whose minimum per-slot symbol energy can be solved in
// closed form from the leading-order error decay.
enum class EnergyMode {
  // Single sender, no helpers: E = c* D^L / epsilon.
  Direct,
  // All m transmitters co-located at the sender, equal time shares; exact
  // inversion of the m-th order decay: E = m c* D^L / (m! epsilon)^{1/m}.
  TransmitterClusteringExact,
  // Same layout, Stirling approximation of the factorial:
  // E = c* e D^L / (epsilon sqrt(2 pi m))^{1/m}.
  TransmitterClusteringStirling,
  // Single fixed-gain relay chain with an ideal inter-relay link:
  // E = (e^{c*} - 1) D^L.
  Firf,
  // Helpers on a ring of radius kappa*D around the sender, first slot share
  // tau0, remaining shares equal.  Solved from the general decay sum; requires
  // `tau0`.
  KappaHopping,
};

// Minimum symbol energy achieving frame-error rate `q.epsilon` under the given
// layout.  `tau0` is consumed only by KappaHopping (the broadcast-slot time
// share); passing it for other modes is an error, as is omitting it there.
// Throws DomainError for out-of-range inputs and HypothesisViolated when the
// KappaHopping shares are not self-decodable at `q.c_star`.
double achievable_energy(const EnergyQuery& q, EnergyMode mode,
                         std::optional<double> tau0 = std::nullopt);

// Energy saving factor of transmitter clustering relative to a direct link at
// the same target error rate, Stirling form:
//   U = (2 pi m)^{1/(2m)} / (e * epsilon^{1 - 1/m}).
// Depends only on epsilon and m.  Requires m >= 2.
double energy_saving(const EnergyQuery& q);

// Energy saving factor of the fixed-gain relay chain relative to a direct
// link: U = c* / ((e^{c*} - 1) * epsilon).  Always below 1/epsilon.
double energy_saving_firf(const EnergyQuery& q);

// Energy saving factor of the ring layout (helpers at radius kappa*D) with
// broadcast share `tau0` and equal remaining shares, relative to a direct
// link at the same target error rate.  Reads only epsilon, m, path_loss and
// kappa from `q`: the saving ratio is independent of the code threshold and
// of the absolute distance scale.  Requires m >= 2.
double energy_saving_kappa(const EnergyQuery& q, double tau0);

// Broadcast share maximizing energy_saving_kappa at ring radius `kappa`,
// subject to every share being self-decodable at `q.c_star` (with a 1e-9
// safety margin).  Returns {tau0_opt, U_opt}.  Throws InfeasibleTauRange when
// no share satisfies the self-decodability constraints.
std::pair<double, double> optimize_tau0(const EnergyQuery& q, double kappa);

}  // namespace ircc
