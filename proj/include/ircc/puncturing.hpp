#pragma once

namespace ircc {

// Decoding threshold of a code whose transmitted block is randomly thinned
// to a surviving fraction tau of its symbols, expressed in nats of the base
// threshold c_star.  Only defined when the surviving fraction alone can
// carry a decodable block (see is_self_decodable).
double punctured_threshold(double c_star, double tau);

// True when tau > 1 - exp(-c_star), i.e. a receiver hearing only the
// surviving fraction can still decode at some finite SNR.  Strict at the
// boundary.
bool is_self_decodable(double c_star, double tau);

// Smallest listening fraction that still guarantees decodability at
// instantaneous SNR theta, inflated multiplicatively by `margin` to keep
// clear of the open-interval endpoint.  Lets a relay stop listening early
// once its channel is good enough.
double effective_listen_fraction(double c_star, double theta, double tau0,
                                 double margin);

// Threshold after shrinking the listening fraction by a decode-latency
// budget tau_d: the relay needs the remaining tau0 - tau_d to be
// self-decodable on its own.
double adjusted_threshold(double c_star, double tau0, double tau_d);

}  // namespace ircc
