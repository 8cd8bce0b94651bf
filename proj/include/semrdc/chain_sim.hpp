#pragma once

// Monte-Carlo simulators for the S -> X -> U -> Shat chains, used as
// independent checks of the closed-form moment algebra. Sampling is
// counter-based (see rng.hpp): the value drawn for sample index i depends
// only on (seed, i), and chunk partial sums are combined in chunk order, so
// results do not depend on the number of worker threads.

#include <cstdint>

#include <semrdc/mc_estimate.hpp>

namespace semrdc {

struct GaussianChainMoments {
  McEstimate mse;  // E[(S - Shat)^2]; n counts samples
  McEstimate w2;   // plug-in (sd_S - sd_Shat)^2; batch means, n counts batches
};

// U ~ N(0,1), X = rho U + sqrt(1-rho^2) Z2, S = gamma X + sqrt(1-gamma^2) Z1,
// Shat = kappa U + sqrt(sigma^2 - kappa^2) W. Requires |kappa| <= sigma.
GaussianChainMoments simulate_gaussian_chain(double gamma, double rho,
                                             double kappa, double sigma,
                                             std::uint64_t n,
                                             std::uint64_t seed,
                                             int threads = 0);

// Uniform S flipped through three symmetric channels; returns the empirical
// end-to-end crossover frequency P(S != Shat).
McEstimate simulate_binary_chain(double q_sx, double q_xu, double q_ushat,
                                 std::uint64_t n, std::uint64_t seed,
                                 int threads = 0);

}  // namespace semrdc
