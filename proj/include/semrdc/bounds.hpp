#pragma once

// Monte-Carlo estimators of the variational mutual-information bounds and the
// task loss aggregations. These are pure reductions over caller-supplied
// per-sample log densities (base-2 logs, aligned by sample index) - no models
// and no sampling live here, which is what makes the bounds testable against
// closed-form fixtures.

#include <vector>

#include <semrdc/mc_estimate.hpp>

namespace semrdc {

struct SampleLogDensities {
  std::vector<double> log_p_u_given_x;     // log2 p(u|x)
  std::vector<double> log_t_u;             // log2 t(u), variational marginal
  std::vector<double> log_p_shat_given_u;  // log2 p(shat|u)
  std::vector<double> log_r_shat;          // log2 r(shat), variational marginal
  std::vector<double> log_q_s_given_shat;  // log2 q(s|shat)
};

struct LossWeights {
  double lambda_c = 0.0;
  double lambda_d = 0.0;
  double lambda_p = 0.0;
};

// mean(log p(u|x) - log t(u)): upper bound on I(X;U) for any valid t.
McEstimate complexity_upper_bound(const SampleLogDensities& samples);

// entropy_s_bits + mean(log q(s|shat)): lower bound on I(Shat;S). Pass
// entropy_s_bits = 0 to get the raw cross term.
McEstimate distortion_lower_bound(const SampleLogDensities& samples,
                                  double entropy_s_bits);

// mean(log p(shat|u) - log r(shat)): upper bound on I(U;Shat).
McEstimate rate_upper_bound(const SampleLogDensities& samples);

// rate_upper + lambda_c * complexity_upper - lambda_d * mean(log q(s|shat)).
// The mean combines the three component means, so it is exactly linear in
// the weights; the standard error comes from the per-sample combined series.
McEstimate loss_classification(const SampleLogDensities& samples,
                               const LossWeights& weights);

// mse + lambda_p * w2 + lambda_c * complexity_upper. The critic-based W2
// estimate is the caller's responsibility; this is the deterministic
// aggregation.
double loss_generation(double mse, double w2, double complexity_upper,
                       const LossWeights& weights);

// rate_upper + lambda_d * mse + lambda_c * complexity_upper.
double loss_video(double rate_upper, double mse, double complexity_upper,
                  const LossWeights& weights);

}  // namespace semrdc
