#pragma once

// Closed-form Gaussian rate-distortion-complexity evaluation and the chain
// algebra for the Markov chain
//
//   S = gamma X + sqrt(1-gamma^2) Z1,   X = rho U + sqrt(1-rho^2) Z2,
//
// with S ~ N(0,1), recovery Shat ~ N(0, sigma^2) and Cov(U, Shat) = kappa.
// The complexity budget theta_c pins rho = sqrt(1 - 2^(-2 theta_c)); the
// squared-W2 budget theta_p pins sigma = 1 - sqrt(theta_p) on the
// perception-active branch.

#include <semrdc/errors.hpp>

namespace semrdc {

struct GaussianProblem {
  double gamma = 1.0;    // source-observation correlation, (0, 1]
  double theta_d = 1.0;  // MSE budget, >= 0
  double theta_p = 1.0;  // squared 2-Wasserstein budget, [0, 1]
  double theta_c = 0.0;  // complexity budget in bits, >= 0, inf allowed
};

enum class GaussianBranch { kComplexityLimited, kPerceptionActive, kZeroRate };

const char* to_string(GaussianBranch branch);

struct GaussianDerived {
  double rho;     // sqrt(1 - 2^(-2 theta_c))
  double sigma;   // 1 - sqrt(theta_p)
  double theta1;  // (1 - gamma rho)(1 + sigma^2); feasibility floor
  double theta2;  // 1 + sigma^2 - 2 gamma rho sigma^2
  double theta3;  // 1 + sigma^2; zero-rate threshold
};

// Validates the problem fields and computes the branch thresholds.
GaussianDerived gaussian_derive(const GaussianProblem& problem);

struct GaussianPoint {
  double rate_bits;
  GaussianBranch branch;
};

// Three-branch closed form. Throws infeasible_error carrying theta1 when
// theta_d < theta1. rate = +inf at theta_d == theta1 is a legal value.
GaussianPoint gaussian_rdc(const GaussianProblem& problem);

// Branch classification only; half-open intervals, a tie at theta2 counts as
// perception-active. Same infeasibility signal as gaussian_rdc.
GaussianBranch gaussian_branch(const GaussianProblem& problem);

// Independent implementation of the gamma = 1, theta_c = inf special case
// (rate-distortion-perception reduction), used to cross-validate gaussian_rdc.
double gaussian_rdp_reduction(double theta_d, double theta_p);

// Indirect rate-distortion line (theta_p = 1):
// 1/2 log2(grho / (theta_d + grho - 1)) for 1 - grho <= theta_d <= 1.
double gaussian_indirect_rd(double theta_d, double gamma, double theta_c);

// Pairwise covariances along the chain for unit-variance S, X, U.
struct ChainCovariances {
  double cov_sx;     // gamma
  double cov_su;     // gamma rho
  double cov_sshat;  // gamma rho kappa
  double cov_xshat;  // rho kappa
};

ChainCovariances chain_effective_covariances(double gamma, double rho,
                                             double kappa);

// theta_u = theta_d/(gamma rho) - (1 - gamma rho)(1 + sigma^2)/(gamma rho):
// the direct-problem distortion budget equivalent to E[(S-Shat)^2] <= theta_d.
// Throws degenerate_chain_error when gamma * rho == 0.
double distortion_transfer(double theta_d, double gamma, double rho,
                           double sigma);

}  // namespace semrdc
