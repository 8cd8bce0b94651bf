#include <semrdc/gaussian_rdc.hpp>

#include <algorithm>
#include <cmath>

#include <semrdc/info_math.hpp>

namespace semrdc {

const char* to_string(GaussianBranch branch) {
  switch (branch) {
    case GaussianBranch::kComplexityLimited:
      return "complexity_limited";
    case GaussianBranch::kPerceptionActive:
      return "perception_active";
    case GaussianBranch::kZeroRate:
      return "zero_rate";
  }
  return "unknown";
}

GaussianDerived gaussian_derive(const GaussianProblem& p) {
  if (!(p.gamma > 0.0 && p.gamma <= 1.0))
    throw std::invalid_argument("GaussianProblem.gamma must be in (0,1]");
  if (!(p.theta_d >= 0.0))
    throw std::invalid_argument("GaussianProblem.theta_d must be >= 0");
  if (!(p.theta_p >= 0.0 && p.theta_p <= 1.0))
    throw std::invalid_argument("GaussianProblem.theta_p must be in [0,1]");
  if (!(p.theta_c >= 0.0))
    throw std::invalid_argument("GaussianProblem.theta_c must be >= 0");

  GaussianDerived d;
  d.rho = complexity_to_rho(p.theta_c);
  d.sigma = 1.0 - std::sqrt(p.theta_p);
  const double grho = p.gamma * d.rho;
  const double s2 = 1.0 + d.sigma * d.sigma;
  d.theta1 = (1.0 - grho) * s2;
  d.theta2 = s2 - 2.0 * grho * d.sigma * d.sigma;
  d.theta3 = s2;
  return d;
}

GaussianPoint gaussian_rdc(const GaussianProblem& p) {
  const GaussianDerived d = gaussian_derive(p);
  const double grho = p.gamma * d.rho;

  if (p.theta_d >= d.theta3) return {0.0, GaussianBranch::kZeroRate};
  if (p.theta_d < d.theta1)
    throw infeasible_error(
        "gaussian_rdc: theta_d is below the feasibility floor theta1",
        d.theta1);

  if (p.theta_d < d.theta2) {
    // theta1 <= theta_d < theta2; this interval is nonempty only when
    // grho > 0, so the division is safe. The subtractive form of theta_u
    // stays accurate as theta_d approaches the floor.
    const double theta_u = (p.theta_d - d.theta1) / grho;
    const double rate = theta_u <= 0.0 ? kInf : -0.5 * std::log2(theta_u);
    return {std::max(rate, 0.0), GaussianBranch::kComplexityLimited};
  }

  // theta2 <= theta_d < theta3; nonempty only when sigma > 0 and grho > 0.
  const double t = (1.0 + d.sigma * d.sigma - p.theta_d) / (2.0 * grho * d.sigma);
  const double one_minus_t2 = (1.0 - t) * (1.0 + t);
  const double rate = one_minus_t2 <= 0.0 ? kInf : -0.5 * std::log2(one_minus_t2);
  return {std::max(rate, 0.0), GaussianBranch::kPerceptionActive};
}

GaussianBranch gaussian_branch(const GaussianProblem& p) {
  const GaussianDerived d = gaussian_derive(p);
  if (p.theta_d >= d.theta3) return GaussianBranch::kZeroRate;
  if (p.theta_d < d.theta1)
    throw infeasible_error(
        "gaussian_branch: theta_d is below the feasibility floor theta1",
        d.theta1);
  return p.theta_d < d.theta2 ? GaussianBranch::kComplexityLimited
                              : GaussianBranch::kPerceptionActive;
}

double gaussian_rdp_reduction(double theta_d, double theta_p) {
  if (!(theta_d >= 0.0))
    throw std::domain_error("gaussian_rdp_reduction: theta_d must be >= 0");
  if (!(theta_p >= 0.0 && theta_p <= 1.0))
    throw std::domain_error("gaussian_rdp_reduction: theta_p must be in [0,1]");
  const double sigma = 1.0 - std::sqrt(theta_p);
  const double theta2 = 1.0 - sigma * sigma;
  const double theta3 = 1.0 + sigma * sigma;
  if (theta_d >= theta3) return 0.0;
  if (theta_d < theta2)
    return theta_d == 0.0 ? kInf : 0.5 * std::log2(1.0 / theta_d);
  const double t = (1.0 + sigma * sigma - theta_d) / (2.0 * sigma);
  const double one_minus_t2 = (1.0 - t) * (1.0 + t);
  if (one_minus_t2 <= 0.0) return kInf;
  return std::max(0.0, 0.5 * std::log2(1.0 / one_minus_t2));
}

double gaussian_indirect_rd(double theta_d, double gamma, double theta_c) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::domain_error("gaussian_indirect_rd: gamma must be in (0,1]");
  const double grho = gamma * complexity_to_rho(theta_c);
  if (!(theta_d >= 1.0 - grho && theta_d <= 1.0))
    throw std::domain_error(
        "gaussian_indirect_rd: theta_d must be in [1 - gamma rho, 1]");
  const double denom = theta_d - (1.0 - grho);
  if (denom <= 0.0) return kInf;
  return std::max(0.0, 0.5 * std::log2(grho / denom));
}

ChainCovariances chain_effective_covariances(double gamma, double rho,
                                             double kappa) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::domain_error(
        "chain_effective_covariances: gamma must be in (0,1]");
  if (!(rho > 0.0 && rho <= 1.0))
    throw std::domain_error("chain_effective_covariances: rho must be in (0,1]");
  return {gamma, gamma * rho, gamma * rho * kappa, rho * kappa};
}

double distortion_transfer(double theta_d, double gamma, double rho,
                           double sigma) {
  const double grho = gamma * rho;
  if (grho <= 0.0)
    throw degenerate_chain_error(
        "distortion_transfer: gamma * rho must be positive");
  return theta_d / grho - (1.0 - grho) * (1.0 + sigma * sigma) / grho;
}

}  // namespace semrdc
