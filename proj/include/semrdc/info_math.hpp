#pragma once

// Scalar information measures shared by every other component.
//
// All rates, entropies and divergences are in bits (log base 2). Infinite
// values are first-class: theta_c = inf is a legal budget and kl_binary can
// return inf for singular reference distributions.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace semrdc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// H_b(q) = -q log2 q - (1-q) log2(1-q), with the convention 0 log 0 = 0.
inline double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::domain_error("binary_entropy: q must be in [0,1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  return -(q * std::log2(q) + (1.0 - q) * std::log2(1.0 - q));
}

// Unique q in [0, 1/2] with H_b(q) = h. Bisection rather than Newton: the
// derivative vanishes at q = 1/2, so bracketing is the only way to guarantee
// convergence near the top of the curve.
inline double binary_entropy_inverse(double h) {
  if (!(h >= 0.0 && h <= 1.0))
    throw std::domain_error("binary_entropy_inverse: h must be in [0,1]");
  if (h == 0.0) return 0.0;
  if (h == 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < h)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// I(X;U) = 1 - H_b(q) for a doubly symmetric binary channel with crossover q.
inline double dsbc_mutual_information(double q) {
  if (!(q >= 0.0 && q <= 0.5))
    throw std::domain_error(
        "dsbc_mutual_information: crossover must be in [0,1/2]");
  return 1.0 - binary_entropy(q);
}

// I = 1/2 log2(1/(1-rho^2)) for a jointly Gaussian pair with correlation rho.
inline double gaussian_mi_from_correlation(double rho) {
  if (!(rho >= -1.0 && rho <= 1.0))
    throw std::domain_error(
        "gaussian_mi_from_correlation: |rho| must not exceed 1");
  const double one_minus_rho2 = (1.0 - rho) * (1.0 + rho);
  if (one_minus_rho2 <= 0.0) return kInf;
  return -0.5 * std::log2(one_minus_rho2);
}

// rho = sqrt(1 - 2^(-2 theta_c)); inverse of gaussian_mi_from_correlation.
inline double complexity_to_rho(double theta_c) {
  if (!(theta_c >= 0.0))
    throw std::domain_error("complexity_to_rho: theta_c must be >= 0");
  if (std::isinf(theta_c)) return 1.0;
  // -expm1 keeps full precision for small theta_c where 1 - 2^(-2t) ~ 2t ln2.
  return std::sqrt(-std::expm1(-2.0 * theta_c * M_LN2));
}

// 2^(-2 theta_c) = 1 - rho^2. The complement carries the information that
// rounds away in rho itself once rho is within one ulp of 1 (theta_c beyond
// ~26 bits); pairing this with gaussian_mi_from_rho_complement keeps the
// complexity <-> correlation round trip exact at any budget.
inline double complexity_to_rho_complement(double theta_c) {
  if (!(theta_c >= 0.0))
    throw std::domain_error(
        "complexity_to_rho_complement: theta_c must be >= 0");
  if (std::isinf(theta_c)) return 0.0;
  return std::exp2(-2.0 * theta_c);
}

inline double gaussian_mi_from_rho_complement(double one_minus_rho2) {
  if (!(one_minus_rho2 >= 0.0 && one_minus_rho2 <= 1.0))
    throw std::domain_error(
        "gaussian_mi_from_rho_complement: complement must be in [0,1]");
  if (one_minus_rho2 == 0.0) return kInf;
  return -0.5 * std::log2(one_minus_rho2);
}

// Squared 2-Wasserstein distance between N(0, sigma_a^2) and N(0, sigma_b^2).
inline double wasserstein2_gaussian_scalar(double sigma_a, double sigma_b) {
  if (!(sigma_a >= 0.0) || !(sigma_b >= 0.0))
    throw std::domain_error(
        "wasserstein2_gaussian_scalar: standard deviations must be >= 0");
  const double d = sigma_a - sigma_b;
  return d * d;
}

// D(Bern(p) || Bern(q)) in bits, 0 log 0 = 0. q in {0,1} with p != q gives
// infinite divergence, returned as inf rather than raised.
inline double kl_binary(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("kl_binary: p must be in [0,1]");
  if (!(q >= 0.0 && q <= 1.0))
    throw std::domain_error("kl_binary: q must be in [0,1]");
  if (p == q) return 0.0;
  if (q == 0.0 || q == 1.0) return kInf;
  double v = 0.0;
  if (p > 0.0) v += p * std::log2(p / q);
  if (p < 1.0) v += (1.0 - p) * std::log2((1.0 - p) / (1.0 - q));
  return v;
}

}  // namespace semrdc
