#include <semrdc/binary_rdc.hpp>

#include <algorithm>
#include <cmath>

#include <semrdc/info_math.hpp>

namespace semrdc {

const char* to_string(BinaryConstraintMode mode) {
  switch (mode) {
    case BinaryConstraintMode::kProof:
      return "proof";
    case BinaryConstraintMode::kTheorem:
      return "theorem";
    case BinaryConstraintMode::kMarginal:
      return "marginal";
  }
  return "unknown";
}

double cascade2(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
    throw std::domain_error("cascade2: crossovers must be in [0,1]");
  return a + b - 2.0 * a * b;
}

double cascade3(double a, double b, double c) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0) ||
      !(c >= 0.0 && c <= 1.0))
    throw std::domain_error("cascade3: crossovers must be in [0,1]");
  return a + b + c + 4.0 * a * b * c - 2.0 * (a * b + a * c + b * c);
}

double binary_semantic_distance(double q_sx, double q_sshat) {
  if (!(q_sx >= 0.0 && q_sx <= 0.5))
    throw std::domain_error("binary_semantic_distance: q_sx must be in [0,1/2]");
  if (!(q_sshat >= 0.0 && q_sshat <= 0.5))
    throw std::domain_error(
        "binary_semantic_distance: q_sshat must be in [0,1/2]");
  if (q_sshat < q_sx - 1e-12)
    throw std::domain_error(
        "binary_semantic_distance: q_sshat < q_sx violates data processing");
  return std::max(0.0, binary_entropy(q_sshat) - binary_entropy(q_sx));
}

double binary_ib_generalization(double q_sx, double q_xu) {
  if (!(q_sx >= 0.0 && q_sx <= 0.5) || !(q_xu >= 0.0 && q_xu <= 0.5))
    throw std::domain_error(
        "binary_ib_generalization: crossovers must be in [0,1/2]");
  return dsbc_mutual_information(cascade2(q_sx, q_xu));
}

namespace {

// Distance induced by recompression crossover q in kProof terms.
double distance_at(double q_su, double q_sx, double q) {
  return binary_entropy(cascade2(q_su, q)) - binary_entropy(q_sx);
}

}  // namespace

BinaryPoint binary_rdc(const BinaryProblem& problem, BinaryConstraintMode mode) {
  double q_sx = problem.q_sx;
  if (!(q_sx >= 0.0 && q_sx <= 1.0))
    throw std::invalid_argument("BinaryProblem.q_sx must be in [0,1]");
  bool normalized = false;
  if (q_sx > 0.5) {
    q_sx = 1.0 - q_sx;
    normalized = true;
  }
  if (!(problem.theta_p >= 0.0))
    throw std::invalid_argument("BinaryProblem.theta_p must be >= 0");
  if (!(problem.theta_c >= 0.0 && problem.theta_c <= 1.0))
    throw std::invalid_argument("BinaryProblem.theta_c must be in [0,1]");

  const double q_xu = binary_entropy_inverse(1.0 - problem.theta_c);
  const double q_su = cascade2(q_sx, q_xu);

  BinaryPoint out{};
  out.q_xu = q_xu;
  out.input_normalized = normalized;

  auto finish = [&](double q_ushat) {
    out.q_ushat = q_ushat;
    out.q_sshat = cascade2(q_su, q_ushat);
    out.rate_bits = std::max(0.0, 1.0 - binary_entropy(q_ushat));
    out.distance_bits =
        std::max(0.0, binary_entropy(out.q_sshat) - binary_entropy(q_sx));
    out.zero_rate = out.rate_bits == 0.0;
    return out;
  };

  if (mode == BinaryConstraintMode::kMarginal) {
    if (problem.theta_p >= 1.0) return finish(0.5);
    return finish(binary_entropy_inverse(1.0 - problem.theta_p));
  }

  if (mode == BinaryConstraintMode::kTheorem) {
    // g(q) = H_b(cascade2(q_su, q)) - H_b(q) decreases from H_b(q_su) to 0.
    auto g = [&](double q) {
      return binary_entropy(cascade2(q_su, q)) - binary_entropy(q);
    };
    if (problem.theta_p >= g(0.0)) return finish(0.0);
    if (problem.theta_p <= 0.0) return finish(0.5);
    double lo = 0.0, hi = 0.5;  // g(lo) > theta_p >= g(hi)
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) > problem.theta_p)
        lo = mid;
      else
        hi = mid;
    }
    return finish(0.5 * (lo + hi));
  }

  // kProof: largest q_ushat whose KL distance fits the budget. The map is
  // monotone because cascade2 is monotone in each argument on [0,1/2];
  // guard that here since the bisection silently relies on it.
  const double d0 = distance_at(q_su, q_sx, 0.0);
  const double dq = distance_at(q_su, q_sx, 0.25);
  const double d1 = distance_at(q_su, q_sx, 0.5);
  if (d0 > dq + 1e-12 || dq > d1 + 1e-12)
    throw std::logic_error("binary_rdc: distance map is not monotone");

  if (problem.theta_p < d0)
    throw infeasible_error(
        "binary_rdc: theta_p is below the semantic-distance floor", d0);
  if (problem.theta_p >= d1) return finish(0.5);

  double lo = 0.0, hi = 0.5;  // D(lo) <= theta_p < D(hi)
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (distance_at(q_su, q_sx, mid) <= problem.theta_p)
      lo = mid;
    else
      hi = mid;
  }
  return finish(lo);
}

}  // namespace semrdc
