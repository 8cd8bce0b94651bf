#pragma once

// Closed-form binary rate-distortion-complexity evaluation for a doubly
// symmetric binary source pair (S, X) with crossover q_sx. Coding uses a
// cascade of symmetric channels X -> U -> Shat with crossovers q_xu, q_ushat;
// the complexity budget fixes q_xu through theta_c = 1 - H_b(q_xu) and the
// semantic-distance budget selects q_ushat.

#include <semrdc/errors.hpp>

namespace semrdc {

struct BinaryProblem {
  double q_sx = 0.1;     // source-observation crossover
  double theta_p = 0.0;  // KL semantic-distance budget in bits, >= 0
  double theta_c = 1.0;  // complexity budget in bits, [0, 1]
};

// Three inequivalent readings of how theta_p determines q_ushat exist for
// this construction. kProof (the default) bounds the KL distance
// H_b(q_sshat) - H_b(q_sx), the only reading consistent with the constraint
// d_KL(p_{S|X}, p_{S|Shat}) <= theta_p; the other two are kept selectable so
// the discrepancy can be measured instead of hidden.
enum class BinaryConstraintMode {
  kProof,     // largest q_ushat with H_b(q_sshat) - H_b(q_sx) <= theta_p
  kTheorem,   // q_ushat solving theta_p = H_b(q_sshat) - H_b(q_ushat)
  kMarginal,  // q_ushat solving theta_p = 1 - H_b(q_ushat)
};

const char* to_string(BinaryConstraintMode mode);

struct BinaryPoint {
  double rate_bits;       // 1 - H_b(q_ushat)
  double q_xu;            // from theta_c = 1 - H_b(q_xu)
  double q_ushat;         // selected recompression crossover
  double q_sshat;         // end-to-end crossover through the cascade
  double distance_bits;   // H_b(q_sshat) - H_b(q_sx) at the selected channel
  bool zero_rate;
  bool input_normalized;  // q_sx > 1/2 was folded to 1 - q_sx
};

// Two-channel crossover composition a + b - 2ab. Associative, commutative,
// and absorbing at 1/2.
double cascade2(double a, double b);

// Three-channel composition, expanded polynomial form. Algebraically equal
// to cascade2(cascade2(a, b), c).
double cascade3(double a, double b, double c);

// H_b(q_sshat) - H_b(q_sx) >= 0. Requires q_sx <= q_sshat (data processing
// only degrades); violations beyond rounding raise a domain error.
double binary_semantic_distance(double q_sx, double q_sshat);

// IB relevance of the no-recompression scheme Shat = U:
// 1 - H_b(cascade2(q_sx, q_xu)).
double binary_ib_generalization(double q_sx, double q_xu);

// Closed-form evaluation. Throws infeasible_error (carrying the distance
// floor) when theta_p is below the floor in kProof mode.
BinaryPoint binary_rdc(const BinaryProblem& problem,
                       BinaryConstraintMode mode = BinaryConstraintMode::kProof);

}  // namespace semrdc
