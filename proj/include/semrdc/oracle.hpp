#pragma once

// Independent verification engines for the closed forms:
//
//  * gaussian_parametric_oracle - grid-plus-zoom search over the Gaussian
//    test channel (sigma, kappa), minimizing 1/2 log2(sigma^2/(sigma^2-k^2))
//    under the distortion and squared-W2 constraints;
//  * binary_grid_oracle - exhaustive search over asymmetric binary channel
//    pairs (p0, p1, q0, q1), minimizing I(U;Shat) under the complexity and
//    KL semantic-distance constraints, with all information quantities summed
//    from the induced joint law;
//  * audit_binary_channel - the per-channel exact evaluation both the grid
//    search and external tests use.
//
// The searches are derivative-free on purpose: the feasible sets have corners
// where constraints activate, and a dumb auditable grid is the point of an
// oracle. Constraint checks allow budget + 1e-9 so boundary optima on grid
// nodes are not spuriously rejected.

#include <cstdint>
#include <optional>

#include <semrdc/errors.hpp>

namespace semrdc {

struct GaussianTestChannel {
  double sigma = 0.0;
  double kappa = 0.0;
};

struct GaussianOracleResult {
  double min_rate_bits = 0.0;  // +inf when infeasible
  GaussianTestChannel argmin;  // least-violating point when infeasible
  bool feasible = false;
  std::optional<double> closed_form_bits;  // empty when closed form infeasible
  std::optional<double> gap_bits;          // min_rate - closed_form
  // True when a channel pinned to sigma = 1 - sqrt(theta_p) would need
  // kappa > sigma to meet theta_d: on the complexity-limited branch the
  // closed form's fixed-sigma reading is inconsistent with the correlation
  // bound, and its rate is only achievable with sigma floating free.
  bool closed_form_kappa_violation = false;
};

// rho is the encoder correlation (already derived from theta_c by callers).
// Searches sigma in [0,1] and kappa in [0, sigma] (or [-sigma, sigma] when
// allow_negative_kappa), refining the best cell with two rounds of 10x zoom.
GaussianOracleResult gaussian_parametric_oracle(double gamma, double rho,
                                                double theta_d, double theta_p,
                                                int resolution,
                                                bool allow_negative_kappa = false);

struct ChannelParams4 {
  double p0 = 0.0;  // P(U = 1 | X = 0)
  double p1 = 0.0;  // P(U = 0 | X = 1)
  double q0 = 0.0;  // P(Shat = 1 | U = 0)
  double q1 = 0.0;  // P(Shat = 0 | U = 1)
};

// Exact audit of one channel pair against a DSBS(q_sx) source: I(X;U),
// I(U;Shat) and the KL semantic distance H(S|Shat) - H(S|X), all in bits.
struct BinaryChannelAudit {
  double mi_xu = 0.0;
  double mi_ushat = 0.0;
  double distance = 0.0;
};

BinaryChannelAudit audit_binary_channel(double q_sx, const ChannelParams4& ch);

struct BinaryOracleResult {
  double min_rate_bits = 0.0;   // +inf when infeasible
  ChannelParams4 argmin;        // best over coarse pass plus refinement
  ChannelParams4 coarse_argmin; // best point of the 4-parameter coarse grid
  double coarse_min_rate_bits = 0.0;  // +inf when the coarse pass found nothing
  // Best rate over symmetric channels only (p0 = p1, q0 = q1); +inf when no
  // symmetric channel is feasible. The closed form constructs exactly this
  // family, so closed_form ~ symmetric_min even at budgets where asymmetric
  // channels achieve strictly less (see binary_grid_oracle notes below).
  double symmetric_min_rate_bits = 0.0;
  bool feasible = false;
  std::optional<double> closed_form_bits;
  std::optional<double> gap_bits;
};

// Coarse pass: full 4-parameter grid with `resolution` points per axis.
// Refinement: grid-plus-zoom on the symmetric slice p0 = p1, q0 = q1 (the
// stationarity family), evaluated through the same joint-law audit. Among
// equal-rate feasible points the search prefers the more symmetric one, so
// flat regions (e.g. the rate-0 manifold q0 = 1 - q1) report their canonical
// representative.
//
// Note on optimality: in a band of budgets just below the zero-rate
// threshold the 4-parameter search finds asymmetric channel pairs (often
// with one deterministic leg) that undercut the best symmetric cascade by
// tens of millibits. The symmetric family is a stationary point there, not
// the global minimum. min_rate_bits then sits strictly below
// symmetric_min_rate_bits and the reported argmin is asymmetric; callers
// that compare against the symmetric closed form should consult
// symmetric_min_rate_bits to tell that situation apart from a wrong closed
// form.
BinaryOracleResult binary_grid_oracle(double q_sx, double theta_c,
                                      double theta_p, int resolution,
                                      int threads = 0);

}  // namespace semrdc
