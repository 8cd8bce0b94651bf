#include <semrdc/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <semrdc/binary_rdc.hpp>
#include <semrdc/gaussian_rdc.hpp>
#include <semrdc/info_math.hpp>
#include <semrdc/parallel.hpp>

namespace semrdc {

namespace {

constexpr double kBudgetTol = 1e-9;  // budget + tol accepts boundary optima
constexpr double kRateTie = 1e-12;

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Entropy of a Bernoulli(p) by direct summation (oracle-side, kept separate
// from info_math on purpose).
double bern_entropy(double p) { return -(plogp(p) + plogp(1.0 - p)); }

}  // namespace

// ---------------------------------------------------------------------------
// Gaussian parametric oracle
// ---------------------------------------------------------------------------

namespace {

// Rate in bits for correlation fraction f = kappa / sigma.
double rate_from_fraction(double f) {
  const double af = std::abs(f);
  if (af == 0.0) return 0.0;
  if (af >= 1.0) return kInf;
  const double one_minus_f2 = (1.0 - af) * (1.0 + af);
  return -0.5 * std::log2(one_minus_f2);
}

struct GaussBest {
  double rate = kInf;
  double sigma = 0.0;
  double f = 0.0;
  bool valid = false;
};

struct GaussViol {
  double viol = kInf;
  double sigma = 0.0;
  double f = 0.0;
};

}  // namespace

GaussianOracleResult gaussian_parametric_oracle(double gamma, double rho,
                                                double theta_d, double theta_p,
                                                int resolution,
                                                bool allow_negative_kappa) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("gaussian_parametric_oracle: gamma must be in (0,1]");
  if (!(rho > 0.0 && rho <= 1.0))
    throw std::invalid_argument("gaussian_parametric_oracle: rho must be in (0,1]");
  if (!(theta_d >= 0.0))
    throw std::invalid_argument("gaussian_parametric_oracle: theta_d must be >= 0");
  if (!(theta_p >= 0.0))
    throw std::invalid_argument("gaussian_parametric_oracle: theta_p must be >= 0");
  if (resolution < 100)
    throw std::invalid_argument("gaussian_parametric_oracle: resolution must be >= 100");

  const double grho = gamma * rho;
  const double f_lo_limit = allow_negative_kappa ? -1.0 : 0.0;

  GaussBest best;
  GaussViol least;

  auto probe = [&](double sigma, double f) {
    const double w2_excess = (1.0 - sigma) * (1.0 - sigma) - theta_p;
    const double d = 1.0 + sigma * sigma - 2.0 * grho * f * sigma;
    const double d_excess = d - theta_d;
    if (d_excess <= kBudgetTol && w2_excess <= kBudgetTol) {
      const double rate = rate_from_fraction(f);
      if (rate < best.rate) best = {rate, sigma, f, true};
    } else {
      const double viol = std::max(0.0, d_excess) + std::max(0.0, w2_excess);
      if (viol < least.viol) least = {viol, sigma, f};
    }
  };

  auto scan_column = [&](double sigma, double f_lo, double f_hi) {
    for (int j = 0; j < resolution; ++j)
      probe(sigma, f_lo + (f_hi - f_lo) * j / (resolution - 1));
    // The distortion boundary kappa_min = (1 + sigma^2 - theta_d)/(2 grho) is
    // where the column's feasible minimum sits; probing it directly keeps the
    // search from chasing grid jitter along the constraint.
    if (sigma > 0.0) {
      const double fb = (1.0 + sigma * sigma - theta_d) / (2.0 * grho * sigma);
      if (fb >= f_lo_limit && fb <= 1.0) probe(sigma, fb);
    }
  };

  const double sigma0 = 1.0 - std::sqrt(std::min(theta_p, 1.0));

  auto scan = [&](double s_lo, double s_hi, double f_lo, double f_hi) {
    s_lo = std::clamp(s_lo, 0.0, 1.0);
    s_hi = std::clamp(s_hi, 0.0, 1.0);
    f_lo = std::clamp(f_lo, f_lo_limit, 1.0);
    f_hi = std::clamp(f_hi, f_lo_limit, 1.0);
    for (int i = 0; i < resolution; ++i)
      scan_column(s_lo + (s_hi - s_lo) * i / (resolution - 1), f_lo, f_hi);
    // Perception boundary column (active-constraint optimum has sigma there).
    if (sigma0 >= s_lo && sigma0 <= s_hi) scan_column(sigma0, f_lo, f_hi);
  };

  // Full window, then two rounds of 10x zoom around the best point (the
  // least-violating one while nothing is feasible yet).
  double span_s = 1.0, span_f = 1.0 - f_lo_limit;
  scan(0.0, 1.0, f_lo_limit, 1.0);
  for (int round = 0; round < 2; ++round) {
    span_s /= 10.0;
    span_f /= 10.0;
    const double cs = best.valid ? best.sigma : least.sigma;
    const double cf = best.valid ? best.f : least.f;
    scan(cs - span_s / 2, cs + span_s / 2, cf - span_f / 2, cf + span_f / 2);
  }

  GaussianOracleResult out;
  out.feasible = best.valid;
  out.min_rate_bits = best.valid ? best.rate : kInf;
  if (best.valid)
    out.argmin = {best.sigma, best.f * best.sigma};
  else
    out.argmin = {least.sigma, least.f * least.sigma};

  const double theta_c = gaussian_mi_from_correlation(rho);
  GaussianProblem problem{gamma, theta_d, std::min(theta_p, 1.0), theta_c};
  try {
    const GaussianPoint cf_point = gaussian_rdc(problem);
    out.closed_form_bits = cf_point.rate_bits;
    if (out.feasible) out.gap_bits = out.min_rate_bits - cf_point.rate_bits;
    if (cf_point.branch != GaussianBranch::kZeroRate) {
      const double sigma0 = 1.0 - std::sqrt(problem.theta_p);
      const double kappa_thm = (1.0 + sigma0 * sigma0 - theta_d) / (2.0 * grho);
      out.closed_form_kappa_violation = kappa_thm > sigma0 + 1e-12;
    }
  } catch (const infeasible_error&) {
    // closed form infeasible; leave optionals empty
  }
  return out;
}

// ---------------------------------------------------------------------------
// Binary grid oracle
// ---------------------------------------------------------------------------

BinaryChannelAudit audit_binary_channel(double q_sx, const ChannelParams4& ch) {
  if (!(q_sx >= 0.0 && q_sx <= 0.5))
    throw std::invalid_argument("audit_binary_channel: q_sx must be in [0,1/2]");
  for (double v : {ch.p0, ch.p1, ch.q0, ch.q1})
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument(
          "audit_binary_channel: channel parameters must be in [0,1]");

  BinaryChannelAudit a;

  // X uniform; p(U=1) = (p0 + 1 - p1)/2.
  const double tau = 0.5 * (ch.p0 + 1.0 - ch.p1);
  a.mi_xu = std::max(
      0.0, bern_entropy(tau) - 0.5 * (bern_entropy(ch.p0) + bern_entropy(ch.p1)));

  const double pshat1 = (1.0 - tau) * ch.q0 + tau * (1.0 - ch.q1);
  a.mi_ushat = std::max(
      0.0, bern_entropy(pshat1) -
               ((1.0 - tau) * bern_entropy(ch.q0) + tau * bern_entropy(ch.q1)));

  // Compose S -> U through the BSC(q_sx), then U -> Shat.
  const double b0 = (1.0 - q_sx) * ch.p0 + q_sx * (1.0 - ch.p1);  // P(U=1|S=0)
  const double b1 = (1.0 - q_sx) * ch.p1 + q_sx * (1.0 - ch.p0);  // P(U=0|S=1)
  const double c0 = (1.0 - b0) * ch.q0 + b0 * (1.0 - ch.q1);      // P(Shat=1|S=0)
  const double c1 = (1.0 - b1) * ch.q1 + b1 * (1.0 - ch.q0);      // P(Shat=0|S=1)

  const double h_s_shat =
      -(plogp(0.5 * (1.0 - c0)) + plogp(0.5 * c0) + plogp(0.5 * c1) +
        plogp(0.5 * (1.0 - c1)));
  const double h_shat = bern_entropy(0.5 * (c0 + 1.0 - c1));
  const double h_s_given_shat = h_s_shat - h_shat;

  const double h_s_x = -(plogp(0.5 * (1.0 - q_sx)) + plogp(0.5 * q_sx) +
                         plogp(0.5 * q_sx) + plogp(0.5 * (1.0 - q_sx)));
  const double h_s_given_x = h_s_x - 1.0;  // H(X) = 1 for the uniform marginal

  a.distance = std::max(0.0, h_s_given_shat - h_s_given_x);
  return a;
}

namespace {

struct BinaryBest {
  double rate = kInf;
  double asym = kInf;
  ChannelParams4 point;
  bool valid = false;
};

struct BinaryViol {
  double viol = kInf;
  ChannelParams4 point;
  bool has = false;
};

bool improves(const BinaryBest& best, double rate, double asym) {
  if (rate < best.rate - kRateTie) return true;
  return rate <= best.rate + kRateTie && asym < best.asym - 1e-15;
}

void consider(BinaryBest& best, double rate, double asym,
              const ChannelParams4& point) {
  if (!best.valid || improves(best, rate, asym)) {
    best = {rate, asym, point, true};
  }
}

// Merge preserving the first-better-wins order of sequential scanning.
void merge(BinaryBest& into, const BinaryBest& other) {
  if (!other.valid) return;
  if (!into.valid || improves(into, other.rate, other.asym)) into = other;
}

}  // namespace

BinaryOracleResult binary_grid_oracle(double q_sx, double theta_c,
                                      double theta_p, int resolution,
                                      int threads) {
  if (!(q_sx >= 0.0 && q_sx <= 0.5))
    throw std::invalid_argument("binary_grid_oracle: q_sx must be in [0,1/2]");
  if (!(theta_c >= 0.0 && theta_c <= 1.0))
    throw std::invalid_argument("binary_grid_oracle: theta_c must be in [0,1]");
  if (!(theta_p >= 0.0))
    throw std::invalid_argument("binary_grid_oracle: theta_p must be >= 0");
  if (resolution < 50)
    throw std::invalid_argument("binary_grid_oracle: resolution must be >= 50");

  const int res = resolution;
  const double step = 1.0 / (res - 1);

  std::vector<double> vals(res);
  for (int i = 0; i < res; ++i) vals[i] = i * step;

  // q-pair tables, indexed qi * res + qj.
  const int nq = res * res;
  std::vector<double> bent(res);
  for (int i = 0; i < res; ++i) bent[i] = bern_entropy(vals[i]);

  // tau depends on the p-pair only through k = i - j + res - 1.
  const int ntau = 2 * res - 1;
  std::vector<std::vector<double>> rate_table(ntau);
  std::vector<std::vector<int>> order(ntau);
  for (int k = 0; k < ntau; ++k) {
    const double tau = 0.5 * static_cast<double>(k) / (res - 1);
    auto& rates = rate_table[k];
    rates.resize(nq);
    for (int qi = 0; qi < res; ++qi)
      for (int qj = 0; qj < res; ++qj) {
        const double q0 = vals[qi], q1 = vals[qj];
        const double pshat1 = (1.0 - tau) * q0 + tau * (1.0 - q1);
        rates[qi * res + qj] = std::max(
            0.0, bern_entropy(pshat1) -
                     ((1.0 - tau) * bent[qi] + tau * bent[qj]));
      }
    auto& ord = order[k];
    ord.resize(nq);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&rates](int a, int b) {
      return rates[a] != rates[b] ? rates[a] < rates[b] : a < b;
    });
  }

  const double h_s_given_x = bern_entropy(q_sx);

  // Distance for the composed source channel (b0, b1) followed by (q0, q1).
  auto distance_for = [&](double b0, double b1, double q0, double q1) {
    const double c0 = (1.0 - b0) * q0 + b0 * (1.0 - q1);
    const double c1 = (1.0 - b1) * q1 + b1 * (1.0 - q0);
    const double h_joint =
        -(plogp(0.5 * (1.0 - c0)) + plogp(0.5 * c0) + plogp(0.5 * c1) +
          plogp(0.5 * (1.0 - c1)));
    const double h_shat = bern_entropy(0.5 * (c0 + 1.0 - c1));
    return std::max(0.0, h_joint - h_shat - h_s_given_x);
  };

  // Coarse 4-parameter pass, chunked by the p0 index so results are
  // independent of the thread count.
  std::vector<BinaryBest> chunk_best(res);
  std::vector<BinaryViol> chunk_viol(res);

  parallel_for_chunks(res, threads, [&](std::int64_t ci) {
    const int i = static_cast<int>(ci);
    BinaryBest best;
    BinaryViol viol;
    const double p0 = vals[i];
    for (int j = 0; j < res; ++j) {
      const double p1 = vals[j];
      const double tau = 0.5 * (p0 + 1.0 - p1);
      const double mi_xu =
          bern_entropy(tau) - 0.5 * (bent[i] + bent[j]);
      if (mi_xu > theta_c + kBudgetTol) continue;

      const double b0 = (1.0 - q_sx) * p0 + q_sx * (1.0 - p1);
      const double b1 = (1.0 - q_sx) * p1 + q_sx * (1.0 - p0);

      // Recompression can only degrade, so the identity q-channel attains
      // this p-pair's minimum distance; if even that violates the budget no
      // q-pair is feasible here.
      const double floor_dist = distance_for(b0, b1, 0.0, 0.0);
      if (floor_dist > theta_p + kBudgetTol) {
        if (!viol.has || floor_dist - theta_p < viol.viol)
          viol = {floor_dist - theta_p, {p0, p1, 0.0, 0.0}, true};
        continue;
      }

      const int k = i - j + res - 1;
      const auto& rates = rate_table[k];
      for (int qidx : order[k]) {
        const double rate = rates[qidx];
        if (best.valid && rate > best.rate + kRateTie) break;
        const double q0 = vals[qidx / res], q1 = vals[qidx % res];
        if (distance_for(b0, b1, q0, q1) > theta_p + kBudgetTol) continue;
        const double asym = std::abs(p0 - p1) + std::abs(q0 - q1);
        consider(best, rate, asym, {p0, p1, q0, q1});
      }
    }
    chunk_best[ci] = best;
    chunk_viol[ci] = viol;
  });

  BinaryBest coarse;
  BinaryViol least;
  for (int i = 0; i < res; ++i) {
    merge(coarse, chunk_best[i]);
    if (chunk_viol[i].has && chunk_viol[i].viol < least.viol) least = chunk_viol[i];
  }

  // Symmetric-slice refinement (p0 = p1 = w, q0 = q1 = z): one full-window
  // round plus two 10x zooms, evaluated through the joint-law audit. Tracked
  // separately from the coarse best so the caller can compare the symmetric
  // family against the full search.
  BinaryBest slice;
  const int res_sym = std::max(res, 201);
  double span = 1.0;
  double cw = 0.5, cz = 0.5;
  if (coarse.valid) {
    cw = 0.5 * (coarse.point.p0 + coarse.point.p1);
    cz = 0.5 * (coarse.point.q0 + coarse.point.q1);
  } else if (least.has) {
    cw = 0.5 * (least.point.p0 + least.point.p1);
    cz = 0.5 * (least.point.q0 + least.point.q1);
  }
  for (int round = 0; round < 3; ++round) {
    const double w_lo = std::clamp(cw - span / 2, 0.0, 1.0);
    const double w_hi = std::clamp(cw + span / 2, 0.0, 1.0);
    const double z_lo = std::clamp(cz - span / 2, 0.0, 1.0);
    const double z_hi = std::clamp(cz + span / 2, 0.0, 1.0);
    for (int a = 0; a < res_sym; ++a) {
      const double w = w_lo + (w_hi - w_lo) * a / (res_sym - 1);
      const double mi_xu = 1.0 - bern_entropy(w);
      if (mi_xu > theta_c + kBudgetTol) continue;
      const double b0 = (1.0 - q_sx) * w + q_sx * (1.0 - w);
      for (int b = 0; b < res_sym; ++b) {
        const double z = z_lo + (z_hi - z_lo) * b / (res_sym - 1);
        const double dist = distance_for(b0, b0, z, z);
        if (dist <= theta_p + kBudgetTol) {
          // Symmetric channel, uniform marginals: I(U;Shat) = H(Shat) - H(Shat|U).
          const double rate = std::max(0.0, bern_entropy(0.5) - bern_entropy(z));
          consider(slice, rate, 0.0, {w, w, z, z});
        } else if (!slice.valid && !coarse.valid) {
          if (!least.has || dist - theta_p < least.viol)
            least = {dist - theta_p, {w, w, z, z}, true};
        }
      }
    }
    span /= 10.0;
    if (slice.valid) {
      cw = 0.5 * (slice.point.p0 + slice.point.p1);
      cz = 0.5 * (slice.point.q0 + slice.point.q1);
    } else if (least.has) {
      cw = 0.5 * (least.point.p0 + least.point.p1);
      cz = 0.5 * (least.point.q0 + least.point.q1);
    }
  }

  BinaryBest refined = coarse;
  merge(refined, slice);

  BinaryOracleResult out;
  out.feasible = refined.valid;
  out.min_rate_bits = refined.valid ? refined.rate : kInf;
  out.argmin = refined.valid ? refined.point
                             : (least.has ? least.point : ChannelParams4{});
  out.coarse_argmin = coarse.valid ? coarse.point : out.argmin;
  out.coarse_min_rate_bits = coarse.valid ? coarse.rate : kInf;
  out.symmetric_min_rate_bits = slice.valid ? slice.rate : kInf;

  try {
    const BinaryPoint cf = binary_rdc({q_sx, theta_p, theta_c});
    out.closed_form_bits = cf.rate_bits;
    if (out.feasible) out.gap_bits = out.min_rate_bits - cf.rate_bits;
  } catch (const infeasible_error&) {
  }
  return out;
}

}  // namespace semrdc
