// Acceptance suite: one check per numbered criterion, each printed as a
// single pass/fail line with its runtime. Tolerances and thresholds are
// pinned in code here, not configurable.
//
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <semrdc/binary_rdc.hpp>
#include <semrdc/bounds.hpp>
#include <semrdc/chain_sim.hpp>
#include <semrdc/gaussian_rdc.hpp>
#include <semrdc/info_math.hpp>
#include <semrdc/oracle.hpp>
#include <semrdc/parallel.hpp>
#include <semrdc/rng.hpp>

using namespace semrdc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  void fail(const std::string& msg) {
    out.pass = false;
    if (!out.detail.empty()) out.detail += "; ";
    if (fail_count++ < 5) out.detail += msg;
  }
  void note(const std::string& msg) {
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += msg;
  }
  Outcome out;
  int fail_count = 0;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::vector<double> kGammaGrid = {0.6, 0.7, 0.8, 0.9, 1.0};
const std::vector<double> kThetaCGrid = {0.25, 0.5, 1.0, 2.0, kInf};
const std::vector<double> kThetaDGrid = {0.2, 0.5, 0.8, 1.2, 1.8};
const std::vector<double> kThetaPGrid = {0.0, 0.1, 0.3, 0.6, 1.0};

const std::vector<double> kQsxGrid = {0.05, 0.1,  0.15, 0.2,  0.25,
                                      0.3,  0.35, 0.4,  0.45, 0.5};
const std::vector<double> kBinThetaCGrid = {0.1, 0.2, 0.3, 0.4, 0.5,
                                            0.6, 0.7, 0.8, 0.9, 1.0};
const std::vector<double> kBinThetaPGrid = {0.02, 0.05, 0.1,  0.15, 0.22,
                                            0.3,  0.4,  0.55, 0.75, 1.0};

// --------------------------------------------------------------------------
// 1. Shannon anchor
// --------------------------------------------------------------------------
Outcome criterion_shannon() {
  Check c;
  for (double d : {0.1, 0.25, 0.5, 0.9}) {
    const double rate = gaussian_rdc({1.0, d, 1.0, kInf}).rate_bits;
    const double expected = 0.5 * std::log2(1.0 / d);
    if (std::abs(rate - expected) > 1e-12)
      c.fail("theta_d=" + fmt(d) + ": " + fmt(rate) + " vs " + fmt(expected));
  }
  return c.out;
}

// --------------------------------------------------------------------------
// 2. RDP reduction on a 50x50 grid
// --------------------------------------------------------------------------
Outcome criterion_rdp_reduction() {
  Check c;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const double theta_d = 0.02 + (2.5 - 0.02) * i / 49.0;
      const double theta_p = j / 49.0;
      const double a = gaussian_rdc({1.0, theta_d, theta_p, kInf}).rate_bits;
      const double b = gaussian_rdp_reduction(theta_d, theta_p);
      worst = std::max(worst, std::abs(a - b));
      if (std::abs(a - b) > 1e-10)
        c.fail("theta_d=" + fmt(theta_d) + " theta_p=" + fmt(theta_p));
    }
  c.note("max |diff| = " + fmt(worst));
  return c.out;
}

// --------------------------------------------------------------------------
// 3. Gaussian closed form vs parametric oracle on a 5^4 grid
// --------------------------------------------------------------------------
Outcome criterion_gaussian_oracle() {
  Check c;
  struct Task {
    double gamma, theta_c, theta_d, theta_p;
  };
  std::vector<Task> tasks;
  for (double g : kGammaGrid)
    for (double tc : kThetaCGrid)
      for (double td : kThetaDGrid)
        for (double tp : kThetaPGrid) tasks.push_back({g, tc, td, tp});

  struct Result {
    bool ok = true;
    bool excluded = false;
    double gap = 0.0;
    std::string msg;
  };
  std::vector<Result> results(tasks.size());

  parallel_for_chunks(static_cast<std::int64_t>(tasks.size()), 0, [&](std::int64_t i) {
    const Task& t = tasks[static_cast<std::size_t>(i)];
    Result& r = results[static_cast<std::size_t>(i)];
    const double rho = complexity_to_rho(t.theta_c);
    const GaussianOracleResult orc =
        gaussian_parametric_oracle(t.gamma, rho, t.theta_d, t.theta_p, 200);

    bool closed_feasible = true;
    double closed = 0.0;
    GaussianBranch branch = GaussianBranch::kZeroRate;
    try {
      const GaussianPoint pt = gaussian_rdc({t.gamma, t.theta_d, t.theta_p, t.theta_c});
      closed = pt.rate_bits;
      branch = pt.branch;
    } catch (const infeasible_error&) {
      closed_feasible = false;
    }

    const std::string where = "(g=" + fmt(t.gamma) + ",tc=" + fmt(t.theta_c) +
                              ",td=" + fmt(t.theta_d) + ",tp=" + fmt(t.theta_p) + ")";
    if (!closed_feasible) {
      if (orc.feasible) {
        r.ok = false;
        r.msg = "oracle feasible below closed-form floor " + where;
      }
      return;
    }
    const bool ambiguous = branch == GaussianBranch::kComplexityLimited &&
                           t.gamma * rho < 1.0 - 1e-9;
    if (ambiguous) {
      r.excluded = true;
      if (orc.feasible && std::isfinite(closed)) r.gap = orc.min_rate_bits - closed;
      return;
    }
    if (std::isinf(closed)) {
      // theta_d fell exactly on the feasibility floor: the closed form
      // correctly diverges. The oracle's W2 budget slack (1e-9 absolute)
      // admits sigma down to 1 - sqrt(1e-9), so boundary channels with rate
      // ~ -1/2 log2(2 eps (1/grho - 1)) ~ 7-15 bits slip in; anything under
      // 6 bits would mean the point is not actually divergent.
      if (orc.feasible && orc.min_rate_bits < 6.0) {
        r.ok = false;
        r.msg = "oracle rate " + fmt(orc.min_rate_bits) +
                " too low at a divergence point " + where;
      }
      return;
    }
    if (!orc.feasible) {
      r.ok = false;
      r.msg = "oracle infeasible where closed form is feasible " + where;
      return;
    }
    r.gap = orc.min_rate_bits - closed;
    if (std::abs(r.gap) > 5e-3) {
      r.ok = false;
      r.msg = "gap " + fmt(r.gap) + " " + where;
    }
  });

  int excluded = 0;
  double worst = 0.0, worst_excluded = 0.0;
  for (const Result& r : results) {
    if (!r.ok) c.fail(r.msg);
    if (r.excluded) {
      ++excluded;
      worst_excluded = std::max(worst_excluded, std::abs(r.gap));
    } else {
      worst = std::max(worst, std::abs(r.gap));
    }
  }
  c.note(std::to_string(tasks.size() - excluded) + " asserted, max |gap| = " +
         fmt(worst) + "; " + std::to_string(excluded) +
         " complexity-limited ambiguity points reported (max |gap| = " +
         fmt(worst_excluded) + ")");
  return c.out;
}

// --------------------------------------------------------------------------
// 4. Binary closed form vs exhaustive grid oracle on a 10^3 grid
// --------------------------------------------------------------------------
Outcome criterion_binary_oracle() {
  Check c;
  struct Task {
    double q_sx, theta_c, theta_p;
  };
  std::vector<Task> tasks;
  for (double q : kQsxGrid)
    for (double tc : kBinThetaCGrid)
      for (double tp : kBinThetaPGrid) tasks.push_back({q, tc, tp});

  struct Result {
    bool ok = true;
    bool excluded = false;
    double gap = 0.0;
    std::string msg;
  };
  std::vector<Result> results(tasks.size());
  constexpr int kRes = 50;
  constexpr double kStep = 1.0 / (kRes - 1);

  parallel_for_chunks(static_cast<std::int64_t>(tasks.size()), 0, [&](std::int64_t i) {
    const Task& t = tasks[static_cast<std::size_t>(i)];
    Result& r = results[static_cast<std::size_t>(i)];
    const std::string where = "(q=" + fmt(t.q_sx) + ",tc=" + fmt(t.theta_c) +
                              ",tp=" + fmt(t.theta_p) + ")";
    const BinaryOracleResult orc =
        binary_grid_oracle(t.q_sx, t.theta_c, t.theta_p, kRes, 1);

    bool closed_feasible = true;
    double closed = 0.0;
    try {
      closed = binary_rdc({t.q_sx, t.theta_p, t.theta_c}).rate_bits;
    } catch (const infeasible_error&) {
      closed_feasible = false;
    }

    if (!closed_feasible) {
      if (orc.feasible) {
        r.ok = false;
        r.msg = "oracle feasible below closed-form floor " + where;
      }
      return;
    }
    if (!orc.feasible) {
      r.ok = false;
      r.msg = "oracle infeasible where closed form is feasible " + where;
      return;
    }
    r.gap = orc.min_rate_bits - closed;
    const bool argmin_asymmetric =
        std::abs(orc.argmin.p0 - orc.argmin.p1) > 2 * kStep + 1e-12 ||
        std::abs(orc.argmin.q0 - orc.argmin.q1) > 2 * kStep + 1e-12;
    // In the regime where the symmetric construction is optimal, the fine
    // symmetric-slice refinement dominates the merge, so an asymmetric final
    // argmin means the 4-parameter search genuinely beat every symmetric
    // channel. Together with a strict undercut this is the documented
    // optimality gap of the closed form; both are implementation bugs
    // instead if the symmetric slice does not reproduce the closed form.
    if (std::abs(r.gap) > 5e-3 || argmin_asymmetric) {
      r.ok = false;
      const bool slice_matches_closed =
          std::isfinite(orc.symmetric_min_rate_bits) &&
          std::abs(orc.symmetric_min_rate_bits - closed) <= 5e-3;
      if (r.gap <= 5e-3 && slice_matches_closed) {
        r.excluded = true;  // grouped into the asymmetric-optimum summary
      } else {
        r.msg = "gap " + fmt(r.gap) +
                (slice_matches_closed ? "" : " (symmetric slice off too)") +
                " " + where;
      }
      return;
    }
    // Symmetric channels must attain the full 4-parameter grid minimum.
    if (orc.min_rate_bits > orc.coarse_min_rate_bits + 1e-9) {
      r.ok = false;
      r.msg = "symmetric slice above the 4-parameter grid minimum " + where;
    }
  });

  int undercuts = 0;
  double worst = 0.0, worst_undercut = 0.0;
  for (const Result& r : results) {
    if (!r.ok && !r.excluded) c.fail(r.msg);
    if (r.excluded) {
      c.out.pass = false;  // the criterion asserts every grid point
      ++undercuts;
      worst_undercut = std::max(worst_undercut, std::max(0.0, -r.gap));
    } else {
      worst = std::max(worst, std::abs(r.gap));
    }
  }
  c.note(std::to_string(tasks.size()) + " points, max |gap| outside the "
         "asymmetric-optimum band = " + fmt(worst));
  if (undercuts > 0)
    c.note(std::to_string(undercuts) +
           " points where the exhaustive search finds asymmetric channels "
           "strictly better than the symmetric construction (max undercut = " +
           fmt(worst_undercut) +
           " bits; the best symmetric channel matches the closed form at "
           "every such point) - see the decisions ledger");
  return c.out;
}

// --------------------------------------------------------------------------
// 5. Monte-Carlo moment checks
// --------------------------------------------------------------------------
Outcome criterion_mc_moments() {
  Check c;
  const GaussianChainMoments m =
      simulate_gaussian_chain(0.9, 0.8, 0.5, 0.8, 1000000, 2025);
  if (std::abs(m.mse.mean - 0.92) > 4 * m.mse.std_err)
    c.fail("gaussian mse " + fmt(m.mse.mean) + " not within 4 stderr of 0.92");
  c.note("mse = " + fmt(m.mse.mean) + " +- " + fmt(m.mse.std_err));

  const double triples[3][3] = {{0.1, 0.2, 0.1}, {0.05, 0.05, 0.05}, {0.3, 0.1, 0.2}};
  int k = 1;
  for (const auto& t : triples) {
    const McEstimate e =
        simulate_binary_chain(t[0], t[1], t[2], 1000000, static_cast<std::uint64_t>(k++));
    const double expect = cascade3(t[0], t[1], t[2]);
    if (std::abs(e.mean - expect) > 4 * e.std_err)
      c.fail("binary crossover " + fmt(e.mean) + " vs cascade3 " + fmt(expect));
  }
  return c.out;
}

// --------------------------------------------------------------------------
// 6. Monotonicity along every budget axis on the acceptance grids
// --------------------------------------------------------------------------
Outcome criterion_monotonicity() {
  Check c;
  int violations = 0;

  auto g_rate = [](double g, double td, double tp, double tc) {
    try {
      return gaussian_rdc({g, td, tp, tc}).rate_bits;
    } catch (const infeasible_error&) {
      return kInf;
    }
  };
  for (double g : kGammaGrid) {
    for (double tp : kThetaPGrid)
      for (double tc : kThetaCGrid) {
        double prev = kInf;
        for (double td : kThetaDGrid) {
          const double r = g_rate(g, td, tp, tc);
          if (r > prev + 1e-12) ++violations;
          prev = r;
        }
      }
    for (double td : kThetaDGrid)
      for (double tc : kThetaCGrid) {
        double prev = kInf;
        for (double tp : kThetaPGrid) {
          const double r = g_rate(g, td, tp, tc);
          if (r > prev + 1e-12) ++violations;
          prev = r;
        }
      }
    for (double td : kThetaDGrid)
      for (double tp : kThetaPGrid) {
        double prev = kInf;
        for (double tc : kThetaCGrid) {
          const double r = g_rate(g, td, tp, tc);
          if (r > prev + 1e-12) ++violations;
          prev = r;
        }
      }
  }

  auto b_rate = [](double q, double tp, double tc) {
    try {
      return binary_rdc({q, tp, tc}).rate_bits;
    } catch (const infeasible_error&) {
      return kInf;
    }
  };
  for (double q : kQsxGrid) {
    for (double tc : kBinThetaCGrid) {
      double prev = kInf;
      for (double tp : kBinThetaPGrid) {
        const double r = b_rate(q, tp, tc);
        if (r > prev + 1e-12) ++violations;
        prev = r;
      }
    }
    for (double tp : kBinThetaPGrid) {
      double prev = kInf;
      for (double tc : kBinThetaCGrid) {
        const double r = b_rate(q, tp, tc);
        if (r > prev + 1e-12) ++violations;
        prev = r;
      }
    }
  }

  if (violations > 0) c.fail(std::to_string(violations) + " monotonicity violations");
  return c.out;
}

// --------------------------------------------------------------------------
// 7. Variational bound suite
// --------------------------------------------------------------------------
Outcome criterion_variational() {
  Check c;
  const double corr = std::sqrt(0.5);  // I(X;U) = 0.5 bits
  const double cvar = 1.0 - corr * corr;
  constexpr double kLog2TwoPi = 2.651496129472319;
  auto log2_normal = [&](double v, double mu, double var) {
    return -0.5 * (kLog2TwoPi + std::log2(var)) -
           (v - mu) * (v - mu) / (2.0 * var * M_LN2);
  };
  auto fixture = [&](std::size_t n, std::uint64_t seed, double t_var) {
    SampleLogDensities s;
    s.log_p_u_given_x.resize(n);
    s.log_t_u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double x, e;
      normal_pair_at(seed, i, x, e);
      const double u = corr * x + std::sqrt(cvar) * e;
      s.log_p_u_given_x[i] = log2_normal(u, corr * x, cvar);
      s.log_t_u[i] = log2_normal(u, 0.0, t_var);
    }
    return s;
  };

  const McEstimate matched = complexity_upper_bound(fixture(1000000, 424242, 1.0));
  if (std::abs(matched.mean - 0.5) > 4 * matched.std_err)
    c.fail("matched complexity bound " + fmt(matched.mean) + " +- " +
           fmt(matched.std_err) + " not within 4 stderr of 0.5");
  c.note("matched mean = " + fmt(matched.mean) + " +- " + fmt(matched.std_err));

  // Bound direction: upper bound must not undercut the truth by more than
  // 4 stderr, in at least 99 of 100 seeded trials (mismatched marginal).
  int comp_hold = 0;
  for (int t = 0; t < 100; ++t) {
    const McEstimate est =
        complexity_upper_bound(fixture(100000, 1000 + static_cast<std::uint64_t>(t), 1.5));
    if (est.mean >= 0.5 - 4 * est.std_err) ++comp_hold;
  }
  if (comp_hold < 99)
    c.fail("complexity bound direction held in only " + std::to_string(comp_hold) +
           "/100 trials");

  // Lower-bound direction for the distortion term on a DSBS(0.11) fixture.
  const double truth = 1.0 - binary_entropy(0.11);
  int dist_hold = 0;
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t seed = 5000 + static_cast<std::uint64_t>(t);
    SampleLogDensities s;
    s.log_q_s_given_shat.resize(100000);
    for (std::size_t i = 0; i < s.log_q_s_given_shat.size(); ++i) {
      const bool flip = uniform01_at(seed, i) <= 0.11;
      s.log_q_s_given_shat[i] = std::log2(flip ? 0.11 : 0.89);
    }
    const McEstimate est = distortion_lower_bound(s, 1.0);
    if (est.mean <= truth + 4 * est.std_err) ++dist_hold;
  }
  if (dist_hold < 99)
    c.fail("distortion bound direction held in only " + std::to_string(dist_hold) +
           "/100 trials");
  c.note("direction held " + std::to_string(comp_hold) + "/100 and " +
         std::to_string(dist_hold) + "/100");
  return c.out;
}

// --------------------------------------------------------------------------
// 8. Entropy-inverse round trip over 1e4 evenly spaced h
// --------------------------------------------------------------------------
Outcome criterion_entropy_roundtrip() {
  Check c;
  double worst = 0.0;
  for (int k = 0; k <= 10000; ++k) {
    const double h = k / 10000.0;
    worst = std::max(worst,
                     std::abs(binary_entropy(binary_entropy_inverse(h)) - h));
  }
  if (worst > 1e-10) c.fail("max round-trip error " + fmt(worst));
  c.note("max |H(H^-1(h)) - h| = " + fmt(worst));
  return c.out;
}

// --------------------------------------------------------------------------
// 9. CLI determinism: identical config, 1 vs 8 threads, byte-identical file
// --------------------------------------------------------------------------
Outcome criterion_cli_determinism(const char* argv0) {
  Check c;
  std::string cli;
  if (const char* env = std::getenv("SEMRDC_CLI")) cli = env;
  if (cli.empty()) {
    std::string self(argv0);
    const std::size_t slash = self.find_last_of('/');
    cli = (slash == std::string::npos ? std::string(".") : self.substr(0, slash)) +
          "/../tools/semrdc";
  }

  const std::string cfg = "acceptance_cli.cfg";
  {
    std::ofstream out(cfg);
    out << "source = gaussian\n"
        << "gamma = 0.9\n"
        << "theta_p = 0.25\n"
        << "theta_c = 1.5\n"
        << "axis = theta_d 0.2 2.5 201 linear\n"
        << "format = csv\n";
  }
  auto run = [&](int threads, const std::string& out_file) {
    const std::string cmd = "'" + cli + "' curve --config " + cfg + " --out " +
                            out_file + " --threads " + std::to_string(threads);
    return std::system(cmd.c_str());
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  if (run(1, "acceptance_cli_1.csv") != 0 || run(8, "acceptance_cli_8.csv") != 0) {
    c.fail("CLI invocation failed (binary: " + cli + ")");
    return c.out;
  }
  const std::string a = slurp("acceptance_cli_1.csv");
  const std::string b = slurp("acceptance_cli_8.csv");
  if (a.empty())
    c.fail("CLI produced an empty file");
  else if (a != b)
    c.fail("outputs differ between 1 and 8 threads");
  else
    c.note(std::to_string(a.size()) + " bytes, identical");
  std::remove(cfg.c_str());
  std::remove("acceptance_cli_1.csv");
  std::remove("acceptance_cli_8.csv");
  return c.out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 = no stated budget
  std::function<Outcome()> run;
};

}  // namespace

int main(int, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "shannon-anchor", 1.0, criterion_shannon},
      {2, "rdp-reduction-grid", 1.0, criterion_rdp_reduction},
      {3, "gaussian-oracle-equivalence", 120.0, criterion_gaussian_oracle},
      {4, "binary-oracle-equivalence", 300.0, criterion_binary_oracle},
      {5, "monte-carlo-moments", 30.0, criterion_mc_moments},
      {6, "monotonicity-suite", 0.0, criterion_monotonicity},
      {7, "variational-bounds", 60.0, criterion_variational},
      {8, "entropy-inverse-roundtrip", 1.0, criterion_entropy_roundtrip},
      {9, "cli-determinism", 0.0, [&] { return criterion_cli_determinism(argv[0]); }},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = cr.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0.0 && secs > cr.budget_s) {
      out.pass = false;
      out.detail += (out.detail.empty() ? "" : "; ") + std::string("over budget ") +
                    fmt(cr.budget_s) + " s";
    }
    std::printf("[%s] %d. %-28s (%7.2f s)%s%s\n", out.pass ? "PASS" : "FAIL",
                cr.id, cr.name, secs, out.detail.empty() ? "" : " - ",
                out.detail.c_str());
    if (!out.pass) ++failures;
  }
  return failures;
}
