// semrdc - command-line front end for the rate-distortion-complexity library.
//
// Subcommands: curve, surface, verify (config-driven sweeps), simulate
// (Monte-Carlo chain moments), bounds (variational estimators over a JSON
// file of per-sample log densities).
//
// Exit codes: 0 success, 1 usage error, 2 verification failure, 3 internal
// error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <semrdc/bounds.hpp>
#include <semrdc/chain_sim.hpp>
#include <semrdc/rng.hpp>
#include <semrdc/sweep.hpp>

namespace {

using nlohmann::ordered_json;

constexpr const char* kConfigHelp = R"(Config file keys (key = value, '#' comments):
  source = gaussian            gaussian | binary
  gamma = 1.0                  gaussian source correlation, (0,1]
  q_sx = 0.1                   binary source crossover, [0, 0.5]
  theta_d = 1.0                fixed MSE budget (gaussian only)
  theta_p = 1.0 / 0.0          fixed semantic-distance budget (gaussian/binary default)
  theta_c = inf / 1.0          fixed complexity budget in bits (gaussian/binary default)
  axis = theta_d 0.25 3 100 linear   swept axis: name min max steps [linear|log]
                               (repeat up to 3 times; curve: 1, surface: 2, verify: 1-3)
  out =                        output path (default: stdout)
  format = csv                 csv | json
  seed = 0                     record seed for reproducibility metadata
  verify = false               attach oracle columns to curve/surface output
  oracle_res = 200             oracle grid resolution per axis
  tolerance = 5e-3             verification gap tolerance in bits
  constraint_mode = proof      proof | theorem (binary ambiguity switch)
  threads = 1                  worker threads (0 = hardware concurrency)
)";

struct SweepOverrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<int> oracle_res;
  std::optional<double> tolerance;
  std::optional<std::string> constraint_mode;
  std::optional<int> threads;
};

void add_sweep_options(CLI::App* cmd, SweepOverrides& o) {
  cmd->add_option("--config", o.config_path, "sweep config file (see key list below)")
      ->required();
  cmd->add_option("--out", o.out, "output path override (default from config, else stdout)");
  cmd->add_option("--format", o.format, "csv|json output format override");
  cmd->add_option("--seed", o.seed, "seed override");
  cmd->add_option("--oracle-res", o.oracle_res, "oracle resolution override");
  cmd->add_option("--tolerance", o.tolerance, "verification tolerance override, bits");
  cmd->add_option("--constraint-mode", o.constraint_mode,
                  "proof|theorem binary constraint-mode override");
  cmd->add_option("--threads", o.threads, "worker thread override (0 = hardware)");
  cmd->footer(kConfigHelp);
}

semrdc::SweepConfig resolve_config(const SweepOverrides& o) {
  semrdc::SweepConfig c = semrdc::load_config(o.config_path);
  if (o.out) c.out = *o.out;
  if (o.format) {
    if (*o.format == "csv")
      c.format = semrdc::OutputFormat::kCsv;
    else if (*o.format == "json")
      c.format = semrdc::OutputFormat::kJson;
    else
      throw semrdc::usage_error("--format must be csv or json");
  }
  if (o.seed) c.seed = *o.seed;
  if (o.oracle_res) c.oracle_res = *o.oracle_res;
  if (o.tolerance) c.tolerance = *o.tolerance;
  if (o.constraint_mode) {
    if (*o.constraint_mode == "proof")
      c.constraint_mode = semrdc::BinaryConstraintMode::kProof;
    else if (*o.constraint_mode == "theorem")
      c.constraint_mode = semrdc::BinaryConstraintMode::kTheorem;
    else if (*o.constraint_mode == "marginal")
      c.constraint_mode = semrdc::BinaryConstraintMode::kMarginal;
    else
      throw semrdc::usage_error("--constraint-mode must be proof, theorem or marginal");
  }
  if (o.threads) c.threads = *o.threads;
  semrdc::validate_config(c);
  return c;
}

ordered_json estimate_json(const semrdc::McEstimate& e) {
  ordered_json j;
  j["mean"] = e.mean;
  j["stderr"] = e.std_err;
  j["n"] = e.n;
  j["seed"] = e.seed;
  return j;
}

void emit_json(const ordered_json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw semrdc::usage_error("cannot open output file '" + out + "'");
  os << j.dump(2) << "\n";
}

std::vector<double> read_array(const ordered_json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j[key].is_array())
    throw semrdc::usage_error(std::string("bounds input: ") + key +
                              " must be an array of numbers");
  std::vector<double> v;
  v.reserve(j[key].size());
  for (const auto& x : j[key]) {
    if (!x.is_number())
      throw semrdc::usage_error(std::string("bounds input: ") + key +
                                " must contain only numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

int run(int argc, char** argv) {
  CLI::App app{
      "semrdc - closed-form rate-distortion-complexity functions for Gaussian "
      "and binary semantic sources, with brute-force oracles, chain "
      "simulators and variational bound estimators"};
  app.require_subcommand(1);

  SweepOverrides curve_o, surface_o, verify_o;
  CLI::App* curve = app.add_subcommand("curve", "sweep one budget axis");
  add_sweep_options(curve, curve_o);
  CLI::App* surface =
      app.add_subcommand("surface", "sweep two budget axes (row-major grid)");
  add_sweep_options(surface, surface_o);
  CLI::App* verify = app.add_subcommand(
      "verify", "sweep 1-3 axes and audit the closed form against the oracle");
  add_sweep_options(verify, verify_o);

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte-Carlo chain simulation");
  simulate->require_subcommand(1);

  struct {
    double gamma = 1.0, rho = 1.0, kappa = 1.0, sigma = 1.0;
    std::uint64_t n = 1000000, seed = 0;
    int threads = 1;
    std::string out;
  } sg;
  CLI::App* sim_g = simulate->add_subcommand(
      "gaussian", "simulate S -> X -> U -> Shat and report MSE / W2 moments");
  sim_g->add_option("--gamma", sg.gamma, "source-observation correlation")->capture_default_str();
  sim_g->add_option("--rho", sg.rho, "observation-code correlation")->capture_default_str();
  sim_g->add_option("--kappa", sg.kappa, "Cov(U, Shat)")->capture_default_str();
  sim_g->add_option("--sigma", sg.sigma, "std dev of Shat")->capture_default_str();
  sim_g->add_option("--n", sg.n, "sample count")->capture_default_str();
  sim_g->add_option("--seed", sg.seed, "RNG seed")->capture_default_str();
  sim_g->add_option("--threads", sg.threads, "worker threads (0 = hardware)")->capture_default_str();
  sim_g->add_option("--out", sg.out, "output path (default: stdout)");

  struct {
    double q_sx = 0.1, q_xu = 0.0, q_us = 0.1;
    std::uint64_t n = 1000000, seed = 0;
    int threads = 1;
    std::string out;
  } sb;
  CLI::App* sim_b = simulate->add_subcommand(
      "binary", "simulate the symmetric-channel cascade and report the "
                "end-to-end crossover frequency");
  sim_b->add_option("--q-sx", sb.q_sx, "S-X crossover")->capture_default_str();
  sim_b->add_option("--q-xu", sb.q_xu, "X-U crossover")->capture_default_str();
  sim_b->add_option("--q-us", sb.q_us, "U-Shat crossover")->capture_default_str();
  sim_b->add_option("--n", sb.n, "sample count")->capture_default_str();
  sim_b->add_option("--seed", sb.seed, "RNG seed")->capture_default_str();
  sim_b->add_option("--threads", sb.threads, "worker threads (0 = hardware)")->capture_default_str();
  sim_b->add_option("--out", sb.out, "output path (default: stdout)");

  struct {
    std::string in, out;
    double entropy_s = 0.0;
    double lambda_c = 0.0, lambda_d = 0.0, lambda_p = 0.0;
  } bo;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "variational bound estimators over a JSON file of per-sample "
                "base-2 log densities");
  bounds->add_option("--in", bo.in,
                     "input JSON with arrays log_p_u_given_x, log_t_u, "
                     "log_p_shat_given_u, log_r_shat, log_q_s_given_shat")
      ->required();
  bounds->add_option("--entropy-s", bo.entropy_s,
                     "H(S) in bits, added to the distortion lower bound")
      ->capture_default_str();
  bounds->add_option("--lambda-c", bo.lambda_c, "complexity weight")->capture_default_str();
  bounds->add_option("--lambda-d", bo.lambda_d, "distortion weight")->capture_default_str();
  bounds->add_option("--lambda-p", bo.lambda_p, "perception weight")->capture_default_str();
  bounds->add_option("--out", bo.out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 1;     // stable contract: any usage problem is 1
  }

  if (curve->parsed()) {
    const semrdc::SweepConfig c = resolve_config(curve_o);
    semrdc::emit_rows(c, semrdc::run_curve(c), false);
    return 0;
  }
  if (surface->parsed()) {
    const semrdc::SweepConfig c = resolve_config(surface_o);
    semrdc::emit_rows(c, semrdc::run_surface(c), true);
    return 0;
  }
  if (verify->parsed()) {
    const semrdc::SweepConfig c = resolve_config(verify_o);
    const semrdc::VerifyReport report = semrdc::run_verify(c);
    if (c.out.empty()) {
      semrdc::write_verify_json(std::cout, c, report);
    } else {
      std::ofstream os(c.out, std::ios::binary);
      if (!os) throw semrdc::usage_error("cannot open output file '" + c.out + "'");
      semrdc::write_verify_json(os, c, report);
    }
    semrdc::print_verify_summary(std::cerr, report);
    return report.pass ? 0 : 2;
  }
  if (simulate->parsed()) {
    if (sim_g->parsed()) {
      const semrdc::GaussianChainMoments m = semrdc::simulate_gaussian_chain(
          sg.gamma, sg.rho, sg.kappa, sg.sigma, sg.n, sg.seed, sg.threads);
      ordered_json j;
      j["chain"] = "gaussian";
      j["rng"] = semrdc::kRngAlgorithm;
      j["params"] = {{"gamma", sg.gamma}, {"rho", sg.rho}, {"kappa", sg.kappa},
                     {"sigma", sg.sigma}};
      j["mse"] = estimate_json(m.mse);
      j["w2"] = estimate_json(m.w2);
      emit_json(j, sg.out);
    } else {
      const semrdc::McEstimate e = semrdc::simulate_binary_chain(
          sb.q_sx, sb.q_xu, sb.q_us, sb.n, sb.seed, sb.threads);
      ordered_json j;
      j["chain"] = "binary";
      j["rng"] = semrdc::kRngAlgorithm;
      j["params"] = {{"q_sx", sb.q_sx}, {"q_xu", sb.q_xu}, {"q_us", sb.q_us}};
      j["crossover"] = estimate_json(e);
      emit_json(j, sb.out);
    }
    return 0;
  }
  if (bounds->parsed()) {
    std::ifstream in(bo.in);
    if (!in) throw semrdc::usage_error("cannot open input file '" + bo.in + "'");
    ordered_json input;
    try {
      in >> input;
    } catch (const nlohmann::json::exception& e) {
      throw semrdc::usage_error(std::string("bounds input is not valid JSON: ") +
                                e.what());
    }
    semrdc::SampleLogDensities s;
    s.log_p_u_given_x = read_array(input, "log_p_u_given_x");
    s.log_t_u = read_array(input, "log_t_u");
    s.log_p_shat_given_u = read_array(input, "log_p_shat_given_u");
    s.log_r_shat = read_array(input, "log_r_shat");
    s.log_q_s_given_shat = read_array(input, "log_q_s_given_shat");

    const semrdc::LossWeights w{bo.lambda_c, bo.lambda_d, bo.lambda_p};
    ordered_json j;
    j["log_base"] = 2;
    bool any = false;
    if (!s.log_p_u_given_x.empty() && !s.log_t_u.empty()) {
      j["complexity_upper"] = estimate_json(semrdc::complexity_upper_bound(s));
      any = true;
    }
    if (!s.log_p_shat_given_u.empty() && !s.log_r_shat.empty()) {
      j["rate_upper"] = estimate_json(semrdc::rate_upper_bound(s));
      any = true;
    }
    if (!s.log_q_s_given_shat.empty()) {
      j["entropy_s"] = bo.entropy_s;
      j["distortion_lower"] =
          estimate_json(semrdc::distortion_lower_bound(s, bo.entropy_s));
      any = true;
    }
    if (!s.log_p_u_given_x.empty() && !s.log_t_u.empty() &&
        !s.log_p_shat_given_u.empty() && !s.log_r_shat.empty() &&
        !s.log_q_s_given_shat.empty()) {
      j["weights"] = {{"lambda_c", bo.lambda_c}, {"lambda_d", bo.lambda_d},
                      {"lambda_p", bo.lambda_p}};
      j["loss_classification"] = estimate_json(semrdc::loss_classification(s, w));
    }
    if (!any)
      throw semrdc::usage_error(
          "bounds input provides no usable array pair; see --help for the "
          "expected fields");
    emit_json(j, bo.out);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const semrdc::usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
