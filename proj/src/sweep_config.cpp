#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <semrdc/info_math.hpp>
#include <semrdc/sweep.hpp>

namespace semrdc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& value) {
  if (value == "inf" || value == "+inf") return kInf;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw usage_error("config: " + key + " is not a number: '" + value + "'");
  }
  if (pos != value.size())
    throw usage_error("config: " + key + " has trailing characters: '" + value + "'");
  return v;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw usage_error("config: " + key + " is not an integer: '" + value + "'");
  }
  if (pos != value.size())
    throw usage_error("config: " + key + " has trailing characters: '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw usage_error("config: " + key + " must be true or false, got '" + value + "'");
}

SweepAxis parse_axis_name(const std::string& name) {
  if (name == "theta_d") return SweepAxis::kThetaD;
  if (name == "theta_p") return SweepAxis::kThetaP;
  if (name == "theta_c") return SweepAxis::kThetaC;
  throw usage_error("config: axis must be one of theta_d, theta_p, theta_c; got '" +
                    name + "'");
}

AxisSpec parse_axis(const std::string& value) {
  std::istringstream in(value);
  std::string name, spacing = "linear";
  std::string min_s, max_s, steps_s;
  if (!(in >> name >> min_s >> max_s >> steps_s))
    throw usage_error(
        "config: axis expects '<name> <min> <max> <steps> [linear|log]', got '" +
        value + "'");
  in >> spacing;
  std::string extra;
  if (in >> extra)
    throw usage_error("config: axis has trailing tokens: '" + value + "'");

  AxisSpec spec;
  spec.axis = parse_axis_name(name);
  spec.min = parse_double("axis min", min_s);
  spec.max = parse_double("axis max", max_s);
  spec.steps = static_cast<int>(parse_int("axis steps", steps_s));
  if (spacing == "linear")
    spec.log_spacing = false;
  else if (spacing == "log")
    spec.log_spacing = true;
  else
    throw usage_error("config: axis spacing must be linear or log, got '" +
                      spacing + "'");
  return spec;
}

}  // namespace

const char* to_string(SourceKind source) {
  return source == SourceKind::kGaussian ? "gaussian" : "binary";
}

const char* to_string(OutputFormat format) {
  return format == OutputFormat::kCsv ? "csv" : "json";
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kThetaD:
      return "theta_d";
    case SweepAxis::kThetaP:
      return "theta_p";
    case SweepAxis::kThetaC:
      return "theta_c";
  }
  return "unknown";
}

std::vector<double> axis_values(const AxisSpec& spec) {
  std::vector<double> values(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    const double t = static_cast<double>(i) / (spec.steps - 1);
    values[static_cast<std::size_t>(i)] =
        spec.log_spacing ? spec.min * std::pow(spec.max / spec.min, t)
                         : spec.min + (spec.max - spec.min) * t;
  }
  return values;
}

void validate_config(const SweepConfig& c) {
  if (c.axes.empty() || c.axes.size() > 3)
    throw usage_error("config: between 1 and 3 axis lines are required");
  for (std::size_t i = 0; i < c.axes.size(); ++i)
    for (std::size_t j = i + 1; j < c.axes.size(); ++j)
      if (c.axes[i].axis == c.axes[j].axis)
        throw usage_error(std::string("config: axis ") + to_string(c.axes[i].axis) +
                          " is swept twice");

  for (const AxisSpec& a : c.axes) {
    const std::string name = to_string(a.axis);
    if (a.steps < 2) throw usage_error("config: axis " + name + " needs steps >= 2");
    if (!(a.min < a.max))
      throw usage_error("config: axis " + name + " needs min < max");
    if (!std::isfinite(a.min) || !std::isfinite(a.max))
      throw usage_error("config: axis " + name + " endpoints must be finite");
    if (a.log_spacing && !(a.min > 0.0))
      throw usage_error("config: axis " + name + " needs min > 0 for log spacing");
    if (c.source == SourceKind::kBinary && a.axis == SweepAxis::kThetaD)
      throw usage_error("config: binary sweeps have no theta_d axis");

    const double lo = a.min, hi = a.max;
    switch (a.axis) {
      case SweepAxis::kThetaD:
        if (lo < 0.0) throw usage_error("config: theta_d axis must be >= 0");
        break;
      case SweepAxis::kThetaP:
        if (lo < 0.0) throw usage_error("config: theta_p axis must be >= 0");
        if (c.source == SourceKind::kGaussian && hi > 1.0)
          throw usage_error("config: gaussian theta_p axis must stay within [0,1]");
        break;
      case SweepAxis::kThetaC:
        if (lo < 0.0) throw usage_error("config: theta_c axis must be >= 0");
        if (c.source == SourceKind::kBinary && hi > 1.0)
          throw usage_error("config: binary theta_c axis must stay within [0,1]");
        break;
    }
  }

  if (c.source == SourceKind::kGaussian) {
    if (!(c.gamma > 0.0 && c.gamma <= 1.0))
      throw usage_error("config: gamma must be in (0,1]");
    if (!(c.theta_d >= 0.0)) throw usage_error("config: theta_d must be >= 0");
    if (!(c.theta_p >= 0.0 && c.theta_p <= 1.0))
      throw usage_error("config: gaussian theta_p must be in [0,1]");
    if (!(c.theta_c >= 0.0))
      throw usage_error("config: theta_c must be >= 0");
  } else {
    if (!(c.q_sx >= 0.0 && c.q_sx <= 0.5))
      throw usage_error("config: q_sx must be in [0, 0.5]");
    if (!(c.theta_p >= 0.0)) throw usage_error("config: theta_p must be >= 0");
    if (!(c.theta_c >= 0.0 && c.theta_c <= 1.0))
      throw usage_error("config: binary theta_c must be in [0,1]");
  }

  const int min_res = c.source == SourceKind::kGaussian ? 100 : 50;
  if (c.oracle_res < min_res)
    throw usage_error("config: oracle_res must be >= " + std::to_string(min_res) +
                      " for this source");
  if (!(c.tolerance > 0.0)) throw usage_error("config: tolerance must be > 0");
  if (c.threads < 0) throw usage_error("config: threads must be >= 0");
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("config: cannot open '" + path + "'");

  SweepConfig c;
  std::map<std::string, std::string> seen;
  bool theta_c_given = false, theta_p_given = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw usage_error("config: line " + std::to_string(lineno) +
                        " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw usage_error("config: line " + std::to_string(lineno) +
                        " has an empty key or value");

    if (key != "axis") {
      if (!seen.emplace(key, value).second)
        throw usage_error("config: duplicate key '" + key + "'");
    }

    if (key == "source") {
      if (value == "gaussian")
        c.source = SourceKind::kGaussian;
      else if (value == "binary")
        c.source = SourceKind::kBinary;
      else
        throw usage_error("config: source must be gaussian or binary, got '" +
                          value + "'");
    } else if (key == "gamma") {
      c.gamma = parse_double(key, value);
    } else if (key == "q_sx") {
      c.q_sx = parse_double(key, value);
    } else if (key == "theta_d") {
      c.theta_d = parse_double(key, value);
    } else if (key == "theta_p") {
      c.theta_p = parse_double(key, value);
      theta_p_given = true;
    } else if (key == "theta_c") {
      c.theta_c = parse_double(key, value);
      theta_c_given = true;
    } else if (key == "axis") {
      if (c.axes.size() >= 3)
        throw usage_error("config: at most 3 axis lines are allowed");
      c.axes.push_back(parse_axis(value));
    } else if (key == "out") {
      c.out = value;
    } else if (key == "format") {
      if (value == "csv")
        c.format = OutputFormat::kCsv;
      else if (value == "json")
        c.format = OutputFormat::kJson;
      else
        throw usage_error("config: format must be csv or json, got '" + value + "'");
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "verify") {
      c.verify = parse_bool(key, value);
    } else if (key == "oracle_res") {
      c.oracle_res = static_cast<int>(parse_int(key, value));
    } else if (key == "tolerance") {
      c.tolerance = parse_double(key, value);
    } else if (key == "constraint_mode") {
      if (value == "proof")
        c.constraint_mode = BinaryConstraintMode::kProof;
      else if (value == "theorem")
        c.constraint_mode = BinaryConstraintMode::kTheorem;
      else if (value == "marginal")
        c.constraint_mode = BinaryConstraintMode::kMarginal;
      else
        throw usage_error(
            "config: constraint_mode must be proof, theorem or marginal; got '" +
            value + "'");
    } else if (key == "threads") {
      c.threads = static_cast<int>(parse_int(key, value));
    } else {
      throw usage_error("config: unknown key '" + key + "'");
    }
  }

  // Source-dependent defaults for budgets the file leaves unset.
  if (!theta_c_given)
    c.theta_c = c.source == SourceKind::kGaussian ? kInf : 1.0;
  if (!theta_p_given) c.theta_p = c.source == SourceKind::kGaussian ? 1.0 : 0.0;

  validate_config(c);
  return c;
}

}  // namespace semrdc
