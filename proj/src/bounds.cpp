#include <semrdc/bounds.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace semrdc {

namespace {

using ConstArray = Eigen::Map<const Eigen::ArrayXd>;

ConstArray as_array(const std::vector<double>& v) {
  return ConstArray(v.data(), static_cast<Eigen::Index>(v.size()));
}

void require(const std::vector<double>& v, const char* name, std::size_t n) {
  if (v.empty())
    throw std::invalid_argument(std::string("bounds: missing field ") + name);
  if (v.size() != n)
    throw std::invalid_argument(std::string("bounds: field ") + name +
                                " length does not match the other fields");
  for (double x : v)
    if (!std::isfinite(x))
      throw std::invalid_argument(std::string("bounds: field ") + name +
                                  " has a non-finite entry");
}

McEstimate estimate_of(const Eigen::ArrayXd& series, double shift = 0.0) {
  const auto n = series.size();
  const double mean = series.mean();
  double var = 0.0;
  if (n > 1) var = (series - mean).square().sum() / static_cast<double>(n - 1);
  return {mean + shift, std::sqrt(var / static_cast<double>(n)),
          static_cast<std::uint64_t>(n), 0};
}

}  // namespace

McEstimate complexity_upper_bound(const SampleLogDensities& s) {
  const std::size_t n = s.log_p_u_given_x.size();
  require(s.log_p_u_given_x, "log_p_u_given_x", n ? n : 1);
  require(s.log_t_u, "log_t_u", n);
  return estimate_of(as_array(s.log_p_u_given_x) - as_array(s.log_t_u));
}

McEstimate distortion_lower_bound(const SampleLogDensities& s,
                                  double entropy_s_bits) {
  const std::size_t n = s.log_q_s_given_shat.size();
  require(s.log_q_s_given_shat, "log_q_s_given_shat", n ? n : 1);
  return estimate_of(as_array(s.log_q_s_given_shat).eval(), entropy_s_bits);
}

McEstimate rate_upper_bound(const SampleLogDensities& s) {
  const std::size_t n = s.log_p_shat_given_u.size();
  require(s.log_p_shat_given_u, "log_p_shat_given_u", n ? n : 1);
  require(s.log_r_shat, "log_r_shat", n);
  return estimate_of(as_array(s.log_p_shat_given_u) - as_array(s.log_r_shat));
}

McEstimate loss_classification(const SampleLogDensities& s,
                               const LossWeights& w) {
  const std::size_t n = s.log_p_shat_given_u.size();
  require(s.log_p_shat_given_u, "log_p_shat_given_u", n ? n : 1);
  require(s.log_r_shat, "log_r_shat", n);
  require(s.log_p_u_given_x, "log_p_u_given_x", n);
  require(s.log_t_u, "log_t_u", n);
  require(s.log_q_s_given_shat, "log_q_s_given_shat", n);

  const Eigen::ArrayXd rate = as_array(s.log_p_shat_given_u) - as_array(s.log_r_shat);
  const Eigen::ArrayXd comp = as_array(s.log_p_u_given_x) - as_array(s.log_t_u);
  const Eigen::ArrayXd q = as_array(s.log_q_s_given_shat);

  const Eigen::ArrayXd combined = rate + w.lambda_c * comp - w.lambda_d * q;
  McEstimate est = estimate_of(combined);
  // Compose the mean from component means so superposition in the weights is
  // exact; the per-sample estimate above differs only by rounding.
  est.mean = rate.mean() + w.lambda_c * comp.mean() - w.lambda_d * q.mean();
  return est;
}

double loss_generation(double mse, double w2, double complexity_upper,
                       const LossWeights& w) {
  if (!(mse >= 0.0) || !(w2 >= 0.0))
    throw std::domain_error("loss_generation: mse and w2 must be >= 0");
  return mse + w.lambda_p * w2 + w.lambda_c * complexity_upper;
}

double loss_video(double rate_upper, double mse, double complexity_upper,
                  const LossWeights& w) {
  if (!(mse >= 0.0))
    throw std::domain_error("loss_video: mse must be >= 0");
  if (!(rate_upper >= 0.0) || !(complexity_upper >= 0.0))
    throw std::domain_error(
        "loss_video: rate and complexity bounds must be >= 0");
  return rate_upper + w.lambda_d * mse + w.lambda_c * complexity_upper;
}

}  // namespace semrdc
