#include <semrdc/chain_sim.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <semrdc/parallel.hpp>
#include <semrdc/rng.hpp>

namespace semrdc {

namespace {

constexpr std::uint64_t kChunk = 1 << 16;

std::uint64_t chunk_count(std::uint64_t n) { return (n + kChunk - 1) / kChunk; }

}  // namespace

GaussianChainMoments simulate_gaussian_chain(double gamma, double rho,
                                             double kappa, double sigma,
                                             std::uint64_t n,
                                             std::uint64_t seed, int threads) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("simulate_gaussian_chain: gamma must be in (0,1]");
  if (!(rho > 0.0 && rho <= 1.0))
    throw std::invalid_argument("simulate_gaussian_chain: rho must be in (0,1]");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("simulate_gaussian_chain: sigma must be >= 0");
  if (!(std::abs(kappa) <= sigma))
    throw std::invalid_argument(
        "simulate_gaussian_chain: invalid channel, |kappa| must not exceed sigma");
  if (n < 2)
    throw std::invalid_argument("simulate_gaussian_chain: n must be >= 2");

  const double cx = std::sqrt(1.0 - rho * rho);
  const double cs = std::sqrt(1.0 - gamma * gamma);
  const double cw = std::sqrt(std::max(0.0, sigma * sigma - kappa * kappa));

  struct ChunkSums {
    double d = 0, d2 = 0;          // (S - Shat)^2 moments
    double s = 0, s2 = 0;          // S moments
    double sh = 0, sh2 = 0;        // Shat moments
    std::uint64_t count = 0;
  };
  const std::uint64_t nchunks = chunk_count(n);
  std::vector<ChunkSums> sums(nchunks);

  parallel_for_chunks(static_cast<std::int64_t>(nchunks), threads, [&](std::int64_t c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t end = std::min(n, begin + kChunk);
    ChunkSums acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      double u, z1, z2, w;
      normal_pair_at(seed, 2 * i, u, z1);
      normal_pair_at(seed, 2 * i + 1, z2, w);
      const double x = rho * u + cx * z2;
      const double s = gamma * x + cs * z1;
      const double shat = kappa * u + cw * w;
      const double d = (s - shat) * (s - shat);
      acc.d += d;
      acc.d2 += d * d;
      acc.s += s;
      acc.s2 += s * s;
      acc.sh += shat;
      acc.sh2 += shat * shat;
    }
    acc.count = end - begin;
    sums[c] = acc;
  });

  GaussianChainMoments out;

  double sd = 0, sd2 = 0;
  for (const auto& a : sums) {
    sd += a.d;
    sd2 += a.d2;
  }
  const double dn = static_cast<double>(n);
  const double mean = sd / dn;
  const double var = std::max(0.0, (sd2 - dn * mean * mean) / (dn - 1.0));
  out.mse = {mean, std::sqrt(var / dn), n, seed};

  // Plug-in W2 per chunk, then batch means across chunks. Chunks shorter than
  // two samples cannot produce a variance estimate and are skipped (only the
  // tail chunk can be that short).
  double w2sum = 0, w2sq = 0;
  std::uint64_t batches = 0;
  for (const auto& a : sums) {
    if (a.count < 2) continue;
    const double m = static_cast<double>(a.count);
    const double vs = std::max(0.0, (a.s2 - a.s * a.s / m) / (m - 1.0));
    const double vh = std::max(0.0, (a.sh2 - a.sh * a.sh / m) / (m - 1.0));
    const double w2 = (std::sqrt(vs) - std::sqrt(vh)) * (std::sqrt(vs) - std::sqrt(vh));
    w2sum += w2;
    w2sq += w2 * w2;
    ++batches;
  }
  const double bn = static_cast<double>(batches);
  const double w2mean = batches ? w2sum / bn : 0.0;
  const double w2var =
      batches > 1 ? std::max(0.0, (w2sq - bn * w2mean * w2mean) / (bn - 1.0)) : 0.0;
  out.w2 = {w2mean, batches > 1 ? std::sqrt(w2var / bn) : 0.0, batches, seed};
  return out;
}

McEstimate simulate_binary_chain(double q_sx, double q_xu, double q_ushat,
                                 std::uint64_t n, std::uint64_t seed,
                                 int threads) {
  for (double q : {q_sx, q_xu, q_ushat})
    if (!(q >= 0.0 && q <= 1.0))
      throw std::invalid_argument(
          "simulate_binary_chain: crossovers must be in [0,1]");
  if (n < 2)
    throw std::invalid_argument("simulate_binary_chain: n must be >= 2");

  const std::uint64_t nchunks = chunk_count(n);
  std::vector<std::uint64_t> flips(nchunks, 0);

  parallel_for_chunks(static_cast<std::int64_t>(nchunks), threads, [&](std::int64_t c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t end = std::min(n, begin + kChunk);
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const bool s = uniform01_at(seed, 4 * i) <= 0.5;
      const bool x = s ^ (uniform01_at(seed, 4 * i + 1) <= q_sx);
      const bool u = x ^ (uniform01_at(seed, 4 * i + 2) <= q_xu);
      const bool shat = u ^ (uniform01_at(seed, 4 * i + 3) <= q_ushat);
      count += (s != shat);
    }
    flips[c] = count;
  });

  std::uint64_t total = 0;
  for (std::uint64_t f : flips) total += f;
  const double dn = static_cast<double>(n);
  const double p = static_cast<double>(total) / dn;
  const double var = p * (1.0 - p) * dn / (dn - 1.0);
  return {p, std::sqrt(var / dn), n, seed};
}

}  // namespace semrdc
