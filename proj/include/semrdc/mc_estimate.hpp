#pragma once

#include <cstdint>

namespace semrdc {

// A Monte-Carlo scalar estimate. std_err = sample standard deviation / sqrt(n)
// over whatever units n counts (raw samples, or batches for plug-in
// statistics). Results are bit-reproducible given the same seed.
struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

}  // namespace semrdc
