#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "samplentt/samplers.hpp"

namespace samplentt {

// Monte Carlo experiment configuration. Trial t draws its bytes from
// the stream seeded with master_seed || t (8-byte little-endian), so
// the whole pipeline is XOF-deterministic and trials are independent.
struct BenchConfig {
  std::vector<Sampler> samplers{kAllSamplers.begin(), kAllSamplers.end()};
  std::uint32_t k = 2;
  std::uint64_t trials = 10000;
  std::array<std::uint8_t, 32> master_seed{};
  std::optional<std::uint32_t> cap_blocks;
};

struct SamplerSummary {
  Sampler sampler = Sampler::kConventional;
  std::uint64_t trials = 0;
  std::uint64_t completed = 0;
  double success_pct = 0.0;         // completed / trials * 100
  double mean_fresh_bits = 0.0;     // over completed trials
  double stderr_fresh_bits = 0.0;   // sample std / sqrt(completed)
  double mean_rejection_pct = 0.0;  // mean of per-polynomial rejection rates
  double stderr_rejection_pct = 0.0;
  double in_range_rate = 0.0;       // pooled candidate-level acceptance
  double mean_blocks = 0.0;         // squeeze steps per polynomial
  // Success under the 2-block cap; NaN for rows of uncapped-only runs.
  double two_squeeze_pct = std::numeric_limits<double>::quiet_NaN();
};

struct BenchSummary {
  std::string experiment;
  std::uint32_t k = 0;
  std::uint64_t trials = 0;
  std::optional<std::uint32_t> cap_blocks;
  std::vector<SamplerSummary> rows;
};

// Table-I experiment: average fresh bits per polynomial.
BenchSummary run_bits_experiment(const BenchConfig& config);

// Table-II experiment: fraction of polynomials completed within exactly
// two squeeze blocks (336 bytes); cap_blocks is forced to 2.
BenchSummary run_two_squeeze_experiment(const BenchConfig& config);

// Table-III experiment: average per-polynomial rejection percentage
// under the trailing-candidate counting convention.
BenchSummary run_rejection_experiment(const BenchConfig& config);

// One uncapped pass plus the capped pass, merged per sampler; feeds the
// combined CSV row.
BenchSummary run_all_experiments(const BenchConfig& config);

std::vector<std::uint8_t> trial_seed(const std::array<std::uint8_t, 32>& master,
                                     std::uint64_t trial);

// First `count` coefficients from successive trial-seeded polynomials,
// for feeding the statistical tests.
std::vector<std::uint16_t> collect_samples(Sampler sampler,
                                           const std::array<std::uint8_t, 32>& master,
                                           std::size_t count);

std::string to_json(const BenchSummary& summary);

// CSV columns: sampler,k,trials,mean_bits,stderr_bits,rejection_pct,two_squeeze_pct
std::string to_csv(const BenchSummary& summary);

std::string to_text(const BenchSummary& summary);

}  // namespace samplentt
