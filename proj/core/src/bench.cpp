#include "samplentt/bench.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace samplentt {

std::vector<std::uint8_t> trial_seed(const std::array<std::uint8_t, 32>& master,
                                     std::uint64_t trial) {
  std::vector<std::uint8_t> seed(master.begin(), master.end());
  for (int i = 0; i < 8; ++i)
    seed.push_back(static_cast<std::uint8_t>(trial >> (8 * i)));
  return seed;
}

std::vector<std::uint16_t> collect_samples(Sampler sampler,
                                           const std::array<std::uint8_t, 32>& master,
                                           std::size_t count) {
  std::vector<std::uint16_t> samples;
  samples.reserve(count);
  std::uint64_t trial = 0;
  while (samples.size() < count) {
    XofStream stream(trial_seed(master, trial++));
    const SampleResult result = sample(sampler, stream);
    for (std::uint16_t c : result.polynomial->coefficients) {
      samples.push_back(c);
      if (samples.size() == count) break;
    }
  }
  return samples;
}

namespace {

struct Accumulator {
  std::uint64_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++n;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
  double stderr_mean() const {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double var = (sum_sq - sum * sum / nn) / (nn - 1.0);
    return std::sqrt(std::max(var, 0.0) / nn);
  }
};

SamplerSummary run_sampler_trials(Sampler sampler, const BenchConfig& config,
                                  std::optional<std::uint32_t> cap_blocks) {
  if (config.trials < 1)
    throw std::invalid_argument("bench: trials must be >= 1");

  Accumulator bits;
  Accumulator rejection;
  Accumulator blocks;
  std::uint64_t completed = 0;
  std::uint64_t candidates = 0;
  std::uint64_t in_range = 0;

  for (std::uint64_t t = 0; t < config.trials; ++t) {
    XofStream stream(trial_seed(config.master_seed, t), cap_blocks);
    const SampleResult result = sample(sampler, stream);
    candidates += result.report.candidates_total;
    in_range += result.report.accepted + result.report.trailing_unusable;
    if (!result.completed()) continue;
    ++completed;
    bits.add(static_cast<double>(result.report.fresh_bits));
    rejection.add(100.0 * result.report.rejection_rate());
    blocks.add(static_cast<double>(result.report.blocks_squeezed));
  }

  SamplerSummary row;
  row.sampler = sampler;
  row.trials = config.trials;
  row.completed = completed;
  row.success_pct = 100.0 * static_cast<double>(completed) /
                    static_cast<double>(config.trials);
  row.mean_fresh_bits = bits.mean();
  row.stderr_fresh_bits = bits.stderr_mean();
  row.mean_rejection_pct = rejection.mean();
  row.stderr_rejection_pct = rejection.stderr_mean();
  row.in_range_rate = candidates == 0 ? 0.0
                                      : static_cast<double>(in_range) /
                                            static_cast<double>(candidates);
  row.mean_blocks = blocks.mean();
  return row;
}

BenchSummary make_summary(std::string experiment, const BenchConfig& config,
                          std::optional<std::uint32_t> cap_blocks) {
  BenchSummary summary;
  summary.experiment = std::move(experiment);
  summary.k = config.k;
  summary.trials = config.trials;
  summary.cap_blocks = cap_blocks;
  for (Sampler sampler : config.samplers)
    summary.rows.push_back(run_sampler_trials(sampler, config, cap_blocks));
  return summary;
}

}  // namespace

BenchSummary run_bits_experiment(const BenchConfig& config) {
  return make_summary("bits", config, config.cap_blocks);
}

BenchSummary run_two_squeeze_experiment(const BenchConfig& config) {
  BenchSummary summary = make_summary("two_squeeze", config, 2);
  for (auto& row : summary.rows) row.two_squeeze_pct = row.success_pct;
  return summary;
}

BenchSummary run_rejection_experiment(const BenchConfig& config) {
  return make_summary("rejection", config, config.cap_blocks);
}

BenchSummary run_all_experiments(const BenchConfig& config) {
  BenchSummary summary = make_summary("all", config, config.cap_blocks);
  const BenchSummary capped = make_summary("two_squeeze", config, 2);
  for (std::size_t i = 0; i < summary.rows.size(); ++i)
    summary.rows[i].two_squeeze_pct = capped.rows[i].success_pct;
  return summary;
}

std::string to_json(const BenchSummary& summary) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : summary.rows) {
    nlohmann::json r = {
        {"sampler", std::string(to_string(row.sampler))},
        {"trials", row.trials},
        {"completed", row.completed},
        {"success_pct", row.success_pct},
        {"mean_fresh_bits", row.mean_fresh_bits},
        {"stderr_fresh_bits", row.stderr_fresh_bits},
        {"mean_rejection_pct", row.mean_rejection_pct},
        {"stderr_rejection_pct", row.stderr_rejection_pct},
        {"in_range_rate", row.in_range_rate},
        {"mean_blocks", row.mean_blocks},
    };
    if (!std::isnan(row.two_squeeze_pct)) r["two_squeeze_pct"] = row.two_squeeze_pct;
    rows.push_back(std::move(r));
  }
  nlohmann::json doc = {{"experiment", summary.experiment},
                        {"k", summary.k},
                        {"trials", summary.trials},
                        {"results", rows}};
  if (summary.cap_blocks) doc["cap_blocks"] = *summary.cap_blocks;
  return doc.dump();
}

std::string to_csv(const BenchSummary& summary) {
  std::string out =
      "sampler,k,trials,mean_bits,stderr_bits,rejection_pct,two_squeeze_pct\n";
  char line[256];
  for (const auto& row : summary.rows) {
    char squeeze[32] = "";
    if (!std::isnan(row.two_squeeze_pct))
      std::snprintf(squeeze, sizeof(squeeze), "%.4f", row.two_squeeze_pct);
    std::snprintf(line, sizeof(line), "%s,%u,%llu,%.4f,%.4f,%.4f,%s\n",
                  std::string(to_string(row.sampler)).c_str(), summary.k,
                  static_cast<unsigned long long>(row.trials),
                  row.mean_fresh_bits, row.stderr_fresh_bits,
                  row.mean_rejection_pct, squeeze);
    out += line;
  }
  return out;
}

std::string to_text(const BenchSummary& summary) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "experiment=%s k=%u trials=%llu\n",
                summary.experiment.c_str(), summary.k,
                static_cast<unsigned long long>(summary.trials));
  out += line;
  std::snprintf(line, sizeof(line), "%-14s %12s %10s %12s %12s %12s\n", "sampler",
                "mean_bits", "stderr", "rejection%", "2-squeeze%", "success%");
  out += line;
  for (const auto& row : summary.rows) {
    char squeeze[32] = "-";
    if (!std::isnan(row.two_squeeze_pct))
      std::snprintf(squeeze, sizeof(squeeze), "%.2f", row.two_squeeze_pct);
    std::snprintf(line, sizeof(line), "%-14s %12.2f %10.3f %12.3f %12s %12.2f\n",
                  std::string(to_string(row.sampler)).c_str(), row.mean_fresh_bits,
                  row.stderr_fresh_bits, row.mean_rejection_pct, squeeze,
                  row.success_pct);
    out += line;
  }
  return out;
}

}  // namespace samplentt
