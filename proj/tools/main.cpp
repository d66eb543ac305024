// samplentt: uniform R_q sampling laboratory for Kyber matrix generation.
//
// Subcommands: sample, matrix, bench, stats, cycles. All runs are
// XOF-deterministic: the same argv always produces byte-identical output.

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "samplentt/bench.hpp"
#include "samplentt/cyclesim.hpp"
#include "samplentt/matrixgen.hpp"
#include "samplentt/samplers.hpp"
#include "samplentt/stats.hpp"
#include "samplentt/xof.hpp"

namespace {

using namespace samplentt;

constexpr int kExitOk = 0;
constexpr int kExitTestFailure = 1;
constexpr int kExitUsage = 2;

std::optional<std::vector<std::uint8_t>> parse_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0F]);
  }
  return out;
}

// Master seeds are 32 bytes; shorter hex is zero-padded on the right.
std::optional<std::array<std::uint8_t, 32>> parse_master_seed(const std::string& hex) {
  auto bytes = parse_hex(hex);
  if (!bytes || bytes->size() > 32) return std::nullopt;
  std::array<std::uint8_t, 32> seed{};
  std::copy(bytes->begin(), bytes->end(), seed.begin());
  return seed;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + out_path);
  file << text;
}

void emit_bytes(const std::vector<std::uint8_t>& bytes, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout.write(reinterpret_cast<const char*>(bytes.data()),
                    static_cast<std::streamsize>(bytes.size()));
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + out_path);
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
}

nlohmann::json report_json(const SampleReport& report) {
  return {{"candidates_total", report.candidates_total},
          {"accepted", report.accepted},
          {"rejected", report.rejected},
          {"trailing_unusable", report.trailing_unusable},
          {"fresh_bits", report.fresh_bits},
          {"bytes_consumed", report.bytes_consumed},
          {"blocks_squeezed", report.blocks_squeezed},
          {"rejection_rate", report.rejection_rate()}};
}

int run_sample(const std::string& sampler_name, const std::string& seed_hex,
               std::optional<std::uint32_t> cap_blocks, const std::string& format,
               const std::string& out_path) {
  const auto sampler = sampler_from_string(sampler_name);
  const auto seed = parse_hex(seed_hex);
  if (!sampler || !seed || seed->empty()) {
    std::cerr << "sample: invalid --sampler or --seed\n";
    return kExitUsage;
  }

  XofStream stream(*seed, cap_blocks);
  const SampleResult result = sample(*sampler, stream);

  if (format == "json") {
    nlohmann::json doc = {{"sampler", sampler_name},
                          {"seed", to_hex(*seed)},
                          {"completed", result.completed()},
                          {"report", report_json(result.report)}};
    if (result.completed()) {
      nlohmann::json coeffs = nlohmann::json::array();
      for (std::uint16_t c : result.polynomial->coefficients) coeffs.push_back(c);
      doc["coefficients"] = std::move(coeffs);
    }
    emit(doc.dump(), out_path);
  } else if (format == "csv") {
    std::string text = "index,coefficient\n";
    if (result.completed()) {
      for (std::size_t i = 0; i < kN; ++i)
        text += std::to_string(i) + "," +
                std::to_string(result.polynomial->coefficients[i]) + "\n";
    }
    emit(text, out_path);
  } else {
    std::string text = "sampler: " + sampler_name + "\n";
    text += "completed: " + std::string(result.completed() ? "yes" : "no") + "\n";
    const auto& r = result.report;
    text += "candidates: " + std::to_string(r.candidates_total) +
            "  accepted: " + std::to_string(r.accepted) +
            "  rejected: " + std::to_string(r.rejected) + "\n";
    text += "fresh_bits: " + std::to_string(r.fresh_bits) +
            "  bytes: " + std::to_string(r.bytes_consumed) +
            "  blocks_squeezed: " + std::to_string(r.blocks_squeezed) + "\n";
    emit(text, out_path);
  }
  return kExitOk;
}

int run_matrix(const std::string& sampler_name, const std::string& seed_hex,
               std::uint32_t k, const std::string& format,
               const std::string& out_path) {
  const auto sampler = sampler_from_string(sampler_name);
  const auto seed = parse_hex(seed_hex);
  if (!sampler || !seed || seed->size() != kSeedBytes) {
    std::cerr << "matrix: --seed must be 32 bytes of hex and --sampler valid\n";
    return kExitUsage;
  }

  std::array<std::uint8_t, kSeedBytes> rho{};
  std::copy(seed->begin(), seed->end(), rho.begin());
  const auto matrix = generate_matrix(rho, k, *sampler);
  if (!matrix) {
    std::cerr << "matrix: stream exhausted\n";
    return kExitTestFailure;
  }

  if (format == "raw") {
    emit_bytes(to_raw_le16(*matrix), out_path);
  } else if (format == "json") {
    emit(to_json(*matrix), out_path);
  } else {
    const auto& agg = matrix->aggregate;
    std::string text = "k: " + std::to_string(matrix->k) + "  sampler: " +
                       sampler_name + "\n";
    text += "entries: " + std::to_string(matrix->entries.size()) + "\n";
    text += "aggregate candidates: " + std::to_string(agg.candidates_total) +
            "  fresh_bits: " + std::to_string(agg.fresh_bits) +
            "  blocks_squeezed: " + std::to_string(agg.blocks_squeezed) + "\n";
    emit(text, out_path);
  }
  return kExitOk;
}

int run_bench(const std::vector<std::string>& sampler_names, std::uint64_t trials,
              std::uint32_t k, const std::string& seed_hex,
              std::optional<std::uint32_t> cap_blocks, const std::string& format,
              const std::string& out_path) {
  BenchConfig config;
  config.trials = trials;
  config.k = k;
  config.cap_blocks = cap_blocks;
  const auto master = parse_master_seed(seed_hex);
  if (!master) {
    std::cerr << "bench: invalid --seed\n";
    return kExitUsage;
  }
  config.master_seed = *master;
  if (!sampler_names.empty()) {
    config.samplers.clear();
    for (const auto& name : sampler_names) {
      const auto sampler = sampler_from_string(name);
      if (!sampler) {
        std::cerr << "bench: unknown sampler " << name << "\n";
        return kExitUsage;
      }
      config.samplers.push_back(*sampler);
    }
  }

  const BenchSummary summary = run_all_experiments(config);
  if (format == "csv") {
    emit(to_csv(summary), out_path);
  } else if (format == "text") {
    emit(to_text(summary), out_path);
  } else {
    emit(to_json(summary), out_path);
  }
  return kExitOk;
}

int run_stats(const std::string& sampler_name, std::uint64_t samples, double alpha,
              const std::string& seed_hex, const std::string& format,
              const std::string& out_path) {
  const auto sampler = sampler_from_string(sampler_name);
  const auto master = parse_master_seed(seed_hex);
  if (!sampler || !master) {
    std::cerr << "stats: invalid --sampler or --seed\n";
    return kExitUsage;
  }

  const auto data = collect_samples(*sampler, *master, samples);
  const auto results = run_all_tests(data, alpha);

  if (format == "text") {
    std::string text = "sampler: " + sampler_name + "  samples: " +
                       std::to_string(samples) + "  alpha: " + std::to_string(alpha) +
                       "\n" + to_table(results);
    emit(text, out_path);
  } else {
    emit(to_json(results), out_path);
  }

  for (const auto& r : results)
    if (!r.passed) return kExitTestFailure;
  return kExitOk;
}

int run_cycles(const std::string& variant_name, std::uint64_t trials,
               const std::string& seed_hex, const std::string& event_log_path,
               const std::string& format, const std::string& out_path) {
  const auto variant = variant_from_string(variant_name);
  const auto master = parse_master_seed(seed_hex);
  if (!variant || !master) {
    std::cerr << "cycles: invalid --variant or --seed\n";
    return kExitUsage;
  }

  DatapathConfig config;
  config.variant = *variant;
  config.record_events = !event_log_path.empty();

  // Enough bytes for any realistic rejection streak.
  const std::size_t input_bytes = 6 * kShakeRateBytes;

  std::uint64_t total = 0;
  std::uint64_t groups = 0;
  std::uint64_t idle = 0;
  std::optional<CycleTrace> first_trace;
  for (std::uint64_t t = 0; t < trials; ++t) {
    XofStream stream(trial_seed(*master, t));
    DatapathConfig trial_config = config;
    trial_config.input = stream.read(input_bytes);
    trial_config.record_events = config.record_events && t == 0;
    CycleTrace trace = simulate(trial_config);
    total += trace.total_cycles;
    groups += trace.groups_processed;
    idle += trace.idle_cycles;
    if (t == 0) first_trace = std::move(trace);
  }

  if (!event_log_path.empty()) {
    std::ofstream file(event_log_path);
    if (!file) {
      std::cerr << "cycles: cannot open event log path\n";
      return kExitUsage;
    }
    write_event_log_csv(*first_trace, file);
  }

  const double mean_cycles = static_cast<double>(total) / static_cast<double>(trials);
  if (format == "text") {
    std::string text = "variant: " + variant_name + "  trials: " +
                       std::to_string(trials) + "\n";
    text += "mean_total_cycles: " + std::to_string(mean_cycles) + "\n";
    text += "shake_latency_3_blocks: " + std::to_string(shake_latency(3, config)) +
            "  shake_latency_2_blocks: " + std::to_string(shake_latency(2, config)) +
            "\n";
    emit(text, out_path);
  } else {
    nlohmann::json doc = {
        {"variant", variant_name},
        {"trials", trials},
        {"mean_total_cycles", mean_cycles},
        {"mean_groups", static_cast<double>(groups) / static_cast<double>(trials)},
        {"mean_idle_cycles", static_cast<double>(idle) / static_cast<double>(trials)},
        {"seedmem_depth", config.resolved_seedmem_depth()},
        {"shake_cycles_per_block", config.shake_cycles_per_block},
        {"first_trial", nlohmann::json::parse(to_json(*first_trace, config))},
    };
    emit(doc.dump(), out_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform R_q sampling laboratory: conventional SampleNTT, "
               "Parse-SPDM3 and Modified SampleNTT over SHAKE-128"};
  app.require_subcommand(1);

  std::string sampler = "modified";
  std::string seed_hex(64, '0');
  std::string format = "json";
  std::string out_path;
  std::optional<std::uint32_t> cap_blocks;
  std::uint64_t trials = 10000;
  std::uint64_t samples = 1000000;
  std::uint32_t k = 2;
  double alpha = kDefaultAlpha;
  std::vector<std::string> sampler_list;
  std::string variant = "conventional";
  std::string event_log_path;

  auto* cmd_sample = app.add_subcommand("sample", "Sample one polynomial from a seed");
  cmd_sample->add_option("--sampler", sampler, "conventional|spdm3|modified");
  cmd_sample->add_option("--seed", seed_hex, "XOF seed material (hex)");
  cmd_sample->add_option("--cap-blocks", cap_blocks, "max SHAKE-128 squeeze blocks");
  cmd_sample->add_option("--format", format)
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd_sample->add_option("--out", out_path, "output file (default stdout)");

  auto* cmd_matrix = app.add_subcommand("matrix", "Generate the k x k matrix A-hat");
  cmd_matrix->add_option("--sampler", sampler, "conventional|spdm3|modified");
  cmd_matrix->add_option("--seed", seed_hex, "32-byte rho (hex)");
  cmd_matrix->add_option("--k", k)->check(CLI::IsMember({2, 3, 4}));
  cmd_matrix->add_option("--format", format)
      ->check(CLI::IsMember({"json", "raw", "text"}));
  cmd_matrix->add_option("--out", out_path, "output file (default stdout)");

  auto* cmd_bench = app.add_subcommand("bench", "Monte Carlo consumption experiments");
  cmd_bench->add_option("--sampler", sampler_list, "repeatable; default all three");
  cmd_bench->add_option("--trials", trials, "trials per sampler");
  cmd_bench->add_option("--k", k)->check(CLI::IsMember({2, 3, 4}));
  cmd_bench->add_option("--seed", seed_hex, "master seed (hex, <= 32 bytes)");
  cmd_bench->add_option("--cap-blocks", cap_blocks, "cap for the uncapped pass");
  cmd_bench->add_option("--format", format)
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd_bench->add_option("--out", out_path, "output file (default stdout)");

  auto* cmd_stats = app.add_subcommand("stats", "Randomness test battery");
  cmd_stats->add_option("--sampler", sampler, "conventional|spdm3|modified");
  cmd_stats->add_option("--samples", samples, "number of coefficients to test");
  cmd_stats->add_option("--alpha", alpha, "significance level");
  cmd_stats->add_option("--seed", seed_hex, "master seed (hex, <= 32 bytes)");
  cmd_stats->add_option("--format", format)
      ->check(CLI::IsMember({"json", "text"}));
  cmd_stats->add_option("--out", out_path, "output file (default stdout)");

  auto* cmd_cycles = app.add_subcommand("cycles", "Datapath cycle simulation");
  cmd_cycles->add_option("--variant", variant, "conventional|modified");
  cmd_cycles->add_option("--trials", trials, "random inputs to average over");
  cmd_cycles->add_option("--seed", seed_hex, "master seed (hex, <= 32 bytes)");
  cmd_cycles->add_option("--event-log", event_log_path,
                         "write first trial's event CSV here");
  cmd_cycles->add_option("--format", format)
      ->check(CLI::IsMember({"json", "text"}));
  cmd_cycles->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_sample->parsed())
      return run_sample(sampler, seed_hex, cap_blocks, format, out_path);
    if (cmd_matrix->parsed())
      return run_matrix(sampler, seed_hex, k, format, out_path);
    if (cmd_bench->parsed())
      return run_bench(sampler_list, trials, k, seed_hex, cap_blocks, format,
                       out_path);
    if (cmd_stats->parsed())
      return run_stats(sampler, samples, alpha, seed_hex, format, out_path);
    if (cmd_cycles->parsed())
      return run_cycles(variant, trials, seed_hex, event_log_path, format, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTestFailure;
  }
  return kExitUsage;
}
