#include "samplentt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

namespace samplentt {

namespace {

// Regularized lower incomplete gamma P(a, x) by series expansion;
// valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 100000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by modified Lentz
// continued fraction; valid for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 100000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

void check_symbol_range(std::span<const std::uint16_t> samples) {
  for (std::uint16_t v : samples) {
    if (v >= kSymbolSpace)
      throw std::invalid_argument("stats: sample value out of [0, 3329)");
  }
}

std::vector<std::uint32_t> bin_counts(std::span<const std::uint16_t> samples) {
  std::vector<std::uint32_t> counts(kSymbolSpace, 0);
  for (std::uint16_t v : samples) ++counts[v];
  return counts;
}

}  // namespace

double chi2_upper_tail(double x, double df) {
  if (x < 0.0 || df < 1.0)
    throw std::invalid_argument("chi2_upper_tail: need x >= 0 and df >= 1");
  if (x == 0.0) return 1.0;

  // At very large df the exact tail and the normal limit agree to well
  // past the reported precision; the symmetric form is used directly.
  if (df > 1e5) {
    const double z = (x - df) / std::sqrt(2.0 * df);
    return 0.5 * std::erfc(z / std::numbers::sqrt2);
  }

  const double a = 0.5 * df;
  const double xx = 0.5 * x;
  const double q =
      xx < a + 1.0 ? 1.0 - gamma_p_series(a, xx) : gamma_q_contfrac(a, xx);
  return std::clamp(q, 0.0, 1.0);
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Dual theta-series form, accurate where the alternating series is slow.
    const double t =
        std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda));
    const double p = std::sqrt(2.0 * std::numbers::pi) / lambda *
                     (t + std::pow(t, 9.0) + std::pow(t, 25.0) + std::pow(t, 49.0));
    return std::clamp(1.0 - p, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int i = 1; i <= 100; ++i) {
    const double term = std::exp(-2.0 * static_cast<double>(i) * i * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestResult frequency_test(std::span<const std::uint16_t> samples, double alpha) {
  const double n = static_cast<double>(samples.size());
  const double k = kSymbolSpace;
  if (samples.size() < 10 * kSymbolSpace)
    throw TooFewSamples("frequency_test: need at least 10 * 3329 samples");
  check_symbol_range(samples);

  const auto counts = bin_counts(samples);
  const double expected = n / k;
  double chi2 = 0.0;
  double sq_dev = 0.0;
  for (std::uint32_t c : counts) {
    const double dev = static_cast<double>(c) - expected;
    sq_dev += dev * dev;
  }
  chi2 = sq_dev / expected;
  const double sigma = std::sqrt(sq_dev / k);

  TestResult result;
  result.test_name = "frequency";
  result.statistic = chi2;
  result.params = {{"df", k - 1.0}, {"n", n}, {"expected", expected}, {"sigma", sigma}};
  result.p_value = chi2_upper_tail(chi2, k - 1.0);
  result.alpha = alpha;
  result.passed = result.p_value >= alpha;
  return result;
}

TestResult serial_test(std::span<const std::uint16_t> samples, double alpha) {
  if (samples.size() < 2)
    throw TooFewSamples("serial_test: need at least 2 samples");
  check_symbol_range(samples);

  const std::uint64_t k = kSymbolSpace;
  const double pairs = static_cast<double>(samples.size() - 1);

  // Dense pair counters: 3329^2 cells of 32 bits (~44 MB).
  std::vector<std::uint32_t> counts(k * k, 0);
  for (std::size_t t = 0; t + 1 < samples.size(); ++t)
    ++counts[static_cast<std::size_t>(samples[t]) * k + samples[t + 1]];

  std::uint64_t sum_sq = 0;
  for (std::uint32_t c : counts) sum_sq += static_cast<std::uint64_t>(c) * c;

  // chi^2 = sum (O - E)^2 / E with E = (n-1)/k^2 reduces to
  // k^2/(n-1) * sum O^2 - (n-1).
  const double cells = static_cast<double>(k * k);
  const double chi2 = cells / pairs * static_cast<double>(sum_sq) - pairs;
  const double df = cells - 1.0;

  TestResult result;
  result.test_name = "serial";
  result.statistic = chi2;
  result.params = {{"df", df}, {"pairs", pairs}, {"expected", pairs / cells}};
  result.p_value = chi2_upper_tail(std::max(chi2, 0.0), df);
  result.alpha = alpha;
  result.passed = result.p_value >= alpha;
  return result;
}

TestResult runs_test(std::span<const std::uint16_t> samples, double alpha) {
  double n0 = 0.0;
  double n1 = 0.0;
  double runs = 0.0;
  bool prev = false;
  bool first = true;
  for (std::uint16_t v : samples) {
    if (v >= kSymbolSpace)
      throw std::invalid_argument("stats: sample value out of [0, 3329)");
    const bool bit = v >= kRunsThreshold;
    if (bit) ++n1; else ++n0;
    if (first || bit != prev) ++runs;
    prev = bit;
    first = false;
  }
  if (n0 < 20.0 || n1 < 20.0)
    throw DegenerateSequence("runs_test: need at least 20 of each symbol");

  const double n = n0 + n1;
  const double mu = 2.0 * n0 * n1 / n + 1.0;
  const double var =
      2.0 * n0 * n1 * (2.0 * n0 * n1 - n) / (n * n * (n - 1.0));
  const double sigma = std::sqrt(var);
  const double z = (runs - mu) / sigma;

  TestResult result;
  result.test_name = "runs";
  result.statistic = z;
  result.params = {{"n0", n0}, {"n1", n1}, {"runs", runs},
                   {"expected_runs", mu}, {"sigma", sigma}};
  result.p_value = std::erfc(std::fabs(z) / std::numbers::sqrt2);
  result.alpha = alpha;
  result.passed = result.p_value >= alpha;
  return result;
}

TestResult ks_test(std::span<const std::uint16_t> samples, double alpha) {
  if (samples.size() < 1000)
    throw TooFewSamples("ks_test: need at least 1000 samples");
  check_symbol_range(samples);

  const auto counts = bin_counts(samples);
  const double n = static_cast<double>(samples.size());
  double cum = 0.0;
  double d = 0.0;
  for (std::uint32_t v = 0; v < kSymbolSpace; ++v) {
    cum += static_cast<double>(counts[v]);
    const double empirical = cum / n;
    const double reference = static_cast<double>(v + 1) / kSymbolSpace;
    d = std::max(d, std::fabs(empirical - reference));
  }
  const double lambda = std::sqrt(n) * d;

  TestResult result;
  result.test_name = "kolmogorov_smirnov";
  result.statistic = d;
  result.params = {{"n", n}, {"lambda", lambda}};
  result.p_value = kolmogorov_tail(lambda);
  result.alpha = alpha;
  result.passed = result.p_value >= alpha;
  return result;
}

TestResult entropy_test(std::span<const std::uint16_t> samples, double alpha) {
  if (samples.size() < 10 * kSymbolSpace)
    throw TooFewSamples("entropy_test: need at least 10 * 3329 samples");
  check_symbol_range(samples);

  const auto counts = bin_counts(samples);
  const double n = static_cast<double>(samples.size());
  const double k = kSymbolSpace;
  const double h_max = std::log2(k);

  // G = 2 sum O ln(O k / n) is the likelihood-ratio statistic; the
  // entropy deficit is G / (2 n ln 2), computed this way to avoid
  // cancellation in H_max - H.
  double g = 0.0;
  for (std::uint32_t c : counts) {
    if (c == 0) continue;
    const double o = static_cast<double>(c);
    g += o * std::log(o * k / n);
  }
  g = std::max(2.0 * g, 0.0);
  const double deficit = g / (2.0 * n * std::numbers::ln2);
  const double h = h_max - deficit;

  const double bound =
      samples.size() >= 25'600'000 ? 0.001 : 10.0 * (k - 1.0) / (2.0 * n * std::numbers::ln2);

  TestResult result;
  result.test_name = "entropy";
  result.statistic = h;
  result.params = {{"n", n}, {"h_max", h_max}, {"deficit", deficit}, {"bound", bound}};
  result.p_value = chi2_upper_tail(g, k - 1.0);
  result.alpha = alpha;
  result.passed = deficit <= bound;
  return result;
}

std::vector<TestResult> run_all_tests(std::span<const std::uint16_t> samples,
                                      double alpha) {
  return {frequency_test(samples, alpha), entropy_test(samples, alpha),
          ks_test(samples, alpha), runs_test(samples, alpha),
          serial_test(samples, alpha)};
}

std::string to_json(std::span<const TestResult> results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, value] : r.params) params[key] = value;
    arr.push_back({{"test", r.test_name},
                   {"statistic", r.statistic},
                   {"params", params},
                   {"p_value", r.p_value},
                   {"alpha", r.alpha},
                   {"passed", r.passed}});
  }
  return arr.dump();
}

std::string to_table(std::span<const TestResult> results) {
  static const std::map<std::string, std::string> kLabels = {
      {"frequency", "Frequency Test"},
      {"entropy", "Entropy Test"},
      {"kolmogorov_smirnov", "Kolmogorov-Smirnov (KS) Test"},
      {"runs", "Wald-Wolfowitz Test"},
      {"serial", "Serial Test"},
  };
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-30s %16s %12s  %s\n", "Test", "Statistic",
                "p-value", "Result");
  out += line;
  for (const auto& r : results) {
    const auto it = kLabels.find(r.test_name);
    const std::string& label = it != kLabels.end() ? it->second : r.test_name;
    std::snprintf(line, sizeof(line), "%-30s %16.6f %12.6f  %s\n", label.c_str(),
                  r.statistic, r.p_value, r.passed ? "PASS" : "FAIL");
    out += line;
  }
  return out;
}

}  // namespace samplentt
