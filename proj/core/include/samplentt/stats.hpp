#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace samplentt {

// Symbol space for all tests: sampler outputs live in [0, 3329).
inline constexpr std::uint32_t kSymbolSpace = 3329;

// Binarization threshold for the runs test, the median split of [0, q).
inline constexpr std::uint16_t kRunsThreshold = 1665;

inline constexpr double kDefaultAlpha = 0.05;

class TooFewSamples : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateSequence : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TestResult {
  std::string test_name;
  double statistic = 0.0;
  std::map<std::string, double> params;
  double p_value = 0.0;
  double alpha = kDefaultAlpha;
  bool passed = false;
};

// Upper-tail probability of the chi-square distribution: the
// regularized incomplete gamma Q(df/2, x/2) for df <= 1e5, and the
// symmetric normal approximation z = (x - df) / sqrt(2 df) above that.
double chi2_upper_tail(double x, double df);

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum (-1)^{i-1} exp(-2 i^2 lambda^2).
double kolmogorov_tail(double lambda);

// Chi-square goodness of fit over the 3329 symbol bins; also reports
// the observed standard deviation of the bin counts.
TestResult frequency_test(std::span<const std::uint16_t> samples,
                          double alpha = kDefaultAlpha);

// Two-dimensional frequency test over the n-1 overlapping adjacent
// pairs; df = 3329^2 - 1. Allocates 3329^2 32-bit counters (~44 MB).
TestResult serial_test(std::span<const std::uint16_t> samples,
                       double alpha = kDefaultAlpha);

// Wald-Wolfowitz runs test on the sequence binarized at >= 1665;
// two-sided p from the normal statistic Z = (R - mu_R) / sigma_R.
TestResult runs_test(std::span<const std::uint16_t> samples,
                     double alpha = kDefaultAlpha);

// One-sample Kolmogorov-Smirnov against the discrete uniform CDF on
// {0, ..., 3328}; p from the asymptotic tail at sqrt(n) * D.
TestResult ks_test(std::span<const std::uint16_t> samples,
                   double alpha = kDefaultAlpha);

// Empirical Shannon entropy over the 3329 bins. Passes when
// log2(3329) - H <= bound: 0.001 for n >= 25.6e6, otherwise the
// scaled bias bound 10 * (k-1) / (2 n ln 2). The reported p-value is
// the chi-square tail of the equivalent G statistic 2 n ln2 (Hmax - H).
TestResult entropy_test(std::span<const std::uint16_t> samples,
                        double alpha = kDefaultAlpha);

// All five tests in Table-IV order.
std::vector<TestResult> run_all_tests(std::span<const std::uint16_t> samples,
                                      double alpha = kDefaultAlpha);

// JSON array of results (canonical machine format).
std::string to_json(std::span<const TestResult> results);

// Fixed-width text table, one row per test.
std::string to_table(std::span<const TestResult> results);

}  // namespace samplentt
