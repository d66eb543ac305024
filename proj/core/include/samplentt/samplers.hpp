#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "samplentt/xof.hpp"

namespace samplentt {

// Kyber ring parameters: R_q = Z_q[X]/(X^n + 1).
inline constexpr std::uint16_t kQ = 3329;
inline constexpr std::size_t kN = 256;

// Candidates in [3584, 4096) lose only their top nibble under the
// partial-discard rule; candidates in [q, 3584) are discarded whole.
inline constexpr std::uint16_t kPartialDiscardBound = 3584;

// An element of R_q in the NTT domain: 256 coefficients in [0, q).
struct Polynomial {
  std::array<std::uint16_t, kN> coefficients{};

  bool operator==(const Polynomial&) const = default;
};

// Per-sampling accounting. `rejected` counts out-of-range candidates
// plus in-range candidates drawn after the polynomial was already full
// (the trailing d2 of the final iteration); the latter are also
// tallied separately in `trailing_unusable`.
struct SampleReport {
  std::uint64_t candidates_total = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t trailing_unusable = 0;
  std::uint64_t fresh_bits = 0;
  std::uint64_t bytes_consumed = 0;
  std::uint32_t blocks_squeezed = 0;

  double rejection_rate() const {
    return candidates_total == 0
               ? 0.0
               : static_cast<double>(rejected) / static_cast<double>(candidates_total);
  }

  // Fraction of candidates whose value was < q, whether or not it was
  // stored. Converges to 3329/4096 for uniform input.
  double in_range_rate() const {
    return candidates_total == 0
               ? 0.0
               : static_cast<double>(accepted + trailing_unusable) /
                     static_cast<double>(candidates_total);
  }

  SampleReport& operator+=(const SampleReport& other);
};

// polynomial is empty when the source ran out before 256 coefficients
// were accepted (the two-squeeze failure signal); the report still
// covers everything consumed up to that point.
struct SampleResult {
  std::optional<Polynomial> polynomial;
  SampleReport report;

  bool completed() const { return polynomial.has_value(); }
};

enum class Sampler { kConventional, kSpdm3, kModified };

inline constexpr std::array<Sampler, 3> kAllSamplers = {
    Sampler::kConventional, Sampler::kSpdm3, Sampler::kModified};

std::string_view to_string(Sampler sampler);
std::optional<Sampler> sampler_from_string(std::string_view name);

// Conventional SampleNTT: 3 bytes per iteration yield two 12-bit
// candidates d1 = b0 + 256*(b1 mod 16), d2 = floor(b1/16) + 16*b2.
SampleResult sample_conventional(ByteSource& source);

// Parse-SPDM3: 12-bit candidates drawn at nibble granularity; a
// candidate >= 3584 is only partially discarded, its low 8 bits seed
// the next candidate.
SampleResult sample_spdm3(ByteSource& source);

// Modified SampleNTT: 2 bytes per iteration; d1 and d2 are the two
// byte orders OR-combined, left-shifted and truncated to 12 bits.
SampleResult sample_modified(ByteSource& source);

SampleResult sample(Sampler sampler, ByteSource& source);

}  // namespace samplentt
