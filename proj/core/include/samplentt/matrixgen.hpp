#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "samplentt/samplers.hpp"

namespace samplentt {

inline constexpr std::size_t kSeedBytes = 32;

// The k x k public matrix in the NTT domain, row-major, with the
// summed accounting across all k^2 sampled entries.
struct MatrixA {
  std::uint32_t k = 0;
  std::vector<Polynomial> entries;
  SampleReport aggregate;

  const Polynomial& at(std::uint32_t i, std::uint32_t j) const {
    return entries[i * k + j];
  }
};

// Entry (i, j) is sampled from the stream seeded with rho || j || i,
// so each entry can be regenerated in isolation. k in {2, 3, 4} maps to
// Kyber512/768/1024; anything else throws std::invalid_argument.
// Returns nullopt only when a cap is configured and some entry's
// stream ran out.
std::optional<MatrixA> generate_matrix(
    std::span<const std::uint8_t, kSeedBytes> rho, std::uint32_t k,
    Sampler sampler, std::optional<std::uint32_t> cap_blocks = std::nullopt);

// Stream seed for one entry: rho || byte(j) || byte(i).
std::vector<std::uint8_t> entry_seed(std::span<const std::uint8_t, kSeedBytes> rho,
                                     std::uint8_t i, std::uint8_t j);

// JSON array of k^2 coefficient arrays, row-major.
std::string to_json(const MatrixA& matrix);

// Raw little-endian 16-bit coefficients, row-major.
std::vector<std::uint8_t> to_raw_le16(const MatrixA& matrix);

}  // namespace samplentt
