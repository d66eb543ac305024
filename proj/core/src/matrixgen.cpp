#include "samplentt/matrixgen.hpp"

#include <stdexcept>

#include <json.hpp>

namespace samplentt {

std::vector<std::uint8_t> entry_seed(std::span<const std::uint8_t, kSeedBytes> rho,
                                     std::uint8_t i, std::uint8_t j) {
  std::vector<std::uint8_t> seed(rho.begin(), rho.end());
  seed.push_back(j);
  seed.push_back(i);
  return seed;
}

std::optional<MatrixA> generate_matrix(
    std::span<const std::uint8_t, kSeedBytes> rho, std::uint32_t k,
    Sampler sampler, std::optional<std::uint32_t> cap_blocks) {
  if (k < 2 || k > 4)
    throw std::invalid_argument("generate_matrix: k must be 2, 3 or 4");

  MatrixA matrix;
  matrix.k = k;
  matrix.entries.reserve(static_cast<std::size_t>(k) * k);
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = 0; j < k; ++j) {
      const auto seed = entry_seed(rho, static_cast<std::uint8_t>(i),
                                   static_cast<std::uint8_t>(j));
      XofStream stream(seed, cap_blocks);
      SampleResult result = sample(sampler, stream);
      matrix.aggregate += result.report;
      if (!result.completed()) return std::nullopt;
      matrix.entries.push_back(std::move(*result.polynomial));
    }
  }
  return matrix;
}

std::string to_json(const MatrixA& matrix) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& entry : matrix.entries) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::uint16_t c : entry.coefficients) coeffs.push_back(c);
    rows.push_back(std::move(coeffs));
  }
  return rows.dump();
}

std::vector<std::uint8_t> to_raw_le16(const MatrixA& matrix) {
  std::vector<std::uint8_t> out;
  out.reserve(matrix.entries.size() * kN * 2);
  for (const auto& entry : matrix.entries) {
    for (std::uint16_t c : entry.coefficients) {
      out.push_back(static_cast<std::uint8_t>(c & 0xFF));
      out.push_back(static_cast<std::uint8_t>(c >> 8));
    }
  }
  return out;
}

}  // namespace samplentt
