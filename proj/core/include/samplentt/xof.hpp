#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace samplentt {

// SHAKE-128 rate: 168 bytes per squeeze of the Keccak-f[1600] sponge.
inline constexpr std::size_t kShakeRateBytes = 168;

namespace keccak {

// Keccak-f[1600] permutation, 24 rounds. Lanes indexed a[x + 5*y],
// bytes packed little-endian within each lane.
void permute(std::array<std::uint64_t, 25>& lanes);

}  // namespace keccak

// Single-consumer byte provider feeding the samplers. Returns nullopt
// once the underlying source is exhausted (capped stream or fixed
// vector fully read).
class ByteSource {
 public:
  virtual ~ByteSource() = default;
  virtual std::optional<std::uint8_t> next_byte() = 0;

  // Squeeze steps performed so far; 0 for sources that are not sponges.
  virtual std::uint32_t blocks_squeezed() const { return 0; }
};

// Accounted SHAKE-128 output stream. Squeezing is lazy: a 168-byte
// block is produced only when the previous one is spent, so
// blocks_squeezed() == ceil(bytes_emitted() / 168) at all times.
//
// cap_blocks bounds the number of squeeze steps; next_byte() returns
// nullopt once the cap is reached and the last block is spent. This is
// the signal used by the two-squeeze experiment, not an error.
class XofStream final : public ByteSource {
 public:
  explicit XofStream(std::span<const std::uint8_t> seed,
                     std::optional<std::uint32_t> cap_blocks = std::nullopt);

  std::optional<std::uint8_t> next_byte() override;

  std::uint64_t bytes_emitted() const { return bytes_emitted_; }
  std::uint32_t blocks_squeezed() const override { return blocks_squeezed_; }
  std::optional<std::uint32_t> cap_blocks() const { return cap_blocks_; }

  // Convenience bulk read; stops early on exhaustion.
  std::vector<std::uint8_t> read(std::size_t count);

 private:
  void absorb(std::span<const std::uint8_t> seed);
  bool squeeze_block();

  std::array<std::uint64_t, 25> lanes_{};
  std::array<std::uint8_t, kShakeRateBytes> block_{};
  std::size_t block_pos_ = kShakeRateBytes;
  std::uint64_t bytes_emitted_ = 0;
  std::uint32_t blocks_squeezed_ = 0;
  std::optional<std::uint32_t> cap_blocks_;
};

// Fixed byte vector source, for crafted streams in tests.
class VectorSource final : public ByteSource {
 public:
  explicit VectorSource(std::vector<std::uint8_t> bytes)
      : bytes_(std::move(bytes)) {}

  std::optional<std::uint8_t> next_byte() override {
    if (pos_ >= bytes_.size()) return std::nullopt;
    return bytes_[pos_++];
  }

  std::size_t consumed() const { return pos_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// One-shot SHAKE-128 of `input`, producing `out_len` bytes.
std::vector<std::uint8_t> shake128(std::span<const std::uint8_t> input,
                                   std::size_t out_len);

}  // namespace samplentt
