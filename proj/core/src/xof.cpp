#include "samplentt/xof.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace samplentt {

namespace keccak {

namespace {

constexpr std::array<std::uint64_t, 24> kRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// Rho rotation offsets, indexed [x + 5*y].
constexpr std::array<unsigned, 25> kRho = {
    0,  1,  62, 28, 27,  //
    36, 44, 6,  55, 20,  //
    3,  10, 43, 25, 39,  //
    41, 45, 15, 21, 8,   //
    18, 2,  61, 56, 14,
};

}  // namespace

void permute(std::array<std::uint64_t, 25>& a) {
  for (unsigned round = 0; round < 24; ++round) {
    // theta
    std::uint64_t c[5];
    for (unsigned x = 0; x < 5; ++x)
      c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
    for (unsigned x = 0; x < 5; ++x) {
      const std::uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
      for (unsigned y = 0; y < 25; y += 5) a[x + y] ^= d;
    }

    // rho + pi
    std::uint64_t b[25];
    for (unsigned y = 0; y < 5; ++y)
      for (unsigned x = 0; x < 5; ++x)
        b[y + 5 * ((2 * x + 3 * y) % 5)] = std::rotl(a[x + 5 * y], kRho[x + 5 * y]);

    // chi
    for (unsigned y = 0; y < 25; y += 5)
      for (unsigned x = 0; x < 5; ++x)
        a[x + y] = b[x + y] ^ (~b[(x + 1) % 5 + y] & b[(x + 2) % 5 + y]);

    // iota
    a[0] ^= kRoundConstants[round];
  }
}

}  // namespace keccak

namespace {

inline void xor_byte(std::array<std::uint64_t, 25>& lanes, std::size_t pos,
                     std::uint8_t value) {
  lanes[pos / 8] ^= static_cast<std::uint64_t>(value) << (8 * (pos % 8));
}

inline std::uint8_t lane_byte(const std::array<std::uint64_t, 25>& lanes,
                              std::size_t pos) {
  return static_cast<std::uint8_t>(lanes[pos / 8] >> (8 * (pos % 8)));
}

}  // namespace

XofStream::XofStream(std::span<const std::uint8_t> seed,
                     std::optional<std::uint32_t> cap_blocks)
    : cap_blocks_(cap_blocks) {
  if (seed.empty()) throw std::invalid_argument("XofStream: seed must be non-empty");
  absorb(seed);
}

void XofStream::absorb(std::span<const std::uint8_t> seed) {
  std::size_t pos = 0;
  for (std::uint8_t byte : seed) {
    xor_byte(lanes_, pos++, byte);
    if (pos == kShakeRateBytes) {
      keccak::permute(lanes_);
      pos = 0;
    }
  }
  // SHAKE domain suffix (0x1F) and final padding bit.
  xor_byte(lanes_, pos, 0x1F);
  xor_byte(lanes_, kShakeRateBytes - 1, 0x80);
}

bool XofStream::squeeze_block() {
  if (cap_blocks_ && blocks_squeezed_ >= *cap_blocks_) return false;
  keccak::permute(lanes_);
  for (std::size_t i = 0; i < kShakeRateBytes; ++i) block_[i] = lane_byte(lanes_, i);
  ++blocks_squeezed_;
  block_pos_ = 0;
  return true;
}

std::optional<std::uint8_t> XofStream::next_byte() {
  if (block_pos_ == kShakeRateBytes && !squeeze_block()) return std::nullopt;
  ++bytes_emitted_;
  return block_[block_pos_++];
}

std::vector<std::uint8_t> XofStream::read(std::size_t count) {
  std::vector<std::uint8_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto b = next_byte();
    if (!b) break;
    out.push_back(*b);
  }
  return out;
}

std::vector<std::uint8_t> shake128(std::span<const std::uint8_t> input,
                                   std::size_t out_len) {
  std::array<std::uint64_t, 25> lanes{};
  std::size_t pos = 0;
  for (std::uint8_t byte : input) {
    xor_byte(lanes, pos++, byte);
    if (pos == kShakeRateBytes) {
      keccak::permute(lanes);
      pos = 0;
    }
  }
  xor_byte(lanes, pos, 0x1F);
  xor_byte(lanes, kShakeRateBytes - 1, 0x80);

  std::vector<std::uint8_t> out(out_len);
  std::size_t produced = 0;
  while (produced < out_len) {
    keccak::permute(lanes);
    const std::size_t take = std::min(kShakeRateBytes, out_len - produced);
    for (std::size_t i = 0; i < take; ++i) out[produced + i] = lane_byte(lanes, i);
    produced += take;
  }
  return out;
}

}  // namespace samplentt
