#pragma once

#include <cstdint>
#include <optional>

#include "samplentt/xof.hpp"

namespace samplentt {

// 4-bit-granular cursor over a byte source, with a single-slot push-back
// holding the low 8 bits of a partially discarded 12-bit candidate.
//
// Nibble order within a byte is high nibble first, then low nibble, so
// three consecutive nibbles n1,n2,n3 starting at a byte boundary form
// the candidate n1*256 + n2*16 + n3.
class NibbleReader {
 public:
  explicit NibbleReader(ByteSource& source) : source_(source) {}

  // Next 12-bit candidate. With a pending push-back the candidate is
  // pending*16 + one fresh nibble (4 fresh bits); otherwise three fresh
  // nibbles (12 fresh bits). nullopt if the source runs out mid-candidate.
  std::optional<std::uint16_t> next_candidate12();

  // Retain the low 8 bits of a candidate that was rejected with only its
  // top nibble discarded. Throws std::logic_error if a push-back is
  // already pending.
  void push_back_low8(std::uint16_t candidate);

  bool has_pending() const { return pending_.has_value(); }
  std::uint64_t fresh_nibbles_consumed() const { return fresh_nibbles_; }
  std::uint64_t fresh_bits_consumed() const { return 4 * fresh_nibbles_; }

  // Byte-level consumption, rounded up so comparisons with byte-oriented
  // samplers are well-defined.
  std::uint64_t bytes_consumed() const { return (fresh_nibbles_ + 1) / 2; }

 private:
  std::optional<std::uint8_t> next_nibble();

  ByteSource& source_;
  std::optional<std::uint8_t> low_half_;  // low nibble of a half-consumed byte
  std::optional<std::uint8_t> pending_;   // pushed-back candidate low byte
  std::uint64_t fresh_nibbles_ = 0;
};

}  // namespace samplentt
