#include "samplentt/bitstream.hpp"

#include <stdexcept>

namespace samplentt {

std::optional<std::uint8_t> NibbleReader::next_nibble() {
  std::uint8_t nibble;
  if (low_half_) {
    nibble = *low_half_;
    low_half_.reset();
  } else {
    auto byte = source_.next_byte();
    if (!byte) return std::nullopt;
    nibble = static_cast<std::uint8_t>(*byte >> 4);
    low_half_ = static_cast<std::uint8_t>(*byte & 0x0F);
  }
  ++fresh_nibbles_;
  return nibble;
}

std::optional<std::uint16_t> NibbleReader::next_candidate12() {
  if (pending_) {
    auto n = next_nibble();
    if (!n) return std::nullopt;
    const std::uint16_t value =
        static_cast<std::uint16_t>(*pending_ << 4) | *n;
    pending_.reset();
    return value;
  }
  auto n1 = next_nibble();
  if (!n1) return std::nullopt;
  auto n2 = next_nibble();
  if (!n2) return std::nullopt;
  auto n3 = next_nibble();
  if (!n3) return std::nullopt;
  return static_cast<std::uint16_t>((*n1 << 8) | (*n2 << 4) | *n3);
}

void NibbleReader::push_back_low8(std::uint16_t candidate) {
  if (pending_)
    throw std::logic_error("NibbleReader: push-back slot already occupied");
  pending_ = static_cast<std::uint8_t>(candidate & 0xFF);
}

}  // namespace samplentt
