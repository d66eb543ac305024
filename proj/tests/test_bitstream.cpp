#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "samplentt/bitstream.hpp"
#include "samplentt/xof.hpp"

using namespace samplentt;

TEST_CASE("three fresh nibbles, high nibble first") {
  VectorSource src({0x01, 0x10});
  NibbleReader reader(src);
  auto v = reader.next_candidate12();
  REQUIRE(v);
  CHECK(*v == 0x011);  // n1=0, n2=1, n3=1
  CHECK(reader.fresh_bits_consumed() == 12);
  CHECK(reader.bytes_consumed() == 2);  // 3 nibbles round up
}

TEST_CASE("pending push-back feeds the next candidate") {
  VectorSource src({0xC0});
  NibbleReader reader(src);
  reader.push_back_low8(0xEAB);  // retains 0xAB
  CHECK(reader.has_pending());
  auto v = reader.next_candidate12();
  REQUIRE(v);
  CHECK(*v == 0xABC);
  CHECK(*v == 2748);
  CHECK(reader.fresh_bits_consumed() == 4);
  CHECK_FALSE(reader.has_pending());
}

TEST_CASE("push-back keeps value mod 256") {
  VectorSource src({});
  NibbleReader reader(src);
  reader.push_back_low8(0xE00);
  CHECK(reader.has_pending());
  VectorSource src2({0x10});
  NibbleReader reader2(src2);
  reader2.push_back_low8(0xE00);
  CHECK(*reader2.next_candidate12() == 0x001);
}

TEST_CASE("rejected-high trace: 0xFAB then fresh nibble 0x3") {
  VectorSource src({0xFA, 0xB3});
  NibbleReader reader(src);
  auto first = reader.next_candidate12();
  REQUIRE(first);
  CHECK(*first == 0xFAB);
  reader.push_back_low8(*first);
  auto second = reader.next_candidate12();
  REQUIRE(second);
  CHECK(*second == 0xAB3);
  CHECK(reader.fresh_bits_consumed() == 16);
}

TEST_CASE("all-zero bytes give zero candidates") {
  VectorSource src(std::vector<std::uint8_t>(6, 0));
  NibbleReader reader(src);
  for (int i = 0; i < 4; ++i) {
    auto v = reader.next_candidate12();
    REQUIRE(v);
    CHECK(*v == 0);
  }
  CHECK(reader.fresh_bits_consumed() == 48);
}

TEST_CASE("double push-back is a programming error") {
  VectorSource src({});
  NibbleReader reader(src);
  reader.push_back_low8(0xFFF);
  CHECK_THROWS_AS(reader.push_back_low8(0x123), std::logic_error);
}

TEST_CASE("exhaustion mid-candidate") {
  VectorSource src({0xAB});  // two nibbles only
  NibbleReader reader(src);
  CHECK_FALSE(reader.next_candidate12());
  CHECK(reader.fresh_nibbles_consumed() == 2);
}

TEST_CASE("conservation: bits == 12*full + 4*partial for random interleavings") {
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::uint8_t> seed{static_cast<std::uint8_t>(round + 1)};
    XofStream stream(seed);
    NibbleReader reader(stream);
    std::uint64_t full = 0;
    std::uint64_t partial = 0;
    for (int i = 0; i < 500; ++i) {
      const bool had_pending = reader.has_pending();
      auto v = reader.next_candidate12();
      REQUIRE(v);
      had_pending ? ++partial : ++full;
      // push back with the same probability the samplers do
      if (!reader.has_pending() && *v >= 3584) reader.push_back_low8(*v);
    }
    CHECK(reader.fresh_bits_consumed() == 12 * full + 4 * partial);
  }
}

TEST_CASE("replay determinism against the raw byte stream") {
  std::vector<std::uint8_t> seed{42};
  XofStream stream(seed);
  const auto raw = stream.read(1000);

  // Reconstruct candidates from the raw bytes with an index cursor.
  std::size_t nibble_pos = 0;
  auto raw_nibble = [&]() {
    const std::uint8_t byte = raw[nibble_pos / 2];
    const std::uint8_t value =
        nibble_pos % 2 == 0 ? static_cast<std::uint8_t>(byte >> 4)
                            : static_cast<std::uint8_t>(byte & 0x0F);
    ++nibble_pos;
    return value;
  };

  XofStream replay(seed);
  NibbleReader reader(replay);
  std::optional<std::uint16_t> pending;
  for (int i = 0; i < 600; ++i) {
    auto v = reader.next_candidate12();
    REQUIRE(v);
    std::uint16_t expected;
    if (pending) {
      expected = static_cast<std::uint16_t>((*pending << 4) | raw_nibble());
      pending.reset();
    } else {
      const auto n1 = raw_nibble();
      const auto n2 = raw_nibble();
      const auto n3 = raw_nibble();
      expected = static_cast<std::uint16_t>((n1 << 8) | (n2 << 4) | n3);
    }
    CHECK(*v == expected);
    if (*v >= 3584) {
      reader.push_back_low8(*v);
      pending = *v & 0xFF;
    }
  }
}
