#include "samplentt/samplers.hpp"

#include <stdexcept>

#include "samplentt/bitstream.hpp"

namespace samplentt {

SampleReport& SampleReport::operator+=(const SampleReport& other) {
  candidates_total += other.candidates_total;
  accepted += other.accepted;
  rejected += other.rejected;
  trailing_unusable += other.trailing_unusable;
  fresh_bits += other.fresh_bits;
  bytes_consumed += other.bytes_consumed;
  blocks_squeezed += other.blocks_squeezed;
  return *this;
}

std::string_view to_string(Sampler sampler) {
  switch (sampler) {
    case Sampler::kConventional: return "conventional";
    case Sampler::kSpdm3: return "spdm3";
    case Sampler::kModified: return "modified";
  }
  return "unknown";
}

std::optional<Sampler> sampler_from_string(std::string_view name) {
  if (name == "conventional") return Sampler::kConventional;
  if (name == "spdm3") return Sampler::kSpdm3;
  if (name == "modified") return Sampler::kModified;
  return std::nullopt;
}

namespace {

// Books a candidate into the polynomial if usable. A value < q drawn
// after j reached n counts as rejected (trailing), keeping
// accepted + rejected == candidates_total.
inline void book_candidate(std::uint16_t value, Polynomial& poly, std::size_t& j,
                           SampleReport& report) {
  ++report.candidates_total;
  if (value < kQ) {
    if (j < kN) {
      poly.coefficients[j++] = value;
      ++report.accepted;
    } else {
      ++report.trailing_unusable;
      ++report.rejected;
    }
  } else {
    ++report.rejected;
  }
}

SampleResult finish(Polynomial&& poly, std::size_t j, SampleReport&& report,
                    const ByteSource& source) {
  report.blocks_squeezed = source.blocks_squeezed();
  SampleResult result;
  result.report = report;
  if (j == kN) result.polynomial = poly;
  return result;
}

}  // namespace

SampleResult sample_conventional(ByteSource& source) {
  Polynomial poly;
  SampleReport report;
  std::size_t j = 0;

  while (j < kN) {
    std::uint8_t bytes[3];
    bool exhausted = false;
    for (auto& b : bytes) {
      auto next = source.next_byte();
      if (!next) {
        exhausted = true;
        break;
      }
      b = *next;
      ++report.bytes_consumed;
      report.fresh_bits += 8;
    }
    if (exhausted) break;

    const std::uint16_t d1 =
        static_cast<std::uint16_t>(bytes[0] + 256 * (bytes[1] % 16));
    const std::uint16_t d2 =
        static_cast<std::uint16_t>(bytes[1] / 16 + 16 * bytes[2]);
    book_candidate(d1, poly, j, report);
    book_candidate(d2, poly, j, report);
  }
  return finish(std::move(poly), j, std::move(report), source);
}

SampleResult sample_modified(ByteSource& source) {
  Polynomial poly;
  SampleReport report;
  std::size_t j = 0;

  while (j < kN) {
    auto b0 = source.next_byte();
    if (!b0) break;
    ++report.bytes_consumed;
    report.fresh_bits += 8;
    auto b1 = source.next_byte();
    if (!b1) break;
    ++report.bytes_consumed;
    report.fresh_bits += 8;

    // Multiplication by 256 realized as an 8-bit left shift, the 4095
    // mask as truncation to 12 bits.
    const std::uint16_t d1 = static_cast<std::uint16_t>(
        (*b0 | (static_cast<std::uint16_t>(*b1) << 8)) & 0x0FFF);
    const std::uint16_t d2 = static_cast<std::uint16_t>(
        (*b1 | (static_cast<std::uint16_t>(*b0) << 8)) & 0x0FFF);
    book_candidate(d1, poly, j, report);
    book_candidate(d2, poly, j, report);
  }
  return finish(std::move(poly), j, std::move(report), source);
}

SampleResult sample_spdm3(ByteSource& source) {
  Polynomial poly;
  SampleReport report;
  NibbleReader reader(source);
  std::size_t j = 0;

  auto draw = [&](bool& exhausted) {
    auto candidate = reader.next_candidate12();
    if (!candidate) {
      exhausted = true;
      return;
    }
    ++report.candidates_total;
    if (*candidate < kQ) {
      if (j < kN) {
        poly.coefficients[j++] = *candidate;
        ++report.accepted;
      } else {
        ++report.trailing_unusable;
        ++report.rejected;
      }
    } else {
      ++report.rejected;
      if (*candidate >= kPartialDiscardBound) reader.push_back_low8(*candidate);
    }
  };

  bool exhausted = false;
  while (j < kN && !exhausted) {
    draw(exhausted);  // d1
    if (exhausted) break;
    draw(exhausted);  // d2, drawn even when d1 just filled the polynomial
  }

  report.fresh_bits = reader.fresh_bits_consumed();
  report.bytes_consumed = reader.bytes_consumed();
  return finish(std::move(poly), j, std::move(report), source);
}

SampleResult sample(Sampler sampler, ByteSource& source) {
  switch (sampler) {
    case Sampler::kConventional: return sample_conventional(source);
    case Sampler::kSpdm3: return sample_spdm3(source);
    case Sampler::kModified: return sample_modified(source);
  }
  throw std::invalid_argument("sample: unknown sampler");
}

}  // namespace samplentt
