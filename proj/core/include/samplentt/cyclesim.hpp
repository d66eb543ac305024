#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "samplentt/samplers.hpp"

namespace samplentt {

enum class DatapathVariant { kConventional, kModified };

std::string_view to_string(DatapathVariant variant);
std::optional<DatapathVariant> variant_from_string(std::string_view name);

// Default SHAKE-128 core latency per 168-byte squeeze block.
inline constexpr std::uint32_t kShakeCyclesPerBlock = 1108;

// Default SeedMem FIFO depths: three squeeze blocks buffered for the
// conventional datapath, two for the modified one.
inline constexpr std::uint32_t kSeedMemDepthConventional = 504;
inline constexpr std::uint32_t kSeedMemDepthModified = 336;

class StarvedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DatapathConfig {
  DatapathVariant variant = DatapathVariant::kConventional;
  std::optional<std::uint32_t> seedmem_depth;  // defaults per variant
  std::uint32_t shake_cycles_per_block = kShakeCyclesPerBlock;
  std::vector<std::uint8_t> input;
  bool record_events = false;

  std::uint32_t resolved_seedmem_depth() const {
    if (seedmem_depth) return *seedmem_depth;
    return variant == DatapathVariant::kConventional ? kSeedMemDepthConventional
                                                     : kSeedMemDepthModified;
  }
};

// Active-cycle counts per datapath block, the technology-independent
// activity proxy reported instead of synthesized energy.
struct BlockActivity {
  std::uint64_t seedmem_ctrl = 0;
  std::uint64_t beta_i = 0;
  std::uint64_t beta_i1 = 0;
  std::uint64_t beta_i2 = 0;
  std::uint64_t d1_gen = 0;
  std::uint64_t d2_gen = 0;
  std::uint64_t rejecter = 0;
  std::uint64_t ctrl = 0;
};

struct CycleEvent {
  std::uint64_t cycle = 0;
  std::string block;
  std::string action;
};

struct CycleTrace {
  std::uint64_t total_cycles = 0;
  std::uint64_t groups_processed = 0;
  std::uint64_t idle_cycles = 0;  // cycles with the rejecter inactive
  BlockActivity activity;
  Polynomial polynomial;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::vector<CycleEvent> events;  // populated when record_events is set
};

// Steps the datapath until 256 coefficients are accepted. One byte
// leaves SeedMem per cycle; a candidate pair is retired every 3 cycles
// (conventional) or every 2 (modified), so
// total_cycles == group_period * groups_processed exactly.
// Throws StarvedError if the input runs out first.
CycleTrace simulate(const DatapathConfig& config);

// Latency of the SHAKE core for `blocks` squeeze steps.
std::uint64_t shake_latency(std::uint32_t blocks, const DatapathConfig& config);

// Event log as CSV rows "cycle,block,action".
void write_event_log_csv(const CycleTrace& trace, std::ostream& out);

std::string to_json(const CycleTrace& trace, const DatapathConfig& config);

}  // namespace samplentt
