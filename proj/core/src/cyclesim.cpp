#include "samplentt/cyclesim.hpp"

#include <ostream>

#include <json.hpp>

namespace samplentt {

std::string_view to_string(DatapathVariant variant) {
  return variant == DatapathVariant::kConventional ? "conventional" : "modified";
}

std::optional<DatapathVariant> variant_from_string(std::string_view name) {
  if (name == "conventional") return DatapathVariant::kConventional;
  if (name == "modified") return DatapathVariant::kModified;
  return std::nullopt;
}

namespace {

// Candidate pair as produced by the D1/D2 generator blocks. Formulas
// are written in the register-level shift/merge form of the datapath.
struct CandidatePair {
  std::uint16_t d1;
  std::uint16_t d2;
};

CandidatePair gen_conventional(std::uint8_t bi, std::uint8_t bi1, std::uint8_t bi2) {
  const auto d1 = static_cast<std::uint16_t>(
      bi | (static_cast<std::uint16_t>(bi1 & 0x0F) << 8));
  const auto d2 = static_cast<std::uint16_t>(
      (bi1 >> 4) | (static_cast<std::uint16_t>(bi2) << 4));
  return {d1, d2};
}

CandidatePair gen_modified(std::uint8_t bi, std::uint8_t bi1) {
  const auto d1 = static_cast<std::uint16_t>(
      (bi | (static_cast<std::uint16_t>(bi1) << 8)) & 0x0FFF);
  const auto d2 = static_cast<std::uint16_t>(
      (bi1 | (static_cast<std::uint16_t>(bi) << 8)) & 0x0FFF);
  return {d1, d2};
}

}  // namespace

CycleTrace simulate(const DatapathConfig& config) {
  const bool conventional = config.variant == DatapathVariant::kConventional;
  const std::uint64_t period = conventional ? 3 : 2;

  CycleTrace trace;
  std::size_t pos = 0;
  std::size_t j = 0;

  auto log = [&](std::uint64_t cycle, const char* block, const char* action) {
    if (config.record_events) trace.events.push_back({cycle, block, action});
  };

  // Rejecter retirement: D1 of group g is checked on the group's last
  // read cycle, D2 on the first cycle of group g+1 (the final group's
  // D2 collapses into its last cycle).
  auto retire = [&](std::uint16_t value) {
    ++trace.activity.rejecter;
    if (value < kQ && j < kN) {
      trace.polynomial.coefficients[j++] = value;
      ++trace.accepted;
      return true;
    }
    ++trace.rejected;
    return false;
  };

  while (j < kN) {
    if (pos + period > config.input.size())
      throw StarvedError("cyclesim: input exhausted before 256 coefficients");

    const std::uint64_t base = period * trace.groups_processed;
    const std::uint8_t bi = config.input[pos++];
    log(base, "seedmem_ctrl", "read");
    log(base, "beta_i", "latch");
    const std::uint8_t bi1 = config.input[pos++];
    log(base + 1, "seedmem_ctrl", "read");
    log(base + 1, "beta_i1", "latch");

    CandidatePair pair{};
    std::uint64_t d1_cycle;
    if (conventional) {
      const std::uint8_t bi2 = config.input[pos++];
      log(base + 2, "seedmem_ctrl", "read");
      log(base + 2, "beta_i2", "latch");
      pair = gen_conventional(bi, bi1, bi2);
      log(base + 1, "d1_gen", "compute");
      log(base + 2, "d2_gen", "compute");
      trace.activity.beta_i2 += 1;
      d1_cycle = base + 2;
    } else {
      pair = gen_modified(bi, bi1);
      log(base + 1, "d1_gen", "compute");
      log(base + 1, "d2_gen", "compute");
      d1_cycle = base + 1;
    }

    trace.activity.seedmem_ctrl += period;
    trace.activity.ctrl += period;
    trace.activity.beta_i += 1;
    trace.activity.beta_i1 += 1;
    trace.activity.d1_gen += 1;
    trace.activity.d2_gen += 1;

    const bool d1_accepted = retire(pair.d1);
    log(d1_cycle, "rejecter", d1_accepted ? "d1_accept" : "d1_reject");
    const bool d2_accepted = retire(pair.d2);  // trailing D2 still retires
    const std::uint64_t d2_cycle = j == kN ? d1_cycle : base + period;
    log(d2_cycle, "rejecter", d2_accepted ? "d2_accept" : "d2_reject");

    ++trace.groups_processed;
    if (conventional) ++trace.idle_cycles;
  }

  trace.total_cycles = period * trace.groups_processed;
  return trace;
}

std::uint64_t shake_latency(std::uint32_t blocks, const DatapathConfig& config) {
  if (blocks < 1) throw std::invalid_argument("shake_latency: blocks must be >= 1");
  return static_cast<std::uint64_t>(blocks) * config.shake_cycles_per_block;
}

void write_event_log_csv(const CycleTrace& trace, std::ostream& out) {
  out << "cycle,block,action\n";
  for (const auto& event : trace.events)
    out << event.cycle << ',' << event.block << ',' << event.action << '\n';
}

std::string to_json(const CycleTrace& trace, const DatapathConfig& config) {
  nlohmann::json doc = {
      {"variant", std::string(to_string(config.variant))},
      {"seedmem_depth", config.resolved_seedmem_depth()},
      {"total_cycles", trace.total_cycles},
      {"groups_processed", trace.groups_processed},
      {"idle_cycles", trace.idle_cycles},
      {"accepted", trace.accepted},
      {"rejected", trace.rejected},
      {"activity",
       {{"seedmem_ctrl", trace.activity.seedmem_ctrl},
        {"beta_i", trace.activity.beta_i},
        {"beta_i1", trace.activity.beta_i1},
        {"beta_i2", trace.activity.beta_i2},
        {"d1_gen", trace.activity.d1_gen},
        {"d2_gen", trace.activity.d2_gen},
        {"rejecter", trace.activity.rejecter},
        {"ctrl", trace.activity.ctrl}}},
  };
  return doc.dump();
}

}  // namespace samplentt
