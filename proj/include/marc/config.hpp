#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "marc/allocator.hpp"
#include "marc/channel.hpp"
#include "marc/oracle.hpp"
#include "marc/regions.hpp"

namespace marc {

struct RunOptions {
  std::uint64_t seed = 0;
  int qmc_samples = 1 << 16;
  double tol = 1e-9;
  std::string output;  // empty = stdout
};

// Parsed experiment configuration. The JSON document is validated strictly:
// unknown keys anywhere are rejected.
struct RunConfig {
  DualBandConfig channel;
  MmWaveLinkPowers mm_powers;
  RunOptions run;

  EvalOptions eval() const { return {run.seed, run.qmc_samples}; }
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// The optimization-facing gain tuple of the configured mm-wave band, with
// gamma from the microwave summary (or the explicit override).
MmWaveGains mm_gains_from_config(const RunConfig& cfg);
RateContext rate_context_from_config(const RunConfig& cfg);

}  // namespace marc
