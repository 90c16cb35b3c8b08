#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "aoc/domain.hpp"

namespace aoc {

/// Name of the generator behind every simulation draw. Uniforms are formed
/// from the top 53 bits of each 64-bit output: u = (x >> 11) * 2^-53.
inline constexpr std::string_view kRngName = "mt19937_64";

struct SimConfig {
  SchemeKind scheme;
  PerVector p;
  /// Slots for the TDMA schemes, rounds for FDMA.
  std::uint64_t horizon;
  std::uint64_t seed;
  /// Device transmission order, 1-based. Empty means 1..N. Ignored by FDMA.
  std::vector<std::size_t> order;
};

struct SimResult {
  AocTrace trace;
  double avg_aoc;
  std::size_t collections;
  /// 95% half-width from batch means over renewal intervals.
  double ci_halfwidth;
  std::string_view rng = kRngName;
};

/// Slot-level simulation in native units (slots or rounds).
SimResult simulate(const SimConfig& config);

/// Same run with the trace scaled to milliseconds before integration.
SimResult simulate_ms(const SimConfig& config, const TimingModel& timing);

struct BatchMeans {
  double halfwidth;
  std::size_t batches;
};

/// Batch-means confidence half-width for integrate_trace(trace). Renewal
/// intervals are split into 20 equal batches (leftovers join no batch); when
/// the trace has fewer than 40 events the first batch is discarded. With a
/// single interval the half-width is +infinity.
BatchMeans batch_means_ci(const AocTrace& trace);

}  // namespace aoc
