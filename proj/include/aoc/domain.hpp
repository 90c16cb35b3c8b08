#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace aoc {

enum class SchemeKind { TdmaNr, TdmaR, Fdma };

/// Tokens used in PER tables and result files: tdma-nr, tdma-r, fdma.
std::string_view to_token(SchemeKind scheme) noexcept;
std::optional<SchemeKind> parse_scheme(std::string_view token) noexcept;

/// Unit a trace or an average is expressed in. Slots are TDMA slots, rounds
/// are FDMA rounds.
enum class TimeUnit { Slots, Rounds, Ms };

std::string_view to_token(TimeUnit unit) noexcept;

/// Per-device packet error probabilities, in transmission-index order.
/// Every entry lies in [0, 1); a device with p = 1 never delivers and would
/// make every average diverge.
class PerVector {
 public:
  static PerVector make(std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  /// Returns the vector seen in transmission order: entry k is the PER of
  /// device order[k] (1-based device ids).
  PerVector permuted(std::span<const std::size_t> order) const;

  friend bool operator==(const PerVector&, const PerVector&) = default;

 private:
  explicit PerVector(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

/// Throws InvalidArgument unless `order` is a permutation of 1..n.
void validate_order(std::span<const std::size_t> order, std::size_t n);

/// Slot duration of the TDMA schemes and round duration of FDMA, in ms.
class TimingModel {
 public:
  static TimingModel make(double tdma_slot_ms, double fdma_round_ms);

  double tdma_slot_ms() const noexcept { return tdma_slot_ms_; }
  double fdma_round_ms() const noexcept { return fdma_round_ms_; }

  /// Duration of one native unit (slot or round) of `scheme`.
  double unit_ms(SchemeKind scheme) const noexcept {
    return scheme == SchemeKind::Fdma ? fdma_round_ms_ : tdma_slot_ms_;
  }

 private:
  TimingModel(double td, double fd) : tdma_slot_ms_(td), fdma_round_ms_(fd) {}
  double tdma_slot_ms_;
  double fdma_round_ms_;
};

struct CollectionEvent {
  double completion_time;
  double reset_age;
};

/// Successful-collection events of one run. Between events the age grows
/// with unit slope; at each event it drops to `reset_age`.
class AocTrace {
 public:
  static AocTrace make(std::vector<CollectionEvent> events, TimeUnit unit);

  std::span<const CollectionEvent> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  TimeUnit unit() const noexcept { return unit_; }

  /// Multiplies every time and age by `factor` (> 0) and relabels the unit.
  AocTrace scaled(double factor, TimeUnit unit) const;

 private:
  AocTrace(std::vector<CollectionEvent> events, TimeUnit unit)
      : events_(std::move(events)), unit_(unit) {}
  std::vector<CollectionEvent> events_;
  TimeUnit unit_;
};

/// Hitting-time moments of the all-delivered state, in slots.
/// `first[i]` is the mean hitting time from state i + 1.
struct HittingMoments {
  std::vector<double> first;
  double second_t1 = 0.0;
  double t2s = 0.0;
};

/// Exact time average of the sawtooth between the first and last events:
/// sum over gaps g_k of (reset_age_k * g_k + g_k^2 / 2), divided by the span.
double integrate_trace(const AocTrace& trace);

}  // namespace aoc
