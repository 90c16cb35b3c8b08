#include "aoc/domain.hpp"

#include <cmath>
#include <string>

#include "aoc/error.hpp"

namespace aoc {

std::string_view to_token(SchemeKind scheme) noexcept {
  switch (scheme) {
    case SchemeKind::TdmaNr: return "tdma-nr";
    case SchemeKind::TdmaR: return "tdma-r";
    case SchemeKind::Fdma: return "fdma";
  }
  return "?";
}

std::optional<SchemeKind> parse_scheme(std::string_view token) noexcept {
  if (token == "tdma-nr") return SchemeKind::TdmaNr;
  if (token == "tdma-r") return SchemeKind::TdmaR;
  if (token == "fdma") return SchemeKind::Fdma;
  return std::nullopt;
}

std::string_view to_token(TimeUnit unit) noexcept {
  switch (unit) {
    case TimeUnit::Slots: return "slots";
    case TimeUnit::Rounds: return "rounds";
    case TimeUnit::Ms: return "ms";
  }
  return "?";
}

PerVector PerVector::make(std::vector<double> probs) {
  if (probs.empty()) throw Error(Errc::InvalidArgument, "empty PER vector");
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (p == 1.0) {
      throw Error(Errc::UnreachableSuccess,
                  "unreachable success state: device " + std::to_string(i + 1) + " has p = 1");
    }
    if (!(p >= 0.0 && p < 1.0)) {
      throw Error(Errc::InvalidArgument,
                  "PER of device " + std::to_string(i + 1) + " outside [0, 1)");
    }
  }
  return PerVector(std::move(probs));
}

PerVector PerVector::permuted(std::span<const std::size_t> order) const {
  validate_order(order, size());
  std::vector<double> out;
  out.reserve(order.size());
  for (std::size_t dev : order) out.push_back(probs_[dev - 1]);
  return PerVector(std::move(out));
}

void validate_order(std::span<const std::size_t> order, std::size_t n) {
  if (order.size() != n) {
    throw Error(Errc::InvalidArgument, "transmission order has " + std::to_string(order.size()) +
                                           " entries, expected " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (std::size_t dev : order) {
    if (dev < 1 || dev > n || seen[dev - 1]) {
      throw Error(Errc::InvalidArgument, "transmission order is not a permutation of 1.." +
                                             std::to_string(n));
    }
    seen[dev - 1] = true;
  }
}

TimingModel TimingModel::make(double tdma_slot_ms, double fdma_round_ms) {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(tdma_slot_ms) || !ok(fdma_round_ms)) {
    throw Error(Errc::InvalidArgument, "slot and round durations must be finite and positive");
  }
  return TimingModel(tdma_slot_ms, fdma_round_ms);
}

AocTrace AocTrace::make(std::vector<CollectionEvent> events, TimeUnit unit) {
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto& e = events[k];
    if (!std::isfinite(e.completion_time) || !std::isfinite(e.reset_age) || !(e.reset_age > 0.0)) {
      throw Error(Errc::InvalidArgument, "trace event " + std::to_string(k) +
                                             " has a non-positive or non-finite age");
    }
    if (k == 0) continue;
    const auto& prev = events[k - 1];
    const double gap = e.completion_time - prev.completion_time;
    if (!(gap > 0.0)) {
      throw Error(Errc::InvalidArgument, "trace completion times must be strictly increasing");
    }
    // The age cannot drop to more than it had grown to. Allow for rounding
    // after unit scaling.
    const double grown = gap + prev.reset_age;
    if (e.reset_age > grown * (1.0 + 1e-12)) {
      throw Error(Errc::InvalidArgument, "trace event " + std::to_string(k) +
                                             " resets above the accumulated age");
    }
  }
  return AocTrace(std::move(events), unit);
}

AocTrace AocTrace::scaled(double factor, TimeUnit unit) const {
  if (!(std::isfinite(factor) && factor > 0.0)) {
    throw Error(Errc::InvalidArgument, "scale factor must be finite and positive");
  }
  std::vector<CollectionEvent> out;
  out.reserve(events_.size());
  for (const auto& e : events_) out.push_back({e.completion_time * factor, e.reset_age * factor});
  return AocTrace(std::move(out), unit);
}

double integrate_trace(const AocTrace& trace) {
  const auto ev = trace.events();
  if (ev.size() < 2) throw Error(Errc::InsufficientData, "insufficient renewal intervals");
  double area = 0.0;
  for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
    const double g = ev[k + 1].completion_time - ev[k].completion_time;
    area += ev[k].reset_age * g + 0.5 * g * g;
  }
  return area / (ev.back().completion_time - ev.front().completion_time);
}

}  // namespace aoc
