#include "aoc/sim.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "aoc/error.hpp"

namespace aoc {

namespace {

constexpr std::size_t kBatches = 20;
constexpr double kConfidence = 0.95;

class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::size_t> resolve_order(const SimConfig& cfg) {
  std::vector<std::size_t> order = cfg.order;
  if (order.empty()) {
    order.resize(cfg.p.size());
    std::iota(order.begin(), order.end(), std::size_t{1});
  }
  validate_order(order, cfg.p.size());
  return order;
}

// Per-slot error probability in transmission order.
std::vector<double> scheduled_per(const SimConfig& cfg) {
  std::vector<double> out;
  for (std::size_t dev : resolve_order(cfg)) out.push_back(cfg.p[dev - 1]);
  return out;
}

std::vector<CollectionEvent> run_tdma_nr(const SimConfig& cfg, UniformSource& rng) {
  const std::vector<double> per = scheduled_per(cfg);
  const std::size_t n = per.size();
  const double reset = static_cast<double>(n);
  std::vector<CollectionEvent> events;
  std::size_t pos = 0;
  for (std::uint64_t slot = 0; slot < cfg.horizon; ++slot) {
    if (rng.next() < per[pos]) {
      pos = 0;  // every device regenerates; device order[1] goes next slot
      continue;
    }
    if (++pos == n) {
      events.push_back({static_cast<double>(slot + 1), reset});
      pos = 0;
    }
  }
  return events;
}

std::vector<CollectionEvent> run_tdma_r(const SimConfig& cfg, UniformSource& rng) {
  const std::vector<double> per = scheduled_per(cfg);
  const std::size_t n = per.size();
  std::vector<CollectionEvent> events;
  std::size_t pos = 0;
  std::uint64_t generated_at = 0;  // start of the first device's current attempt
  for (std::uint64_t slot = 0; slot < cfg.horizon; ++slot) {
    if (rng.next() < per[pos]) {
      if (pos == 0) generated_at = slot + 1;  // fresh batch for the next attempt
      continue;                               // later devices retransmit
    }
    if (++pos == n) {
      events.push_back({static_cast<double>(slot + 1), static_cast<double>(slot + 1 - generated_at)});
      pos = 0;
      generated_at = slot + 1;
    }
  }
  return events;
}

std::vector<CollectionEvent> run_fdma(const SimConfig& cfg, UniformSource& rng) {
  std::vector<CollectionEvent> events;
  const auto per = cfg.p.probs();
  for (std::uint64_t round = 0; round < cfg.horizon; ++round) {
    bool all = true;
    for (double p : per) {
      if (rng.next() < p) all = false;
    }
    if (all) events.push_back({static_cast<double>(round + 1), 1.0});
  }
  return events;
}

SimResult finish(AocTrace trace) {
  if (trace.size() < 2) throw Error(Errc::InsufficientData, "insufficient collections");
  const double avg = integrate_trace(trace);
  const BatchMeans ci = batch_means_ci(trace);
  const std::size_t count = trace.size();
  return SimResult{std::move(trace), avg, count, ci.halfwidth};
}

}  // namespace

BatchMeans batch_means_ci(const AocTrace& trace) {
  const auto ev = trace.events();
  if (ev.size() < 2) throw Error(Errc::InsufficientData, "insufficient renewal intervals");
  const std::size_t intervals = ev.size() - 1;
  if (intervals < 2) return {std::numeric_limits<double>::infinity(), 1};

  // Short traces use one interval per batch.
  const std::size_t batches = std::min(kBatches, intervals);
  const std::size_t per_batch = intervals / batches;
  const std::size_t skip = (ev.size() < 2 * kBatches && batches > 2) ? 1 : 0;

  std::vector<double> ratios;
  for (std::size_t b = skip; b < batches; ++b) {
    double area = 0.0;
    double span = 0.0;
    for (std::size_t k = b * per_batch; k < (b + 1) * per_batch; ++k) {
      const double g = ev[k + 1].completion_time - ev[k].completion_time;
      area += ev[k].reset_age * g + 0.5 * g * g;
      span += g;
    }
    ratios.push_back(area / span);
  }

  const double m = static_cast<double>(ratios.size());
  const double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / m;
  double ss = 0.0;
  for (double r : ratios) ss += (r - mean) * (r - mean);
  double sd = std::sqrt(ss / (m - 1.0));
  if (sd <= 1e-12 * std::abs(mean)) sd = 0.0;
  const boost::math::students_t dist(m - 1.0);
  const double t = boost::math::quantile(boost::math::complement(dist, (1.0 - kConfidence) / 2.0));
  return {t * sd / std::sqrt(m), ratios.size()};
}

SimResult simulate(const SimConfig& config) {
  if (config.horizon < 1) throw Error(Errc::InvalidArgument, "horizon must be at least 1");
  if (config.scheme != SchemeKind::Fdma) resolve_order(config);
  UniformSource rng(config.seed);
  std::vector<CollectionEvent> events;
  TimeUnit unit = TimeUnit::Slots;
  switch (config.scheme) {
    case SchemeKind::TdmaNr: events = run_tdma_nr(config, rng); break;
    case SchemeKind::TdmaR: events = run_tdma_r(config, rng); break;
    case SchemeKind::Fdma:
      events = run_fdma(config, rng);
      unit = TimeUnit::Rounds;
      break;
  }
  return finish(AocTrace::make(std::move(events), unit));
}

SimResult simulate_ms(const SimConfig& config, const TimingModel& timing) {
  SimResult native = simulate(config);
  return finish(native.trace.scaled(timing.unit_ms(config.scheme), TimeUnit::Ms));
}

}  // namespace aoc
