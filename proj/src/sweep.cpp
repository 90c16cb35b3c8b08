#include "aoc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "aoc/analysis.hpp"
#include "aoc/error.hpp"
#include "aoc/sim.hpp"

namespace aoc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Runs tasks on a small pool; each task writes only its own slot, so the
// result order never depends on scheduling.
void run_parallel(std::vector<std::function<void()>>& tasks) {
  const std::size_t workers =
      std::min<std::size_t>(tasks.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(tasks.size());
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

auto row_key(const SweepRow& r) { return std::tuple(r.snr_db, r.order, r.scheme, r.mode); }

void sort_rows(std::vector<SweepRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return row_key(a) < row_key(b); });
}

}  // namespace

std::string_view to_token(Mode mode) noexcept {
  return mode == Mode::Theory ? "theory" : "simulation";
}

std::uint64_t derive_seed(std::uint64_t master, double snr_db, SchemeKind scheme, std::size_t order) {
  if (snr_db == 0.0) snr_db = 0.0;
  std::uint64_t h = splitmix64(std::bit_cast<std::uint64_t>(snr_db));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(scheme) + 1));
  h = splitmix64(h ^ static_cast<std::uint64_t>(order));
  return master ^ h;
}

std::vector<SweepRow> run_sweep(const PerTable& table, const TimingModel& timing, ModeSet modes,
                                std::uint64_t horizon, std::uint64_t seed) {
  std::vector<SweepRow> rows;
  std::vector<std::function<void()>> sims;
  const auto entries = table.entries();
  if (modes.theory) {
    for (const auto& e : entries) {
      rows.push_back({e.snr_db, e.scheme, Mode::Theory, avg_aoc_ms(e.scheme, e.p, timing), 0.0, 0});
    }
  }
  if (modes.simulation) {
    const std::size_t base = rows.size();
    rows.resize(base + entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      sims.push_back([&, i] {
        const auto& e = entries[i];
        const std::uint64_t s = derive_seed(seed, e.snr_db, e.scheme);
        const SimResult r = simulate_ms(SimConfig{e.scheme, e.p, horizon, s, {}}, timing);
        rows[base + i] = {e.snr_db, e.scheme, Mode::Simulation, r.avg_aoc, r.ci_halfwidth, s};
      });
    }
    run_parallel(sims);
  }
  sort_rows(rows);
  return rows;
}

std::vector<SweepRow> run_order_study(const PerVector& p,
                                      const std::vector<std::vector<std::size_t>>& orders,
                                      const TimingModel& timing, std::uint64_t horizon,
                                      std::uint64_t seed, ModeSet modes) {
  for (const auto& o : orders) validate_order(o, p.size());
  constexpr SchemeKind kSchemes[] = {SchemeKind::TdmaNr, SchemeKind::TdmaR};

  std::vector<SweepRow> rows;
  std::vector<std::function<void()>> sims;
  for (std::size_t k = 0; k < orders.size(); ++k) {
    const PerVector permuted = p.permuted(orders[k]);
    for (SchemeKind s : kSchemes) {
      if (modes.theory) {
        rows.push_back({0.0, s, Mode::Theory, avg_aoc_ms(s, permuted, timing), 0.0, 0, k + 1});
      }
    }
  }
  if (modes.simulation) {
    const std::size_t base = rows.size();
    rows.resize(base + orders.size() * 2);
    for (std::size_t k = 0; k < orders.size(); ++k) {
      for (std::size_t j = 0; j < 2; ++j) {
        sims.push_back([&, k, j] {
          const SchemeKind s = kSchemes[j];
          const std::uint64_t sd = derive_seed(seed, 0.0, s, k + 1);
          const SimResult r = simulate_ms(SimConfig{s, p, horizon, sd, orders[k]}, timing);
          rows[base + 2 * k + j] = {0.0, s, Mode::Simulation, r.avg_aoc, r.ci_halfwidth, sd, k + 1};
        });
      }
    }
    run_parallel(sims);
  }
  sort_rows(rows);
  return rows;
}

std::vector<std::vector<std::size_t>> reference_orders() {
  return {{1, 2, 3, 4, 5, 6}, {6, 1, 2, 3, 4, 5}, {1, 2, 3, 6, 4, 5}};
}

std::string format_sig6(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  int decimals = 5;
  if (value != 0.0) {
    const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(value))));
    decimals = std::max(0, 5 - magnitude);
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

void emit_rows(std::span<const SweepRow> rows, std::ostream& out) {
  const bool with_order =
      std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.order != 0; });
  out << "snr_db,scheme,mode,avg_aoc_ms,ci_halfwidth_ms,seed" << (with_order ? ",order" : "") << '\n';
  for (const auto& r : rows) {
    out << format_sig6(r.snr_db) << ',' << to_token(r.scheme) << ',' << to_token(r.mode) << ','
        << format_sig6(r.avg_aoc_ms) << ',' << format_sig6(r.ci_halfwidth_ms) << ',' << r.seed;
    if (with_order) out << ',' << r.order;
    out << '\n';
  }
  if (!out) throw Error(Errc::Io, "failed to write result rows");
}

void emit_rows(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot open '" + path.string() + "' for writing");
  emit_rows(rows, out);
  out.flush();
  if (!out) throw Error(Errc::Io, "failed to write '" + path.string() + "'");
}

std::vector<SweepRow> parse_rows(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::Parse, "missing header at line 1");
  const bool with_order = line == "snr_db,scheme,mode,avg_aoc_ms,ci_halfwidth_ms,seed,order";
  if (!with_order && line != "snr_db,scheme,mode,avg_aoc_ms,ci_halfwidth_ms,seed") {
    throw Error(Errc::Parse, "unexpected header at line 1");
  }
  std::vector<SweepRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string snr, scheme, mode, avg, ci, seed, order;
    std::getline(fields, snr, ',');
    std::getline(fields, scheme, ',');
    std::getline(fields, mode, ',');
    std::getline(fields, avg, ',');
    std::getline(fields, ci, ',');
    std::getline(fields, seed, ',');
    if (with_order) std::getline(fields, order, ',');
    const auto s = parse_scheme(scheme);
    if (!s || (mode != "theory" && mode != "simulation")) {
      throw Error(Errc::Parse, "bad row at line " + std::to_string(lineno));
    }
    try {
      rows.push_back({std::stod(snr), *s, mode == "theory" ? Mode::Theory : Mode::Simulation,
                      std::stod(avg), std::stod(ci), std::stoull(seed),
                      with_order ? std::stoull(order) : 0});
    } catch (const std::logic_error&) {
      throw Error(Errc::Parse, "bad number at line " + std::to_string(lineno));
    }
  }
  return rows;
}

}  // namespace aoc
