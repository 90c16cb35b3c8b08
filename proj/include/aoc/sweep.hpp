#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "aoc/domain.hpp"

namespace aoc {

/// Measured PERs of one (SNR, scheme) operating point.
struct PerTableEntry {
  double snr_db;
  SchemeKind scheme;
  PerVector p;
};

/// Entries sorted by (snr_db, scheme), one per key.
class PerTable {
 public:
  /// Parses `snr_db,scheme,device_id,per` text. The token `tdma` expands to
  /// both TDMA schemes. Errors name the offending line.
  static PerTable parse(std::istream& in);
  static PerTable load(const std::filesystem::path& path);
  /// Same PER vector for all three schemes at one SNR.
  static PerTable uniform(const PerVector& p, double snr_db = 0.0);

  std::span<const PerTableEntry> entries() const noexcept { return entries_; }

 private:
  std::vector<PerTableEntry> entries_;
};

inline PerTable load_per_table(const std::filesystem::path& path) { return PerTable::load(path); }

enum class Mode { Theory, Simulation };
std::string_view to_token(Mode mode) noexcept;

struct ModeSet {
  bool theory = true;
  bool simulation = true;
};

struct SweepRow {
  double snr_db;
  SchemeKind scheme;
  Mode mode;
  double avg_aoc_ms;
  double ci_halfwidth_ms;
  std::uint64_t seed;
  /// 1-based index into the order list of an order study; 0 elsewhere.
  std::size_t order = 0;
};

/// Per-point simulation seed: master XOR a fixed 64-bit mix of the row key.
std::uint64_t derive_seed(std::uint64_t master, double snr_db, SchemeKind scheme,
                          std::size_t order = 0);

/// One theory and/or simulation row per table entry, sorted by
/// (snr_db, scheme, mode). Simulation points run concurrently.
std::vector<SweepRow> run_sweep(const PerTable& table, const TimingModel& timing, ModeSet modes,
                                std::uint64_t horizon, std::uint64_t seed);

/// TDMA-NR and TDMA-R rows for every transmission order. Theory uses the
/// permuted PER vector, simulation passes the order to the simulator.
std::vector<SweepRow> run_order_study(const PerVector& p,
                                      const std::vector<std::vector<std::size_t>>& orders,
                                      const TimingModel& timing, std::uint64_t horizon,
                                      std::uint64_t seed, ModeSet modes = {});

/// Orders 1..3 of the six-device experiments: weakest device (6) last, first,
/// and in the middle.
std::vector<std::vector<std::size_t>> reference_orders();

/// Six significant digits in fixed notation; "inf" for infinity.
std::string format_sig6(double value);

/// Header `snr_db,scheme,mode,avg_aoc_ms,ci_halfwidth_ms,seed`, plus a
/// trailing `order` column when any row belongs to an order study.
void emit_rows(std::span<const SweepRow> rows, std::ostream& out);
void emit_rows(std::span<const SweepRow> rows, const std::filesystem::path& path);

/// Reads back what emit_rows wrote.
std::vector<SweepRow> parse_rows(std::istream& in);

}  // namespace aoc
