// aoc_cli: theory, simulation, sweeps and transmission-order studies of the
// average age of collection. Links only the C interface of libaoc.
#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoc/aoc.h"

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(aoc_status s) {
  if (s != AOC_OK) throw CliError(aoc_last_error());
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using PerVectorPtr = std::unique_ptr<aoc_per_vector, Deleter<aoc_per_vector, aoc_per_vector_destroy>>;
using PerTablePtr = std::unique_ptr<aoc_per_table, Deleter<aoc_per_table, aoc_per_table_destroy>>;
using RowsPtr = std::unique_ptr<aoc_rows, Deleter<aoc_rows, aoc_rows_destroy>>;

struct Options {
  std::string per_table;
  std::vector<double> p;
  int n = 0;
  std::optional<double> t_td;
  std::optional<double> t_fd;
  bool idealized = false;
  std::uint64_t horizon = 1000000;
  std::uint64_t seed = 1;
  std::string out;
  std::vector<std::string> orders;
  bool theory_only = false;

  // PHY overrides for `timing`.
  aoc_phy_profile tdma_phy{};
  int fdma_subcarriers = 8;
};

PerVectorPtr inline_vector(const Options& o) {
  if (o.p.empty()) throw CliError("no PER input: pass --per-table or --p");
  std::vector<double> probs = o.p;
  if (o.n > 0 && probs.size() == 1) probs.assign(static_cast<std::size_t>(o.n), probs.front());
  if (o.n > 0 && probs.size() != static_cast<std::size_t>(o.n)) {
    throw CliError("--p lists " + std::to_string(probs.size()) + " values but --n is " +
                   std::to_string(o.n));
  }
  aoc_per_vector* pv = nullptr;
  check(aoc_per_vector_create(probs.data(), probs.size(), &pv));
  return PerVectorPtr(pv);
}

PerTablePtr input_table(const Options& o) {
  aoc_per_table* t = nullptr;
  if (!o.per_table.empty()) {
    if (!o.p.empty()) throw CliError("--per-table and --p are mutually exclusive");
    check(aoc_per_table_load(o.per_table.c_str(), &t));
  } else {
    const PerVectorPtr pv = inline_vector(o);
    check(aoc_per_table_uniform(pv.get(), 0.0, &t));
  }
  return PerTablePtr(t);
}

// Experimental slot/round durations unless overridden; --idealized sets
// T_FD = N * T_TD.
aoc_timing resolve_timing(const Options& o, std::size_t devices) {
  aoc_timing t{};
  check(aoc_experimental_timing(&t));
  if (o.t_td) t.tdma_slot_ms = *o.t_td;
  if (o.t_fd) t.fdma_round_ms = *o.t_fd;
  if (o.idealized) {
    if (o.t_fd) throw CliError("--idealized and --t-fd are mutually exclusive");
    check(aoc_idealized_timing(static_cast<int>(devices), t.tdma_slot_ms, &t));
  }
  aoc_timing checked{};
  check(aoc_timing_make(t.tdma_slot_ms, t.fdma_round_ms, &checked));
  return checked;
}

std::size_t common_device_count(const aoc_per_table* t, int n_flag) {
  std::size_t n = n_flag > 0 ? static_cast<std::size_t>(n_flag) : 0;
  for (std::size_t i = 0; i < aoc_per_table_size(t); ++i) {
    const std::size_t d = aoc_per_table_devices(t, i);
    if (n == 0) n = d;
    if (d != n) throw CliError("--idealized needs the same device count in every table entry");
  }
  return n;
}

void emit(const aoc_rows* rows, const Options& o) {
  check(aoc_rows_emit(rows, o.out.empty() ? nullptr : o.out.c_str()));
}

void run_table_command(const Options& o, int modes) {
  const PerTablePtr table = input_table(o);
  const std::size_t n = o.idealized ? common_device_count(table.get(), o.n) : 1;
  const aoc_timing timing = resolve_timing(o, n);
  aoc_rows* rows = nullptr;
  check(aoc_run_sweep(table.get(), &timing, modes, o.horizon, o.seed, &rows));
  const RowsPtr guard(rows);
  emit(rows, o);
}

std::vector<std::size_t> parse_order(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw CliError("bad --order entry '" + text + "'");
    }
  }
  return out;
}

void run_orders(const Options& o) {
  const PerVectorPtr pv = inline_vector(o);
  const std::size_t n = aoc_per_vector_size(pv.get());
  std::vector<std::size_t> flat;
  std::size_t count = 0;
  if (o.orders.empty()) {
    if (n != 6) throw CliError("default orders need 6 devices; pass --order for other sizes");
    flat = {1, 2, 3, 4, 5, 6, 6, 1, 2, 3, 4, 5, 1, 2, 3, 6, 4, 5};
    count = 3;
  } else {
    for (const auto& text : o.orders) {
      const auto order = parse_order(text);
      if (order.size() != n) throw CliError("--order '" + text + "' does not list every device");
      flat.insert(flat.end(), order.begin(), order.end());
      ++count;
    }
  }
  const aoc_timing timing = resolve_timing(o, n);
  const int modes = o.theory_only ? AOC_MODE_THEORY : (AOC_MODE_THEORY | AOC_MODE_SIMULATION);
  aoc_rows* rows = nullptr;
  check(aoc_run_order_study(pv.get(), flat.data(), count, &timing, modes, o.horizon, o.seed, &rows));
  const RowsPtr guard(rows);
  emit(rows, o);
}

void run_timing(const Options& o) {
  aoc_phy_profile tdma = o.tdma_phy;
  aoc_phy_profile fdma = tdma;
  fdma.data_subcarriers = o.fdma_subcarriers;
  double status_td = 0, ack = 0, slot = 0, status_fd = 0, round = 0;
  check(aoc_status_duration_ms(&tdma, &status_td));
  check(aoc_ack_duration_ms(&tdma, &ack));
  check(aoc_tdma_slot_ms(&tdma, &slot));
  check(aoc_status_duration_ms(&fdma, &status_fd));
  check(aoc_fdma_round_ms(&fdma, &round));

  std::ostringstream text;
  text.precision(6);
  text << "quantity,ms\n"
       << "tdma_status," << status_td << '\n'
       << "tdma_ack," << ack << '\n'
       << "tdma_slot," << slot << '\n'
       << "fdma_status," << status_fd << '\n'
       << "fdma_round," << round << '\n';
  if (o.idealized) {
    aoc_timing ideal{};
    const int n = o.n > 0 ? o.n : tdma.num_devices;
    check(aoc_idealized_timing(n, o.t_td.value_or(slot), &ideal));
    text << "idealized_fdma_round," << ideal.fdma_round_ms << '\n';
  }
  if (o.out.empty()) {
    std::cout << text.str();
  } else {
    FILE* f = std::fopen(o.out.c_str(), "wb");
    if (!f) throw CliError("cannot open '" + o.out + "' for writing");
    const std::string s = text.str();
    const bool ok = std::fwrite(s.data(), 1, s.size(), f) == s.size();
    if (std::fclose(f) != 0 || !ok) throw CliError("failed to write '" + o.out + "'");
  }
}

void add_input_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--per-table", o.per_table, "CSV with header snr_db,scheme,device_id,per");
  cmd->add_option("--p", o.p, "Inline PER list, comma separated")->delimiter(',');
  cmd->add_option("--n", o.n, "Device count (replicates a single --p value)")->check(CLI::PositiveNumber);
}

void add_timing_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--t-td", o.t_td, "TDMA slot duration in ms (default 0.104)");
  cmd->add_option("--t-fd", o.t_fd, "FDMA round duration in ms (default 0.224)");
  cmd->add_flag("--idealized", o.idealized, "Set the FDMA round to N TDMA slots");
}

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--horizon", o.horizon, "Slots (TDMA) or rounds (FDMA) per simulation")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--out", o.out, "Output CSV path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average age of collection for TDMA-NR, TDMA-R and FDMA status updates"};
  app.require_subcommand(1);
  Options o;
  aoc_phy_profile_tdma_defaults(&o.tdma_phy);

  auto* theory = app.add_subcommand("theory", "Closed-form average AoC");
  auto* simulate = app.add_subcommand("simulate", "Slot-level simulation");
  auto* sweep = app.add_subcommand("sweep", "Theory and simulation rows for every table entry");
  for (auto* cmd : {theory, simulate, sweep}) {
    add_input_flags(cmd, o);
    add_timing_flags(cmd, o);
    add_run_flags(cmd, o);
  }

  auto* orders = app.add_subcommand("orders", "TDMA transmission-order study");
  add_input_flags(orders, o);
  add_timing_flags(orders, o);
  add_run_flags(orders, o);
  orders->add_option("--order", o.orders, "Permutation of 1..N, comma separated (repeatable)");
  orders->add_flag("--theory-only", o.theory_only, "Skip simulation rows");

  auto* timing = app.add_subcommand("timing", "Slot and round durations from PHY parameters");
  timing->add_option("--bandwidth-hz", o.tdma_phy.bandwidth_hz, "Sample rate");
  timing->add_option("--preamble-samples", o.tdma_phy.preamble_samples, "Reduced preamble length");
  timing->add_option("--payload-bits", o.tdma_phy.payload_bits, "Status payload bits before coding");
  timing->add_option("--ack-bits", o.tdma_phy.ack_payload_bits, "ACK payload bits before coding");
  timing->add_option("--cp-samples", o.tdma_phy.cp_samples, "Cyclic prefix length");
  timing->add_option("--gi-ms", o.tdma_phy.gi_ms, "Guard interval in ms");
  timing->add_option("--tdma-subcarriers", o.tdma_phy.data_subcarriers, "TDMA data subcarriers");
  timing->add_option("--fdma-subcarriers", o.fdma_subcarriers, "Data subcarriers per FDMA user");
  timing->add_option("--n", o.n, "Device count for --idealized");
  timing->add_option("--t-td", o.t_td, "TDMA slot for --idealized (default: computed)");
  timing->add_flag("--idealized", o.idealized, "Also print T_FD = N * T_TD");
  timing->add_option("--out", o.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*theory) run_table_command(o, AOC_MODE_THEORY);
    else if (*simulate) run_table_command(o, AOC_MODE_SIMULATION);
    else if (*sweep) run_table_command(o, AOC_MODE_THEORY | AOC_MODE_SIMULATION);
    else if (*orders) run_orders(o);
    else if (*timing) run_timing(o);
  } catch (const std::exception& e) {
    std::cerr << "aoc_cli: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
