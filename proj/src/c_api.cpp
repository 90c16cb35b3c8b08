#include "aoc/aoc.h"

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aoc/analysis.hpp"
#include "aoc/error.hpp"
#include "aoc/mac_timing.hpp"
#include "aoc/sim.hpp"
#include "aoc/sweep.hpp"

struct aoc_per_vector {
  aoc::PerVector value;
};
struct aoc_sim_result {
  aoc::SimResult value;
};
struct aoc_per_table {
  aoc::PerTable value;
};
struct aoc_rows {
  std::vector<aoc::SweepRow> value;
};

namespace {

thread_local std::string g_last_error;

aoc_status to_status(aoc::Errc code) {
  switch (code) {
    case aoc::Errc::InvalidArgument: return AOC_ERR_INVALID_ARGUMENT;
    case aoc::Errc::UnreachableSuccess: return AOC_ERR_UNREACHABLE_SUCCESS;
    case aoc::Errc::SingularSystem: return AOC_ERR_SINGULAR_SYSTEM;
    case aoc::Errc::InsufficientData: return AOC_ERR_INSUFFICIENT_DATA;
    case aoc::Errc::Parse: return AOC_ERR_PARSE;
    case aoc::Errc::Io: return AOC_ERR_IO;
  }
  return AOC_ERR_INTERNAL;
}

template <class F>
aoc_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return AOC_OK;
  } catch (const aoc::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return AOC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return AOC_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw aoc::Error(aoc::Errc::InvalidArgument, what);
}

std::optional<aoc::SchemeKind> scheme_of(aoc_scheme s) {
  switch (s) {
    case AOC_TDMA_NR: return aoc::SchemeKind::TdmaNr;
    case AOC_TDMA_R: return aoc::SchemeKind::TdmaR;
    case AOC_FDMA: return aoc::SchemeKind::Fdma;
  }
  return std::nullopt;
}

aoc::SchemeKind require_scheme(aoc_scheme s) {
  const auto k = scheme_of(s);
  require(k.has_value(), "unknown scheme");
  return *k;
}

aoc_scheme from_scheme(aoc::SchemeKind s) {
  switch (s) {
    case aoc::SchemeKind::TdmaNr: return AOC_TDMA_NR;
    case aoc::SchemeKind::TdmaR: return AOC_TDMA_R;
    case aoc::SchemeKind::Fdma: return AOC_FDMA;
  }
  return AOC_TDMA_NR;
}

aoc::TimingModel timing_of(const aoc_timing* t) {
  require(t != nullptr, "null timing");
  return aoc::TimingModel::make(t->tdma_slot_ms, t->fdma_round_ms);
}

void store_timing(const aoc::TimingModel& m, aoc_timing* out) {
  out->tdma_slot_ms = m.tdma_slot_ms();
  out->fdma_round_ms = m.fdma_round_ms();
}

aoc::PhyProfile phy_of(const aoc_phy_profile* p) {
  require(p != nullptr, "null PHY profile");
  aoc::PhyProfile phy;
  phy.bandwidth_hz = p->bandwidth_hz;
  phy.preamble_samples = p->preamble_samples;
  phy.payload_bits = p->payload_bits;
  phy.code_rate_inv = p->code_rate_inv;
  phy.data_subcarriers = p->data_subcarriers;
  phy.fft_size = p->fft_size;
  phy.cp_samples = p->cp_samples;
  phy.gi_ms = p->gi_ms;
  phy.ack_payload_bits = p->ack_payload_bits;
  phy.num_devices = p->num_devices;
  return phy;
}

void store_phy(const aoc::PhyProfile& phy, aoc_phy_profile* out) {
  *out = aoc_phy_profile{phy.bandwidth_hz,     phy.preamble_samples, phy.payload_bits,
                         phy.code_rate_inv,    phy.data_subcarriers, phy.fft_size,
                         phy.cp_samples,       phy.gi_ms,            phy.ack_payload_bits,
                         phy.num_devices};
}

aoc::ModeSet modes_of(int modes) {
  require(modes > 0 && (modes & ~(AOC_MODE_THEORY | AOC_MODE_SIMULATION)) == 0, "bad mode mask");
  return aoc::ModeSet{(modes & AOC_MODE_THEORY) != 0, (modes & AOC_MODE_SIMULATION) != 0};
}

template <class F>
aoc_status duration(const aoc_phy_profile* phy, double* out, F f) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = f(phy_of(phy));
  });
}

}  // namespace

extern "C" {

const char* aoc_last_error(void) { return g_last_error.c_str(); }

const char* aoc_scheme_token(aoc_scheme scheme) {
  const auto k = scheme_of(scheme);
  return k ? aoc::to_token(*k).data() : "?";
}

aoc_status aoc_parse_scheme(const char* token, aoc_scheme* out) {
  return guarded([&] {
    require(token != nullptr && out != nullptr, "null argument");
    const auto k = aoc::parse_scheme(token);
    if (!k) throw aoc::Error(aoc::Errc::Parse, std::string("unknown scheme token '") + token + "'");
    *out = from_scheme(*k);
  });
}

aoc_status aoc_per_vector_create(const double* probs, size_t n, aoc_per_vector** out) {
  return guarded([&] {
    require(out != nullptr && (probs != nullptr || n == 0), "null argument");
    *out = new aoc_per_vector{aoc::PerVector::make(std::vector<double>(probs, probs + n))};
  });
}

void aoc_per_vector_destroy(aoc_per_vector* pv) { delete pv; }
size_t aoc_per_vector_size(const aoc_per_vector* pv) { return pv ? pv->value.size() : 0; }
double aoc_per_vector_get(const aoc_per_vector* pv, size_t i) {
  return pv && i < pv->value.size() ? pv->value[i] : 0.0;
}

aoc_status aoc_timing_make(double tdma_slot_ms, double fdma_round_ms, aoc_timing* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    store_timing(aoc::TimingModel::make(tdma_slot_ms, fdma_round_ms), out);
  });
}

aoc_status aoc_idealized_timing(int n, double tdma_slot_ms, aoc_timing* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    store_timing(aoc::idealized_timing(n, tdma_slot_ms), out);
  });
}

aoc_status aoc_experimental_timing(aoc_timing* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    store_timing(aoc::experimental_timing(), out);
  });
}

void aoc_phy_profile_tdma_defaults(aoc_phy_profile* out) {
  if (out) store_phy(aoc::PhyProfile::tdma_defaults(), out);
}
void aoc_phy_profile_fdma_defaults(aoc_phy_profile* out) {
  if (out) store_phy(aoc::PhyProfile::fdma_defaults(), out);
}

aoc_status aoc_status_duration_ms(const aoc_phy_profile* phy, double* out) {
  return duration(phy, out, [](const aoc::PhyProfile& p) { return aoc::status_duration_ms(p); });
}
aoc_status aoc_ack_duration_ms(const aoc_phy_profile* phy, double* out) {
  return duration(phy, out, [](const aoc::PhyProfile& p) { return aoc::ack_duration_ms(p); });
}
aoc_status aoc_tdma_slot_ms(const aoc_phy_profile* phy, double* out) {
  return duration(phy, out, [](const aoc::PhyProfile& p) { return aoc::tdma_slot_ms(p); });
}
aoc_status aoc_fdma_round_ms(const aoc_phy_profile* phy, double* out) {
  return duration(phy, out, [](const aoc::PhyProfile& p) { return aoc::fdma_round_ms(p); });
}

aoc_status aoc_solve_dense(const double* matrix, const double* rhs, size_t n, double* x) {
  return guarded([&] {
    require(matrix != nullptr && rhs != nullptr && x != nullptr && n > 0, "null argument");
    const auto sys = aoc::DenseSystem::make(std::vector<double>(matrix, matrix + n * n),
                                            std::vector<double>(rhs, rhs + n));
    const auto sol = aoc::solve_dense(sys);
    std::copy(sol.begin(), sol.end(), x);
  });
}

aoc_status aoc_hitting_moments(aoc_scheme scheme, const aoc_per_vector* pv, double* first,
                               size_t first_len, double* second_t1, double* t2s) {
  return guarded([&] {
    require(pv != nullptr && (first != nullptr || first_len == 0), "null argument");
    const auto k = require_scheme(scheme);
    require(k != aoc::SchemeKind::Fdma, "FDMA has no hitting-time chain");
    const auto m = k == aoc::SchemeKind::TdmaNr ? aoc::tdma_nr_moments(pv->value)
                                                : aoc::tdma_r_moments(pv->value);
    for (size_t i = 0; i < first_len && i < m.first.size(); ++i) first[i] = m.first[i];
    if (second_t1) *second_t1 = m.second_t1;
    if (t2s) *t2s = m.t2s;
  });
}

aoc_status aoc_fdma_gamma(const aoc_per_vector* pv, double* out) {
  return guarded([&] {
    require(pv != nullptr && out != nullptr, "null argument");
    *out = aoc::fdma_gamma(pv->value);
  });
}

aoc_status aoc_avg_aoc_units(aoc_scheme scheme, const aoc_per_vector* pv, double* out) {
  return guarded([&] {
    require(pv != nullptr && out != nullptr, "null argument");
    *out = aoc::avg_aoc_units(require_scheme(scheme), pv->value);
  });
}

aoc_status aoc_avg_aoc_ms(aoc_scheme scheme, const aoc_per_vector* pv, const aoc_timing* timing,
                          double* out) {
  return guarded([&] {
    require(pv != nullptr && out != nullptr, "null argument");
    *out = aoc::avg_aoc_ms(require_scheme(scheme), pv->value, timing_of(timing));
  });
}

aoc_status aoc_integrate_trace(const double* completion_times, const double* reset_ages, size_t n,
                               double* out) {
  return guarded([&] {
    require(out != nullptr && ((completion_times && reset_ages) || n == 0), "null argument");
    std::vector<aoc::CollectionEvent> events;
    for (size_t k = 0; k < n; ++k) events.push_back({completion_times[k], reset_ages[k]});
    *out = aoc::integrate_trace(aoc::AocTrace::make(std::move(events), aoc::TimeUnit::Slots));
  });
}

aoc_status aoc_simulate(const aoc_sim_config* config, const aoc_per_vector* pv,
                        const aoc_timing* timing, aoc_sim_result** out) {
  return guarded([&] {
    require(config != nullptr && pv != nullptr && out != nullptr, "null argument");
    require(config->order != nullptr || config->order_len == 0, "null order");
    aoc::SimConfig cfg{require_scheme(config->scheme), pv->value, config->horizon, config->seed,
                       std::vector<std::size_t>(config->order, config->order + config->order_len)};
    *out = new aoc_sim_result{timing ? aoc::simulate_ms(cfg, timing_of(timing)) : aoc::simulate(cfg)};
  });
}

void aoc_sim_result_destroy(aoc_sim_result* r) { delete r; }
double aoc_sim_result_avg(const aoc_sim_result* r) { return r ? r->value.avg_aoc : 0.0; }
double aoc_sim_result_ci_halfwidth(const aoc_sim_result* r) { return r ? r->value.ci_halfwidth : 0.0; }
size_t aoc_sim_result_collections(const aoc_sim_result* r) { return r ? r->value.collections : 0; }

aoc_unit aoc_sim_result_unit(const aoc_sim_result* r) {
  if (!r) return AOC_UNIT_SLOTS;
  switch (r->value.trace.unit()) {
    case aoc::TimeUnit::Slots: return AOC_UNIT_SLOTS;
    case aoc::TimeUnit::Rounds: return AOC_UNIT_ROUNDS;
    case aoc::TimeUnit::Ms: return AOC_UNIT_MS;
  }
  return AOC_UNIT_SLOTS;
}

const char* aoc_sim_result_rng(const aoc_sim_result* r) { return r ? r->value.rng.data() : ""; }

aoc_status aoc_sim_result_event(const aoc_sim_result* r, size_t k, double* completion_time,
                                double* reset_age) {
  return guarded([&] {
    require(r != nullptr && k < r->value.trace.size(), "event index out of range");
    const auto& e = r->value.trace.events()[k];
    if (completion_time) *completion_time = e.completion_time;
    if (reset_age) *reset_age = e.reset_age;
  });
}

aoc_status aoc_per_table_load(const char* path, aoc_per_table** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new aoc_per_table{aoc::PerTable::load(path)};
  });
}

aoc_status aoc_per_table_parse(const char* text, aoc_per_table** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    std::istringstream in(text);
    *out = new aoc_per_table{aoc::PerTable::parse(in)};
  });
}

aoc_status aoc_per_table_uniform(const aoc_per_vector* pv, double snr_db, aoc_per_table** out) {
  return guarded([&] {
    require(pv != nullptr && out != nullptr, "null argument");
    *out = new aoc_per_table{aoc::PerTable::uniform(pv->value, snr_db)};
  });
}

void aoc_per_table_destroy(aoc_per_table* t) { delete t; }
size_t aoc_per_table_size(const aoc_per_table* t) { return t ? t->value.entries().size() : 0; }
size_t aoc_per_table_devices(const aoc_per_table* t, size_t i) {
  return t && i < t->value.entries().size() ? t->value.entries()[i].p.size() : 0;
}

aoc_status aoc_run_sweep(const aoc_per_table* table, const aoc_timing* timing, int modes,
                         uint64_t horizon, uint64_t seed, aoc_rows** out) {
  return guarded([&] {
    require(table != nullptr && out != nullptr, "null argument");
    *out = new aoc_rows{aoc::run_sweep(table->value, timing_of(timing), modes_of(modes), horizon, seed)};
  });
}

aoc_status aoc_run_order_study(const aoc_per_vector* pv, const size_t* orders, size_t n_orders,
                               const aoc_timing* timing, int modes, uint64_t horizon, uint64_t seed,
                               aoc_rows** out) {
  return guarded([&] {
    require(pv != nullptr && out != nullptr && (orders != nullptr || n_orders == 0), "null argument");
    const size_t n = pv->value.size();
    std::vector<std::vector<std::size_t>> list;
    for (size_t k = 0; k < n_orders; ++k) list.emplace_back(orders + k * n, orders + (k + 1) * n);
    *out = new aoc_rows{
        aoc::run_order_study(pv->value, list, timing_of(timing), horizon, seed, modes_of(modes))};
  });
}

void aoc_rows_destroy(aoc_rows* rows) { delete rows; }
size_t aoc_rows_size(const aoc_rows* rows) { return rows ? rows->value.size() : 0; }

aoc_status aoc_rows_get(const aoc_rows* rows, size_t i, aoc_sweep_row* out) {
  return guarded([&] {
    require(rows != nullptr && out != nullptr && i < rows->value.size(), "row index out of range");
    const auto& r = rows->value[i];
    *out = aoc_sweep_row{r.snr_db,
                         from_scheme(r.scheme),
                         r.mode == aoc::Mode::Theory ? AOC_MODE_THEORY : AOC_MODE_SIMULATION,
                         r.avg_aoc_ms,
                         r.ci_halfwidth_ms,
                         r.seed,
                         r.order};
  });
}

aoc_status aoc_rows_emit(const aoc_rows* rows, const char* path) {
  return guarded([&] {
    require(rows != nullptr, "null argument");
    if (path) {
      aoc::emit_rows(rows->value, std::filesystem::path(path));
    } else {
      aoc::emit_rows(rows->value, std::cout);
      std::cout.flush();
    }
  });
}

}  // extern "C"
