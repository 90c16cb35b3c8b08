/* C interface to the age-of-collection library.
 *
 * Every fallible call returns an aoc_status; on failure a one-line message
 * for the calling thread is available from aoc_last_error(). Handles are
 * opaque, owned by the caller, and released with the matching _destroy
 * function. Handles are immutable once created and may be shared between
 * threads. */
#ifndef AOC_AOC_H
#define AOC_AOC_H

#include <stddef.h>
#include <stdint.h>

#if defined(AOC_BUILDING_LIBRARY)
#define AOC_API __attribute__((visibility("default")))
#else
#define AOC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aoc_status {
  AOC_OK = 0,
  AOC_ERR_INVALID_ARGUMENT = 1,
  AOC_ERR_UNREACHABLE_SUCCESS = 2, /* some device has p = 1 */
  AOC_ERR_SINGULAR_SYSTEM = 3,
  AOC_ERR_INSUFFICIENT_DATA = 4, /* fewer than two collections */
  AOC_ERR_PARSE = 5,
  AOC_ERR_IO = 6,
  AOC_ERR_INTERNAL = 7
} aoc_status;

typedef enum aoc_scheme { AOC_TDMA_NR = 0, AOC_TDMA_R = 1, AOC_FDMA = 2 } aoc_scheme;

typedef enum aoc_unit { AOC_UNIT_SLOTS = 0, AOC_UNIT_ROUNDS = 1, AOC_UNIT_MS = 2 } aoc_unit;

enum { AOC_MODE_THEORY = 1, AOC_MODE_SIMULATION = 2 };

typedef struct aoc_per_vector aoc_per_vector;
typedef struct aoc_sim_result aoc_sim_result;
typedef struct aoc_per_table aoc_per_table;
typedef struct aoc_rows aoc_rows;

typedef struct aoc_timing {
  double tdma_slot_ms;
  double fdma_round_ms;
} aoc_timing;

typedef struct aoc_phy_profile {
  double bandwidth_hz;
  int preamble_samples;
  int payload_bits;
  int code_rate_inv;
  int data_subcarriers;
  int fft_size;
  int cp_samples;
  double gi_ms;
  int ack_payload_bits;
  int num_devices;
} aoc_phy_profile;

typedef struct aoc_sim_config {
  aoc_scheme scheme;
  uint64_t horizon; /* slots (TDMA) or rounds (FDMA) */
  uint64_t seed;
  const size_t* order; /* 1-based transmission order, or NULL for 1..N */
  size_t order_len;
} aoc_sim_config;

typedef struct aoc_sweep_row {
  double snr_db;
  aoc_scheme scheme;
  int mode; /* AOC_MODE_THEORY or AOC_MODE_SIMULATION */
  double avg_aoc_ms;
  double ci_halfwidth_ms;
  uint64_t seed;
  size_t order; /* 0 outside order studies */
} aoc_sweep_row;

AOC_API const char* aoc_last_error(void);
AOC_API const char* aoc_scheme_token(aoc_scheme scheme);
AOC_API aoc_status aoc_parse_scheme(const char* token, aoc_scheme* out);

/* PER vectors */
AOC_API aoc_status aoc_per_vector_create(const double* probs, size_t n, aoc_per_vector** out);
AOC_API void aoc_per_vector_destroy(aoc_per_vector* pv);
AOC_API size_t aoc_per_vector_size(const aoc_per_vector* pv);
AOC_API double aoc_per_vector_get(const aoc_per_vector* pv, size_t i);

/* Timing */
AOC_API aoc_status aoc_timing_make(double tdma_slot_ms, double fdma_round_ms, aoc_timing* out);
AOC_API aoc_status aoc_idealized_timing(int n, double tdma_slot_ms, aoc_timing* out);
AOC_API aoc_status aoc_experimental_timing(aoc_timing* out);
AOC_API void aoc_phy_profile_tdma_defaults(aoc_phy_profile* out);
AOC_API void aoc_phy_profile_fdma_defaults(aoc_phy_profile* out);
AOC_API aoc_status aoc_status_duration_ms(const aoc_phy_profile* phy, double* out);
AOC_API aoc_status aoc_ack_duration_ms(const aoc_phy_profile* phy, double* out);
AOC_API aoc_status aoc_tdma_slot_ms(const aoc_phy_profile* phy, double* out);
AOC_API aoc_status aoc_fdma_round_ms(const aoc_phy_profile* phy, double* out);

/* Analysis */
/* Solves the n x n row-major system matrix * x = rhs into x. */
AOC_API aoc_status aoc_solve_dense(const double* matrix, const double* rhs, size_t n, double* x);
/* Hitting-time moments of a TDMA scheme. `first` receives min(first_len, N)
 * means; second_t1 and t2s may be NULL. FDMA is rejected. */
AOC_API aoc_status aoc_hitting_moments(aoc_scheme scheme, const aoc_per_vector* pv, double* first,
                                       size_t first_len, double* second_t1, double* t2s);
AOC_API aoc_status aoc_fdma_gamma(const aoc_per_vector* pv, double* out);
/* Average AoC in slots (TDMA) or rounds (FDMA). */
AOC_API aoc_status aoc_avg_aoc_units(aoc_scheme scheme, const aoc_per_vector* pv, double* out);
AOC_API aoc_status aoc_avg_aoc_ms(aoc_scheme scheme, const aoc_per_vector* pv,
                                  const aoc_timing* timing, double* out);
/* Time average of a sawtooth trace between its first and last events. */
AOC_API aoc_status aoc_integrate_trace(const double* completion_times, const double* reset_ages,
                                       size_t n, double* out);

/* Simulation. `timing` NULL keeps native units, otherwise the result is in ms. */
AOC_API aoc_status aoc_simulate(const aoc_sim_config* config, const aoc_per_vector* pv,
                                const aoc_timing* timing, aoc_sim_result** out);
AOC_API void aoc_sim_result_destroy(aoc_sim_result* r);
AOC_API double aoc_sim_result_avg(const aoc_sim_result* r);
AOC_API double aoc_sim_result_ci_halfwidth(const aoc_sim_result* r);
AOC_API size_t aoc_sim_result_collections(const aoc_sim_result* r);
AOC_API aoc_unit aoc_sim_result_unit(const aoc_sim_result* r);
AOC_API const char* aoc_sim_result_rng(const aoc_sim_result* r);
/* Copies event k; returns AOC_ERR_INVALID_ARGUMENT when k is out of range. */
AOC_API aoc_status aoc_sim_result_event(const aoc_sim_result* r, size_t k, double* completion_time,
                                        double* reset_age);

/* PER tables */
AOC_API aoc_status aoc_per_table_load(const char* path, aoc_per_table** out);
AOC_API aoc_status aoc_per_table_parse(const char* text, aoc_per_table** out);
/* Same vector for all three schemes at one SNR. */
AOC_API aoc_status aoc_per_table_uniform(const aoc_per_vector* pv, double snr_db,
                                         aoc_per_table** out);
AOC_API void aoc_per_table_destroy(aoc_per_table* t);
AOC_API size_t aoc_per_table_size(const aoc_per_table* t);
/* Device count of entry i, 0 when out of range. */
AOC_API size_t aoc_per_table_devices(const aoc_per_table* t, size_t i);

/* Sweeps and order studies */
AOC_API aoc_status aoc_run_sweep(const aoc_per_table* table, const aoc_timing* timing, int modes,
                                 uint64_t horizon, uint64_t seed, aoc_rows** out);
/* `orders` holds n_orders permutations of 1..N back to back. */
AOC_API aoc_status aoc_run_order_study(const aoc_per_vector* pv, const size_t* orders,
                                       size_t n_orders, const aoc_timing* timing, int modes,
                                       uint64_t horizon, uint64_t seed, aoc_rows** out);
AOC_API void aoc_rows_destroy(aoc_rows* rows);
AOC_API size_t aoc_rows_size(const aoc_rows* rows);
AOC_API aoc_status aoc_rows_get(const aoc_rows* rows, size_t i, aoc_sweep_row* out);
/* Writes the CSV to `path`, or to stdout when path is NULL. */
AOC_API aoc_status aoc_rows_emit(const aoc_rows* rows, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* AOC_AOC_H */
