#pragma once

#include "aoc/domain.hpp"

namespace aoc {

/// PHY parameters of one status-update link. Defaults are the experimental
/// TDMA profile: 10 MHz, 96-bit status packets at rate 1/2, 160-sample
/// reduced preamble (long training sequence only), 64-point FFT with a
/// 16-sample cyclic prefix, 48 data subcarriers and a 16 us guard interval.
/// The ACK carries an 8-bit device id and a 16-bit ACK field.
struct PhyProfile {
  double bandwidth_hz = 10e6;
  int preamble_samples = 160;
  int payload_bits = 96;
  int code_rate_inv = 2;
  int data_subcarriers = 48;
  int fft_size = 64;
  int cp_samples = 16;
  double gi_ms = 0.016;
  int ack_payload_bits = 24;
  int num_devices = 6;

  static PhyProfile tdma_defaults() { return {}; }
  /// One user's FDMA sub-channel: 48 data subcarriers split over 6 devices.
  static PhyProfile fdma_defaults() {
    PhyProfile p;
    p.data_subcarriers = 8;
    return p;
  }

  /// Throws InvalidArgument on non-positive counts, negative payloads or GI,
  /// or more data subcarriers than FFT bins.
  void validate() const;
};

/// Duration of a frame of `coded_bits` behind the reduced preamble, in ms.
/// Symbols per frame use ceiling division by the data subcarriers.
double frame_duration_ms(const PhyProfile& phy, long coded_bits);

double status_duration_ms(const PhyProfile& phy);
double ack_duration_ms(const PhyProfile& phy);
/// Status packet + ACK + two guard intervals.
double tdma_slot_ms(const PhyProfile& phy);
/// Status packet + one guard interval; FDMA needs no per-round ACK.
double fdma_round_ms(const PhyProfile& phy);

/// Overhead-free comparison: one FDMA round lasts N TDMA slots.
TimingModel idealized_timing(int n, double t_td);

/// Slot and round durations of the default TDMA and FDMA profiles
/// (0.104 ms and 0.224 ms).
TimingModel experimental_timing();

}  // namespace aoc
