#include "aoc/mac_timing.hpp"

#include <cmath>

#include "aoc/error.hpp"

namespace aoc {

void PhyProfile::validate() const {
  const bool counts_ok = preamble_samples > 0 && code_rate_inv > 0 && data_subcarriers > 0 &&
                         fft_size > 0 && cp_samples > 0 && num_devices > 0;
  if (!counts_ok || payload_bits < 0 || ack_payload_bits < 0) {
    throw Error(Errc::InvalidArgument, "PHY profile counts must be positive");
  }
  if (!(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0)) {
    throw Error(Errc::InvalidArgument, "PHY bandwidth must be positive");
  }
  if (!(std::isfinite(gi_ms) && gi_ms >= 0.0)) {
    throw Error(Errc::InvalidArgument, "guard interval must be non-negative");
  }
  if (data_subcarriers > fft_size) {
    throw Error(Errc::InvalidArgument, "more data subcarriers than FFT bins");
  }
}

double frame_duration_ms(const PhyProfile& phy, long coded_bits) {
  phy.validate();
  if (coded_bits < 0) throw Error(Errc::InvalidArgument, "negative coded bit count");
  const long symbols = (coded_bits + phy.data_subcarriers - 1) / phy.data_subcarriers;
  const double samples = phy.preamble_samples + static_cast<double>(symbols) * (phy.fft_size + phy.cp_samples);
  return samples / phy.bandwidth_hz * 1e3;
}

double status_duration_ms(const PhyProfile& phy) {
  return frame_duration_ms(phy, static_cast<long>(phy.payload_bits) * phy.code_rate_inv);
}

double ack_duration_ms(const PhyProfile& phy) {
  return frame_duration_ms(phy, static_cast<long>(phy.ack_payload_bits) * phy.code_rate_inv);
}

double tdma_slot_ms(const PhyProfile& phy) {
  return status_duration_ms(phy) + ack_duration_ms(phy) + 2.0 * phy.gi_ms;
}

double fdma_round_ms(const PhyProfile& phy) { return status_duration_ms(phy) + phy.gi_ms; }

TimingModel idealized_timing(int n, double t_td) {
  if (n < 1) throw Error(Errc::InvalidArgument, "device count must be at least 1");
  return TimingModel::make(t_td, n * t_td);
}

TimingModel experimental_timing() {
  return TimingModel::make(tdma_slot_ms(PhyProfile::tdma_defaults()),
                           fdma_round_ms(PhyProfile::fdma_defaults()));
}

}  // namespace aoc
