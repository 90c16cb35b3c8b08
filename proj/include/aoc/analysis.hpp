#pragma once

#include <cstddef>
#include <vector>

#include "aoc/domain.hpp"

namespace aoc {

/// Square linear system `matrix * x = rhs`, matrix stored row-major.
class DenseSystem {
 public:
  explicit DenseSystem(std::size_t n) : n_(n), matrix_(n * n, 0.0), rhs_(n, 0.0) {}
  /// Throws InvalidArgument unless `matrix.size() == rhs.size()^2`.
  static DenseSystem make(std::vector<double> matrix_row_major, std::vector<double> rhs);

  std::size_t size() const noexcept { return n_; }
  double& at(std::size_t r, std::size_t c) noexcept { return matrix_[r * n_ + c]; }
  double at(std::size_t r, std::size_t c) const noexcept { return matrix_[r * n_ + c]; }
  std::vector<double>& rhs() noexcept { return rhs_; }
  const std::vector<double>& rhs() const noexcept { return rhs_; }

 private:
  std::size_t n_;
  std::vector<double> matrix_;
  std::vector<double> rhs_;
};

/// Scaled partial-pivoting threshold and relative residual bound.
inline constexpr double kSingularPivot = 1e-12;
inline constexpr double kResidualTolerance = 1e-9;

/// Gaussian elimination with scaled partial pivoting. Throws SingularSystem
/// when the best scaled pivot falls below kSingularPivot or the residual of
/// the computed solution exceeds kResidualTolerance * max(1, |rhs|, |A| |x|)
/// in the infinity norm.
std::vector<double> solve_dense(const DenseSystem& system);

// TDMA without retransmission: any failure restarts the round at device 1.
HittingMoments tdma_nr_moments(const PerVector& p);
double tdma_nr_avg_aoc_slots(const PerVector& p);

// TDMA with retransmission: devices 2..N retransmit until success, a device-1
// failure regenerates the whole batch.
HittingMoments tdma_r_moments(const PerVector& p);
double tdma_r_avg_aoc_slots(const PerVector& p);

/// Probability that every device delivers in one FDMA round.
double fdma_gamma(const PerVector& p);
double fdma_avg_aoc_rounds(const PerVector& p);

/// Average AoC in the scheme's native unit (slots for TDMA, rounds for FDMA).
double avg_aoc_units(SchemeKind scheme, const PerVector& p);
double avg_aoc_ms(SchemeKind scheme, const PerVector& p, const TimingModel& timing);

}  // namespace aoc
