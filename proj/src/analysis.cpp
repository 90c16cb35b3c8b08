#include "aoc/analysis.hpp"

#include <algorithm>
#include <vector>

#include "aoc/error.hpp"

namespace aoc {

namespace {

// Row i: -p_i on T_1, +1 on T_i, -(1 - p_i) on T_{i+1}. Row 1 folds the
// first two into (1 - p_1).
DenseSystem restart_chain_system(const PerVector& p) {
  const std::size_t n = p.size();
  DenseSystem sys(n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.at(i, i) += 1.0;
    sys.at(i, 0) -= p[i];
    if (i + 1 < n) sys.at(i, i + 1) -= 1.0 - p[i];
  }
  return sys;
}

// Sum in ascending order so the result does not depend on the order the
// terms were listed in.
double canonical_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

}  // namespace

HittingMoments tdma_nr_moments(const PerVector& p) {
  const std::size_t n = p.size();
  DenseSystem sys = restart_chain_system(p);
  std::fill(sys.rhs().begin(), sys.rhs().end(), 1.0);
  std::vector<double> first = solve_dense(sys);

  for (std::size_t i = 0; i < n; ++i) {
    const double next = i + 1 < n ? first[i + 1] : 0.0;
    sys.rhs()[i] = 1.0 + 2.0 * p[i] * first[0] + 2.0 * (1.0 - p[i]) * next;
  }
  const std::vector<double> second = solve_dense(sys);

  HittingMoments m;
  m.second_t1 = second[0];
  m.t2s = n > 1 ? first[1] : 0.0;
  m.first = std::move(first);
  return m;
}

double tdma_nr_avg_aoc_slots(const PerVector& p) {
  const HittingMoments m = tdma_nr_moments(p);
  return static_cast<double>(p.size()) + m.second_t1 / (2.0 * m.first[0]);
}

HittingMoments tdma_r_moments(const PerVector& p) {
  const std::size_t n = p.size();
  // Mean attempts per device: 1 / (1 - p_k).
  std::vector<double> attempts(n);
  for (std::size_t k = 0; k < n; ++k) attempts[k] = 1.0 / (1.0 - p[k]);

  HittingMoments m;
  m.first.assign(n, 0.0);
  for (std::size_t i = n; i-- > 2;) m.first[i] = attempts[i] + (i + 1 < n ? m.first[i + 1] : 0.0);

  // T_2 and the weighted tail sum are evaluated in symmetric form so the
  // result is exactly invariant under reordering devices 2..N:
  //   sum_{i>=2} 2 a_i T_i = sum_{i>=2} a_i^2 + (sum_{i>=2} a_i)^2.
  const std::vector<double> tail(attempts.begin() + 1, attempts.end());
  std::vector<double> tail_sq;
  tail_sq.reserve(tail.size());
  for (double a : tail) tail_sq.push_back(a * a);
  const double t2 = canonical_sum(tail);
  const double weighted_tail = canonical_sum(std::move(tail_sq)) + t2 * t2;

  const double t1 = attempts[0] + t2;
  if (n > 1) m.first[1] = t2;
  m.first[0] = t1;
  m.t2s = t2;
  m.second_t1 = (1.0 + p[0]) / (1.0 - p[0]) * t1 + weighted_tail;
  return m;
}

double tdma_r_avg_aoc_slots(const PerVector& p) {
  const HittingMoments m = tdma_r_moments(p);
  return 1.0 + m.t2s + m.second_t1 / (2.0 * m.first[0]);
}

double fdma_gamma(const PerVector& p) {
  double g = 1.0;
  for (double pi : p.probs()) g *= 1.0 - pi;
  return g;
}

double fdma_avg_aoc_rounds(const PerVector& p) {
  // Inter-collection gaps are geometric(gamma): E = 1/gamma, E2 = (2 - gamma)/gamma^2.
  const double g = fdma_gamma(p);
  return 1.0 + (2.0 - g) / (2.0 * g);
}

double avg_aoc_units(SchemeKind scheme, const PerVector& p) {
  switch (scheme) {
    case SchemeKind::TdmaNr: return tdma_nr_avg_aoc_slots(p);
    case SchemeKind::TdmaR: return tdma_r_avg_aoc_slots(p);
    case SchemeKind::Fdma: return fdma_avg_aoc_rounds(p);
  }
  throw Error(Errc::InvalidArgument, "unknown scheme");
}

double avg_aoc_ms(SchemeKind scheme, const PerVector& p, const TimingModel& timing) {
  return avg_aoc_units(scheme, p) * timing.unit_ms(scheme);
}

}  // namespace aoc
