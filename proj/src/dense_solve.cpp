#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aoc/analysis.hpp"
#include "aoc/error.hpp"

namespace aoc {

DenseSystem DenseSystem::make(std::vector<double> matrix_row_major, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  if (n == 0 || matrix_row_major.size() != n * n) {
    throw Error(Errc::InvalidArgument, "dense system must be square and match its right-hand side");
  }
  DenseSystem sys(n);
  sys.matrix_ = std::move(matrix_row_major);
  sys.rhs_ = std::move(rhs);
  return sys;
}

std::vector<double> solve_dense(const DenseSystem& system) {
  const std::size_t n = system.size();
  if (n == 0) throw Error(Errc::InvalidArgument, "empty dense system");

  std::vector<double> a(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r * n + c] = system.at(r, c);
  std::vector<double> b = system.rhs();

  // Row scale factors for scaled partial pivoting.
  std::vector<double> scale(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) scale[r] = std::max(scale[r], std::abs(a[r * n + c]));
    if (!(scale[r] > 0.0) || !std::isfinite(scale[r])) {
      throw Error(Errc::SingularSystem, "singular system: row " + std::to_string(r) + " is zero");
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a[k * n + k]) / scale[k];
    for (std::size_t r = k + 1; r < n; ++r) {
      const double s = std::abs(a[r * n + k]) / scale[r];
      if (s > best) {
        best = s;
        piv = r;
      }
    }
    if (best < kSingularPivot) throw Error(Errc::SingularSystem, "singular system");
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
      std::swap(b[k], b[piv]);
      std::swap(scale[k], scale[piv]);
    }
    const double d = a[k * n + k];
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r * n + k] / d;
      if (f == 0.0) continue;
      a[r * n + k] = 0.0;
      for (std::size_t c = k + 1; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
      b[r] -= f * b[k];
    }
  }

  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }

  // Backward-error bound: max(1, |rhs|, |A| |x|). Hitting times grow like
  // (1 - p)^-N, so a bound on |rhs| alone rejects correct solutions.
  double scale_norm = 1.0;
  double x_norm = 0.0;
  for (double v : system.rhs()) scale_norm = std::max(scale_norm, std::abs(v));
  for (double v : x) x_norm = std::max(x_norm, std::abs(v));
  for (std::size_t r = 0; r < n; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < n; ++c) row += std::abs(system.at(r, c));
    scale_norm = std::max(scale_norm, row * x_norm);
  }
  double residual = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double s = -system.rhs()[r];
    for (std::size_t c = 0; c < n; ++c) s += system.at(r, c) * x[c];
    residual = std::max(residual, std::abs(s));
  }
  if (!(residual <= kResidualTolerance * scale_norm)) {
    throw Error(Errc::SingularSystem, "singular system: residual " + std::to_string(residual) +
                                          " exceeds tolerance");
  }
  return x;
}

}  // namespace aoc
