#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "adiagap/errors.hpp"

namespace adiagap {

// Real symmetric tridiagonal matrix stored as its diagonal and first
// off-diagonal.
class TridiagonalMatrix {
 public:
  TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag)
      : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
    if (diag_.empty()) throw ParameterError("TridiagonalMatrix: empty diagonal");
    if (offdiag_.size() + 1 != diag_.size())
      throw ParameterError("TridiagonalMatrix: offdiag must have dim-1 entries");
  }

  std::size_t dim() const noexcept { return diag_.size(); }
  const std::vector<double>& diag() const noexcept { return diag_; }
  const std::vector<double>& offdiag() const noexcept { return offdiag_; }

  // Gershgorin enclosure of the spectrum.
  std::pair<double, double> gershgorin() const {
    double lo = diag_[0], hi = diag_[0];
    for (std::size_t i = 0; i < diag_.size(); ++i) {
      double r = 0.0;
      if (i > 0) r += std::abs(offdiag_[i - 1]);
      if (i + 1 < diag_.size()) r += std::abs(offdiag_[i]);
      lo = std::min(lo, diag_[i] - r);
      hi = std::max(hi, diag_[i] + r);
    }
    return {lo, hi};
  }

  double norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < diag_.size(); ++i) {
      double row = std::abs(diag_[i]);
      if (i > 0) row += std::abs(offdiag_[i - 1]);
      if (i + 1 < diag_.size()) row += std::abs(offdiag_[i]);
      best = std::max(best, row);
    }
    return best;
  }

  std::vector<double> apply(const std::vector<double>& v) const {
    const std::size_t n = dim();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = diag_[i] * v[i];
      if (i > 0) acc += offdiag_[i - 1] * v[i - 1];
      if (i + 1 < n) acc += offdiag_[i] * v[i + 1];
      out[i] = acc;
    }
    return out;
  }

  // Debug export: one row per index, "diag,offdiag" (offdiag blank on the last row).
  void write_csv(std::ostream& os) const {
    const auto old = os.precision(17);
    os << "diag,offdiag\n";
    for (std::size_t i = 0; i < diag_.size(); ++i) {
      os << diag_[i] << ',';
      if (i < offdiag_.size()) os << offdiag_[i];
      os << '\n';
    }
    os.precision(old);
  }

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
};

}  // namespace adiagap
