#pragma once

#include <algorithm>
#include <cstddef>
#include <span>

namespace divexp {

// Symmetric contractions used by the second and third-order corrections.
//
// Each term of an expansion carries a coefficient c_i and a residual variance
// s_i = v_T^2 - v_{t_i}^2. The measure changes produce kernels of the sum of
// residual variances and of the pairwise overlaps min(s_i, s_j) (equivalently
// v_T^2 - v^2 at the later of the two dates). Both contractions run over
// ordered index tuples only and weight them by their multiplicity.

/// sum_{i,j} c_i c_j u(s_i + s_j, min(s_i, s_j))
///   = sum_i c_i^2 u(2 s_i, s_i) + 2 sum_{i<j} c_i c_j u(s_i + s_j, min(s_i, s_j))
template <class Kernel>
double symmetric_double_sum(std::span<const double> coef, std::span<const double> residual,
                            Kernel&& u) {
  const std::size_t n = coef.size();
  double diagonal = 0.0, upper = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ci = coef[i], si = residual[i];
    diagonal += ci * ci * u(2.0 * si, si);
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double sj = residual[j];
      row += coef[j] * u(si + sj, std::min(si, sj));
    }
    upper += ci * row;
  }
  return diagonal + 2.0 * upper;
}

/// sum_{i,j,l} c_i c_j c_l u(s_i + s_j + s_l, min(s_i,s_j) + min(s_i,s_l) + min(s_j,s_l))
/// split into 6 x strictly ordered triples, 3 x each doubled-index family and
/// the diagonal.
template <class Kernel>
double symmetric_triple_sum(std::span<const double> coef, std::span<const double> residual,
                            Kernel&& u) {
  const std::size_t n = coef.size();
  double distinct = 0.0, doubled = 0.0, diagonal = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ci = coef[i], si = residual[i];
    diagonal += ci * ci * ci * u(3.0 * si, 3.0 * si);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double cj = coef[j], sj = residual[j];
      const double mij = std::min(si, sj);
      // (i,i,j) and (i,j,j)
      doubled += ci * cj * (ci * u(2.0 * si + sj, si + 2.0 * mij) +
                            cj * u(si + 2.0 * sj, sj + 2.0 * mij));
      double row = 0.0;
      for (std::size_t l = j + 1; l < n; ++l) {
        const double sl = residual[l];
        row += coef[l] * u(si + sj + sl, mij + std::min(si, sl) + std::min(sj, sl));
      }
      distinct += ci * cj * row;
    }
  }
  return diagonal + 3.0 * doubled + 6.0 * distinct;
}

}  // namespace divexp
