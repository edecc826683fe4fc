#pragma once

// Reference implementations used only by tests. Each one is written straight
// from the defining formula, independent of the library's code paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "seds/grid.hpp"
#include "seds/optics.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

// A[(i,j)][(p,q)] = I(p - i, q - j) when the offset lies inside the kernel.
inline Dense dense_matrix(const seds::SpotKernel& spot, std::size_t rows, std::size_t cols) {
  const std::size_t n = rows * cols;
  const long h = spot.half();
  Dense a(n, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const long du = static_cast<long>(c / cols) - static_cast<long>(r / cols);
      const long dv = static_cast<long>(c % cols) - static_cast<long>(r % cols);
      if (std::abs(du) <= h && std::abs(dv) <= h) {
        a[r][c] = spot.at(static_cast<int>(du), static_cast<int>(dv));
      }
    }
  }
  return a;
}

inline std::vector<double> multiply(const Dense& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < x.size(); ++c) y[r] += a[r][c] * x[c];
  }
  return y;
}

// Scan sum with the sample embedded in an explicit frame of `fill`.
inline seds::Grid framed_scan(const seds::Grid& e, const seds::SpotKernel& spot, double fill) {
  const long h = spot.half();
  const long R = static_cast<long>(e.rows()), C = static_cast<long>(e.cols());
  seds::Grid out(e.rows(), e.cols());
  for (long i = 0; i < R; ++i) {
    for (long j = 0; j < C; ++j) {
      double s = 0.0;
      for (long u = -h; u <= h; ++u) {
        for (long v = -h; v <= h; ++v) {
          const long p = i + u, q = j + v;
          const double value = (p >= 0 && p < R && q >= 0 && q < C)
                                   ? e(static_cast<std::size_t>(p), static_cast<std::size_t>(q))
                                   : fill;
          s += spot.at(static_cast<int>(u), static_cast<int>(v)) * value;
        }
      }
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = s;
    }
  }
  return out;
}

// Dense Gaussian elimination with full pivoting.
inline std::vector<double> dense_solve(Dense a, std::vector<double> b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t r = k; r < n; ++r)
      for (std::size_t c = k; c < n; ++c)
        if (std::abs(a[r][c]) > std::abs(a[pr][pc])) pr = r, pc = c;
    if (a[pr][pc] == 0.0) throw std::runtime_error("singular");
    std::swap(a[k], a[pr]);
    std::swap(b[k], b[pr]);
    for (auto& row : a) std::swap(row[k], row[pc]);
    std::swap(perm[k], perm[pc]);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r][k] / a[k][k];
      for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> y(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= a[k][c] * y[c];
    y[k] = s / a[k][k];
  }
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[perm[k]] = y[k];
  return x;
}

// |DFT| of the spot's offset-flipped kernel on a P x Q periodic grid, by the
// O(P*Q*k^2) definition.
inline std::vector<double> kernel_spectrum_magnitude(const seds::SpotKernel& spot, std::size_t p,
                                                     std::size_t q) {
  const long h = spot.half();
  std::vector<double> out(p * q);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      std::complex<double> sum = 0.0;
      for (long u = -h; u <= h; ++u) {
        for (long v = -h; v <= h; ++v) {
          // K(d) = I(-d) sits at index d = (-u, -v).
          const double phase = -2.0 * std::numbers::pi *
                               (static_cast<double>(a) * static_cast<double>(-u) / static_cast<double>(p) +
                                static_cast<double>(b) * static_cast<double>(-v) / static_cast<double>(q));
          sum += spot.at(static_cast<int>(u), static_cast<int>(v)) * std::polar(1.0, phase);
        }
      }
      out[a * q + b] = std::abs(sum);
    }
  }
  return out;
}

inline seds::Grid random_grid(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double hi) {
  std::uniform_real_distribution<double> d(0.0, hi);
  seds::Grid g(rows, cols);
  for (double& v : g.values()) v = d(rng);
  return g;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> x(n);
  for (double& v : x) v = d(rng);
  return x;
}

// Random nonnegative spot with a dominant center; off-center taps sum below
// the center, so the correlation operator is diagonally dominant.
inline seds::SpotKernel dominant_spot(std::mt19937_64& rng, int size) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(size * size));
  const std::size_t center = v.size() / 2;
  double off = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == center) continue;
    v[i] = d(rng);
    off += v[i];
  }
  v[center] = off + 0.5 + d(rng);
  return seds::SpotKernel(size, std::move(v));
}

inline double max_abs(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracle
