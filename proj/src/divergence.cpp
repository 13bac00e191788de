#include "sumlab/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

#include "sumlab/kernels.hpp"
#include "sumlab/parallel.hpp"
#include "sumlab/specfun.hpp"

namespace sumlab::divergence {

using specfun::critical_index;

namespace {

constexpr double kAtomTolerance = 1e-12;

// Below this many terms the Cesaro convolution is summed directly.
constexpr std::size_t kDirectLength = 64;

// One FFT engine per thread: Eigen caches twiddle tables inside it.
Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::HalfSpectrum);
    return f;
  }();
  return fft;
}

// Target without the domain checks: +inf at an atom, antipodal atoms
// contribute nothing because they lie beyond pi/2.
double target_value(const AtomicMeasure& mu, const SpherePoint& x) {
  const int n = mu.dim();
  double s = 0.0;
  for (const auto& atom : mu.atoms()) {
    const double theta = sphere::geodesic_distance(x, atom.point);
    if (theta < kAtomTolerance) return sphere::kSingular;
    if (theta <= 0.5 * std::numbers::pi) s += atom.weight * kernels::amplitude(n, theta);
  }
  return kernels::szego_limit(n) * s;
}

std::vector<double> szego_table(int n, std::int64_t N_max) {
  std::vector<double> c(static_cast<std::size_t>(N_max + 1), 0.0);
  for (std::int64_t N = 1; N <= N_max; ++N) c[static_cast<std::size_t>(N)] = kernels::szego_coefficient(n, N);
  return c;
}

ScanResult scan_with_table(const AtomicMeasure& mu, const SpherePoint& x, std::int64_t N_max,
                           const std::vector<double>& C) {
  const int n = mu.dim();
  ScanResult out{x, 0.0, 0, target_value(mu, x), N_max};
  std::vector<double> t;
  std::vector<double> w;
  for (const auto& atom : mu.atoms()) {
    const double theta = sphere::geodesic_distance(x, atom.point);
    if (theta <= 0.5 * std::numbers::pi) {
      t.push_back(std::cos(theta));
      w.push_back(atom.weight);
    }
  }
  if (t.empty()) {
    out.argmax_N = 1;
    return out;
  }
  const specfun::JacobiParams p = kernels::main_jacobi_params(n);
  std::vector<double> prev(t.size(), 1.0);
  std::vector<double> cur(t.size());
  double s = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    cur[j] = (p.alpha + 1.0) + (p.alpha + p.beta + 2.0) * (t[j] - 1.0) / 2.0;
    s += w[j] * cur[j];
  }
  out.sup_abs = std::abs(C[1] * s);
  out.argmax_N = 1;
  for (std::int64_t N = 2; N <= N_max; ++N) {
    const specfun::JacobiStep st = specfun::jacobi_step(p, N);
    s = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double next = (st.a * t[j] + st.b) * cur[j] - st.c * prev[j];
      prev[j] = cur[j];
      cur[j] = next;
      s += w[j] * next;
    }
    const double v = std::abs(C[static_cast<std::size_t>(N)] * s);
    if (v > out.sup_abs) {
      out.sup_abs = v;
      out.argmax_N = N;
    }
  }
  return out;
}

}  // namespace

AtomicMeasure witness_measure(int n, double r, std::uint64_t seed) {
  return sphere::remove_antipodal_pairs(sphere::greedy_packing(n, r, seed), std::min(1e-3, 0.25 * r));
}

double measure_projection(const AtomicMeasure& mu, std::int64_t k, const SpherePoint& x) {
  if (x.dim() != mu.dim()) throw std::invalid_argument("point and measure dimensions differ");
  double s = 0.0;
  for (const auto& atom : mu.atoms()) {
    s += atom.weight * kernels::zonal_kernel(mu.dim(), k, sphere::geodesic_distance(x, atom.point));
  }
  return s;
}

std::vector<double> projection_sequence(const AtomicMeasure& mu, const SpherePoint& x, std::int64_t K) {
  if (x.dim() != mu.dim()) throw std::invalid_argument("point and measure dimensions differ");
  if (K < 0) throw std::invalid_argument("projection degree must be nonnegative");
  const double lambda = 0.5 * (mu.dim() - 1);
  const std::size_t m = mu.size();
  std::vector<double> t(m);
  std::vector<double> w(m);
  for (std::size_t j = 0; j < m; ++j) {
    t[j] = std::clamp(sphere::inner(x, mu[j].point), -1.0, 1.0);
    w[j] = mu[j].weight;
  }
  std::vector<double> out(static_cast<std::size_t>(K + 1));
  std::vector<double> prev(m, 1.0);
  std::vector<double> cur(m);
  double s0 = 0.0;
  double s1 = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    s0 += w[j];
    cur[j] = 2.0 * lambda * t[j];
    s1 += w[j] * cur[j];
  }
  out[0] = s0;
  if (K == 0) return out;
  out[1] = s1 * (1.0 + lambda) / lambda;
  // C_k = (2(k + lambda - 1) t C_{k-1} - (k + 2 lambda - 2) C_{k-2}) / k
  for (std::int64_t k = 2; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    const double a = 2.0 * (kd + lambda - 1.0) / kd;
    const double c = (kd + 2.0 * lambda - 2.0) / kd;
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double next = a * t[j] * cur[j] - c * prev[j];
      prev[j] = cur[j];
      cur[j] = next;
      s += w[j] * next;
    }
    out[static_cast<std::size_t>(k)] = s * (kd + lambda) / lambda;
  }
  return out;
}

double kronecker_target(const AtomicMeasure& mu, const SpherePoint& x) {
  if (x.dim() != mu.dim()) throw std::invalid_argument("point and measure dimensions differ");
  for (const auto& atom : mu.atoms()) {
    const double theta = sphere::geodesic_distance(x, atom.point);
    if (theta < kAtomTolerance || std::numbers::pi - theta < kAtomTolerance) {
      throw std::domain_error("Kronecker target is singular at atoms and their antipodes");
    }
  }
  return target_value(mu, x);
}

ScanResult scan_sup(const AtomicMeasure& mu, const SpherePoint& x, std::int64_t N_max) {
  if (N_max < 1) throw std::invalid_argument("scan needs N_max >= 1");
  if (x.dim() != mu.dim()) throw std::invalid_argument("point and measure dimensions differ");
  return scan_with_table(mu, x, N_max, szego_table(mu.dim(), N_max));
}

std::vector<ScanResult> scan_grid(const AtomicMeasure& mu, const std::vector<SpherePoint>& grid,
                                  std::int64_t N_max) {
  if (N_max < 1) throw std::invalid_argument("scan needs N_max >= 1");
  const auto C = szego_table(mu.dim(), N_max);
  std::vector<ScanResult> out(grid.size(), ScanResult{sphere::SpherePoint::basis(mu.dim(), 0)});
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = scan_with_table(mu, grid[i], N_max, C);
  });
  return out;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanResult>& rows, const AtomicMeasure& mu,
                    const std::string& meta_line) {
  out << meta_line << '\n' << "point_index";
  for (int d = 0; d <= mu.dim(); ++d) out << ",x" << d;
  out << ",sup_abs,argmax_N,target,r,m,N_max,seed\n" << std::setprecision(17);
  const double r = mu.separation.value_or(0.0);
  const std::uint64_t seed = mu.seed.value_or(0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << i;
    for (double c : rows[i].x.coords()) out << ',' << c;
    out << ',' << rows[i].sup_abs << ',' << rows[i].argmax_N << ',' << rows[i].target << ',' << r << ','
        << mu.size() << ',' << rows[i].N_max << ',' << seed << '\n';
  }
}

CesaroPlan::CesaroPlan(double delta, std::int64_t N_max) {
  if (!(delta > -1.0)) throw std::domain_error("Cesaro order must exceed -1");
  if (N_max < 0) throw std::invalid_argument("N_max must be nonnegative");
  const auto outs = static_cast<std::size_t>(N_max + 1);
  a_.resize(outs);
  a_[0] = 1.0;
  for (std::size_t k = 1; k < outs; ++k) a_[k] = a_[k - 1] * (static_cast<double>(k) + delta) / static_cast<double>(k);
  // Inputs are cut to N_max + 1 terms, so 2 (N_max + 1) points keep the
  // circular convolution free of wraparound on the outputs we keep.
  fft_size_ = 1;
  while (fft_size_ < 2 * outs) fft_size_ *= 2;
  if (outs > kDirectLength) {
    std::vector<double> padded(fft_size_, 0.0);
    std::copy(a_.begin(), a_.end(), padded.begin());
    fft_engine().fwd(spectrum_, padded);
  }
}

std::vector<double> CesaroPlan::operator()(std::span<const double> b) const {
  const std::size_t outs = a_.size();
  const std::size_t len = std::min(b.size(), outs);
  std::vector<double> conv(outs, 0.0);
  if (len <= kDirectLength || outs <= kDirectLength) {
    for (std::size_t N = 0; N < outs; ++N) {
      double s = 0.0;
      const std::size_t top = std::min(N + 1, len);
      for (std::size_t k = 0; k < top; ++k) s += a_[N - k] * b[k];
      conv[N] = s;
    }
  } else {
    std::vector<double> padded(fft_size_, 0.0);
    std::copy(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(len), padded.begin());
    std::vector<std::complex<double>> fb;
    auto& fft = fft_engine();
    fft.fwd(fb, padded);
    for (std::size_t i = 0; i < fb.size(); ++i) fb[i] *= spectrum_[i];
    fft.inv(padded, fb, static_cast<Eigen::Index>(fft_size_));
    std::copy(padded.begin(), padded.begin() + static_cast<std::ptrdiff_t>(outs), conv.begin());
  }
  for (std::size_t N = 0; N < outs; ++N) conv[N] /= a_[N];
  return conv;
}

std::vector<double> cesaro_transform(std::span<const double> b, double delta, std::int64_t N_max) {
  return CesaroPlan(delta, N_max)(b);
}

std::vector<double> SmoothedMeasure::spectrum(const SpherePoint& x) const {
  auto p = projection_sequence(mu, x, N1);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] *= multipliers[k];
  return p;
}

double SmoothedMeasure::operator()(const SpherePoint& x) const {
  double s = 0.0;
  for (double v : spectrum(x)) s += v;
  return s;
}

std::vector<double> SmoothedMeasure::cesaro_means(const SpherePoint& x, std::int64_t N_max) const {
  return cesaro_transform(spectrum(x), critical_index(dim()), N_max);
}

SmoothedMeasure smooth_to_polynomial(const AtomicMeasure& mu, std::int64_t N1) {
  if (N1 < 0) throw std::invalid_argument("smoothing degree must be nonnegative");
  return {mu, N1, specfun::cesaro_ratios(critical_index(mu.dim()) + 1.0, N1)};
}

double smoothing_bound(int n, std::int64_t N0, std::int64_t N1) {
  if (N0 < 0 || N0 > N1) throw std::invalid_argument("smoothing bound needs 0 <= N0 <= N1");
  const double ratio = specfun::cesaro_ratios(critical_index(n) + 1.0, N1)[static_cast<std::size_t>(N0)];
  double dims = 0.0;
  for (std::int64_t k = 0; k <= N0; ++k) dims += static_cast<double>(specfun::harmonic_dimension(n, k));
  return (1.0 - ratio) * dims;
}

double kernel_l1_norm(int n, double delta, std::int64_t N) {
  // Composite Gauss-Legendre in theta with four panels per oscillation
  // period 2 pi / N of the kernel.
  const sphere::GaussRule gl = sphere::gauss_jacobi(8, 0.0, 0.0);
  const std::size_t panels = static_cast<std::size_t>(2 * (N + 1));
  const double h = std::numbers::pi / static_cast<double>(panels);
  std::vector<double> thetas;
  std::vector<double> weights;
  thetas.reserve(panels * gl.nodes.size());
  for (std::size_t p = 0; p < panels; ++p) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double th = h * (static_cast<double>(p) + 0.5 * (gl.nodes[i] + 1.0));
      thetas.push_back(th);
      weights.push_back(h * gl.weights[i] * std::pow(std::sin(th), n - 1));
    }
  }
  std::vector<double> vals(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) vals[i] = std::abs(kernels::cesaro_kernel(delta, N, kernels::zonal_sequence(n, thetas[i], N)));
  });
  double s = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    s += weights[i] * vals[i];
    total += weights[i];
  }
  return s / total;
}

std::vector<double> kernel_peak_values(int n, std::int64_t N_max) {
  std::vector<double> dims(static_cast<std::size_t>(N_max + 1));
  for (std::int64_t k = 0; k <= N_max; ++k) dims[static_cast<std::size_t>(k)] = static_cast<double>(specfun::harmonic_dimension(n, k));
  std::vector<double> out(dims.size());
  for (std::int64_t N = 0; N <= N_max; ++N) {
    const auto w = specfun::cesaro_ratios(critical_index(n), N);
    double s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * dims[k];
    out[static_cast<std::size_t>(N)] = s;
  }
  return out;
}

SupNorm kernel_sup_norm(int n, std::int64_t N) {
  if (N < 0) throw std::invalid_argument("kernel degree must be nonnegative");
  SupNorm out;
  out.exact = kernel_peak_values(n, N).back();
  constexpr int kGrid = 512;
  const double d0 = critical_index(n);
  for (int i = 0; i <= kGrid; ++i) {
    const double u = static_cast<double>(i) / kGrid;
    const double theta = std::numbers::pi * u * u;
    out.grid_max = std::max(out.grid_max, std::abs(kernels::cesaro_kernel(n, d0, N, theta)));
  }
  return out;
}

Quantiles quantiles(std::vector<double> values) {
  if (values.empty()) return {};
  std::sort(values.begin(), values.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return {values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

}  // namespace sumlab::divergence
