#include "ppsdft/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ppsdft {

SpectrumRender log_magnitude(const Spectrum2D& spectrum, double eps_rel) {
  if (!(eps_rel > 0.0)) throw ArgumentError("eps_rel must be positive");

  const Spectrum2D shifted = fftshift(spectrum);
  SpectrumRender render;
  render.rows = spectrum.rows();
  render.cols = spectrum.cols();
  render.eps_rel = eps_rel;
  render.shifted = true;
  render.dc_row = render.rows / 2;
  render.dc_col = render.cols / 2;
  render.values.assign(spectrum.size(), 0.0);

  const double peak = spectrum.max_abs();
  if (peak == 0.0) return render;

  const double floor = eps_rel * peak;
  const auto src = shifted.data();
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double v = std::log10(std::abs(src[i]) + floor);
    render.values[i] = v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi > lo) {
    const double inv = 1.0 / (hi - lo);
    for (double& v : render.values) v = (v - lo) * inv;
  } else {
    std::fill(render.values.begin(), render.values.end(), 0.0);
  }
  return render;
}

SpectrumRender crop_center(const SpectrumRender& render, double frac) {
  if (!(frac > 0.0 && frac <= 1.0)) throw ArgumentError("crop fraction must be in (0, 1]");
  const auto out_rows = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(render.rows)));
  const auto out_cols = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(render.cols)));
  if (out_rows < 1 || out_cols < 1) throw SizeError("crop would be empty");

  auto origin = [](std::size_t dc, std::size_t in, std::size_t out) {
    const std::size_t half = out / 2;
    std::size_t start = dc >= half ? dc - half : 0;
    return std::min(start, in - out);
  };
  const std::size_t r0 = origin(render.dc_row, render.rows, out_rows);
  const std::size_t c0 = origin(render.dc_col, render.cols, out_cols);

  SpectrumRender out = render;
  out.rows = out_rows;
  out.cols = out_cols;
  out.values.resize(out_rows * out_cols);
  for (std::size_t r = 0; r < out_rows; ++r) {
    for (std::size_t c = 0; c < out_cols; ++c) out.values[r * out_cols + c] = render(r0 + r, c0 + c);
  }
  out.dc_row = render.dc_row - r0;
  out.dc_col = render.dc_col - c0;
  out.crop_row = render.crop_row + r0;
  out.crop_col = render.crop_col + c0;
  return out;
}

long signed_frequency(std::size_t k, std::size_t n) noexcept {
  return 2 * k <= n ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

RadialProfile radial_profile(const Spectrum2D& spectrum, std::size_t nbins, Intensity intensity,
                             std::optional<double> pixel_size) {
  if (nbins < 1) throw ArgumentError("radial profile needs at least one bin");
  if (pixel_size && !(*pixel_size > 0.0)) throw ArgumentError("pixel size must be positive");
  const std::size_t rows = spectrum.rows();
  const std::size_t cols = spectrum.cols();

  auto radius = [&](std::size_t kx, std::size_t ky) {
    const double fx = static_cast<double>(signed_frequency(kx, rows)) / static_cast<double>(rows);
    const double fy = static_cast<double>(signed_frequency(ky, cols)) / static_cast<double>(cols);
    return std::hypot(fx, fy);
  };

  double r_max = 0.0;
  for (std::size_t kx = 0; kx < rows; ++kx) {
    for (std::size_t ky = 0; ky < cols; ++ky) r_max = std::max(r_max, radius(kx, ky));
  }

  RadialProfile profile;
  profile.mean_intensity.assign(nbins, 0.0);
  profile.counts.assign(nbins, 0);
  const double unit = pixel_size ? 1.0 / *pixel_size : 1.0;
  profile.bin_edges.resize(nbins + 1);
  for (std::size_t i = 0; i <= nbins; ++i) {
    profile.bin_edges[i] = unit * r_max * static_cast<double>(i) / static_cast<double>(nbins);
  }
  if (r_max == 0.0) return profile;  // 1x1 spectrum: DC only

  for (std::size_t kx = 0; kx < rows; ++kx) {
    for (std::size_t ky = 0; ky < cols; ++ky) {
      if (kx == 0 && ky == 0) continue;
      const double r = radius(kx, ky);
      auto bin = static_cast<std::size_t>(r / r_max * static_cast<double>(nbins));
      bin = std::min(bin, nbins - 1);
      const double mag = std::abs(spectrum(kx, ky));
      profile.mean_intensity[bin] += intensity == Intensity::power ? mag * mag : mag;
      ++profile.counts[bin];
    }
  }
  for (std::size_t i = 0; i < nbins; ++i) {
    if (profile.counts[i] > 0) profile.mean_intensity[i] /= static_cast<double>(profile.counts[i]);
  }
  return profile;
}

double axis_artifact_metric(const Spectrum2D& spectrum, std::size_t guard) {
  const std::size_t rows = spectrum.rows();
  const std::size_t cols = spectrum.cols();
  double axis = 0.0;
  double total = 0.0;
  for (std::size_t kx = 0; kx < rows; ++kx) {
    for (std::size_t ky = 0; ky < cols; ++ky) {
      if (kx == 0 && ky == 0) continue;
      const double e = std::norm(spectrum(kx, ky));
      total += e;
      if (kx != 0 && ky != 0) continue;
      const auto distance = static_cast<std::size_t>(
          std::labs(kx == 0 ? signed_frequency(ky, cols) : signed_frequency(kx, rows)));
      if (distance > guard) axis += e;
    }
  }
  if (total == 0.0) throw ArgumentError("axis artifact metric undefined: no off-DC energy");
  if (axis == 0.0) return kMetricFloorDb;
  return std::max(10.0 * std::log10(axis / total), kMetricFloorDb);
}

}  // namespace ppsdft
