#pragma once

#include <optional>
#include <vector>

#include "ppsdft/core.hpp"

namespace ppsdft {

/// Display image of a spectrum: log magnitude, DC-centered, min-max scaled
/// to [0, 1]. Unlike Image2D it may be as small as 1x1 after cropping.
struct SpectrumRender {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double eps_rel = 0.0;
  bool shifted = true;
  /// Location of the zero-frequency pixel in this render.
  std::size_t dc_row = 0;
  std::size_t dc_col = 0;
  /// Offset of this render inside the uncropped render.
  std::size_t crop_row = 0;
  std::size_t crop_col = 0;

  double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

inline constexpr double kDefaultEpsRel = 1e-6;

SpectrumRender log_magnitude(const Spectrum2D& spectrum, double eps_rel = kDefaultEpsRel);

/// Keeps the central ceil(frac*rows) x ceil(frac*cols) block around DC.
SpectrumRender crop_center(const SpectrumRender& render, double frac);

enum class Intensity { power, magnitude };

struct RadialProfile {
  /// nbins + 1 edges, in cycles/pixel or 1/length when a pixel size is given.
  std::vector<double> bin_edges;
  std::vector<double> mean_intensity;
  std::vector<std::size_t> counts;
};

/// Signed frequency index of bin k for an axis of length n: k or k - n.
long signed_frequency(std::size_t k, std::size_t n) noexcept;

/// Bins every off-DC coefficient by r = sqrt((fx)^2 + (fy)^2) in cycles/pixel,
/// using signed frequencies, over [0, max r].
RadialProfile radial_profile(const Spectrum2D& spectrum, std::size_t nbins,
                             Intensity intensity = Intensity::power,
                             std::optional<double> pixel_size = std::nullopt);

/// Returned by axis_artifact_metric when no energy lies on the axes.
inline constexpr double kMetricFloorDb = -300.0;
inline constexpr std::size_t kDefaultMetricGuard = 1;

/// 10 log10(axis energy / off-DC energy), where the axis energy covers the
/// kx = 0 and ky = 0 lines minus bins within `guard` of DC.
double axis_artifact_metric(const Spectrum2D& spectrum, std::size_t guard = kDefaultMetricGuard);

}  // namespace ppsdft
