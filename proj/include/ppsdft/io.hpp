#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ppsdft/core.hpp"
#include "ppsdft/render.hpp"

namespace ppsdft {

/// Failure to read or write a file.
class IoError : public Error {
 public:
  using Error::Error;
};

enum class RasterFormat { png8, png16, tiff_gray, raw_f64 };

std::string_view to_string(RasterFormat format) noexcept;

struct RasterFile {
  std::filesystem::path path;
  RasterFormat format = RasterFormat::raw_f64;
};

/// Picks a format from the file extension: .png -> png8, .tif/.tiff ->
/// tiff_gray, anything else -> raw_f64.
RasterFormat infer_format(const std::filesystem::path& path);

/// Raw payloads carry their shape in "<path>.json".
std::filesystem::path sidecar_path(const std::filesystem::path& raw_path);

/// Linear map applied when writing integer formats: min -> 0, max -> full
/// scale. An image with min == max maps to 0 everywhere.
struct IntensityMapping {
  double min = 0.0;
  double max = 0.0;
};

/// Reads a grayscale raster. Integer samples are returned unscaled.
Image2D load_image(const RasterFile& file);

/// Writes an image. raw_f64 is bit-exact; integer formats use min-max mapping,
/// which is returned and stored in the file's text metadata.
IntensityMapping save_image(const Image2D& image, const RasterFile& file);

/// Writes a render ([0, 1] values) scaled to the format's full range.
/// raw_f64 stores the values unchanged.
void save_render(const SpectrumRender& render, const RasterFile& file);

/// Formats a double with 17 significant digits.
std::string format_double(double value);

/// CSV with header "radius,mean_intensity,count"; radius is the bin center.
void write_profile_csv(const RadialProfile& profile, const std::filesystem::path& path);

}  // namespace ppsdft
