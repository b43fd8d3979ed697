#include "ppsdft/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ppsdft {

WindowKind parse_window_kind(std::string_view name) {
  if (name == "hann") return WindowKind::hann;
  if (name == "flattop") return WindowKind::flattop;
  if (name == "rectangular") return WindowKind::rectangular;
  throw ArgumentError("unknown window kind '" + std::string(name) + "'");
}

std::string_view to_string(WindowKind kind) noexcept {
  switch (kind) {
    case WindowKind::hann:
      return "hann";
    case WindowKind::flattop:
      return "flattop";
    case WindowKind::rectangular:
      return "rectangular";
  }
  return "unknown";
}

std::vector<double> window_1d(WindowKind kind, std::size_t length) {
  if (length < 2) throw SizeError("window length must be at least 2");
  std::vector<double> w(length, 1.0);
  if (kind == WindowKind::rectangular) return w;

  const double denom = static_cast<double>(length - 1);
  // Evaluate the first half and mirror it so the window is exactly palindromic.
  for (std::size_t n = 0; n < (length + 1) / 2; ++n) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(n) / denom;
    double v = 0.0;
    if (kind == WindowKind::hann) {
      v = 0.5 * (1.0 - std::cos(t));
    } else {
      const auto& a = kFlatTopCoefficients;
      v = a[0] - a[1] * std::cos(t) + a[2] * std::cos(2 * t) - a[3] * std::cos(3 * t) +
          a[4] * std::cos(4 * t);
      // The series dips to about -0.07 near the ends and peaks at 1 + 3e-9.
      v = std::clamp(v, 0.0, 1.0);
    }
    w[n] = v;
    w[length - 1 - n] = v;
  }
  return w;
}

Image2D make_window(const WindowSpec& spec, std::size_t rows, std::size_t cols) {
  if (rows < 2 || cols < 2) throw SizeError("window needs at least 2x2");
  const std::vector<double> wr = window_1d(spec.kind, rows);
  const std::vector<double> wc = window_1d(spec.kind, cols);
  Image2D w(rows, cols);
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) w(x, y) = wr[x] * wc[y];
  }
  return w;
}

Spectrum2D windowed_dft(const Image2D& u, const WindowSpec& spec) {
  return dft2(hadamard(u, make_window(spec, u.rows(), u.cols())));
}

Image2D symmetrize(const Image2D& u) {
  const std::size_t rows = u.rows();
  const std::size_t cols = u.cols();
  Image2D v(2 * rows, 2 * cols);
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) {
      const double value = u(x, y);
      v(x, y) = value;
      v(x, 2 * cols - 1 - y) = value;
      v(2 * rows - 1 - x, y) = value;
      v(2 * rows - 1 - x, 2 * cols - 1 - y) = value;
    }
  }
  v.pixel_size = u.pixel_size;
  return v;
}

Spectrum2D symmetrized_dft(const Image2D& u) { return dft2(symmetrize(u)); }

}  // namespace ppsdft
