#pragma once

// Traditional edge-artifact suppression: separable windows and mirror
// symmetrization.

#include <string_view>
#include <vector>

#include "ppsdft/core.hpp"

namespace ppsdft {

enum class WindowKind { hann, flattop, rectangular };

/// Parses "hann", "flattop" or "rectangular".
WindowKind parse_window_kind(std::string_view name);
std::string_view to_string(WindowKind kind) noexcept;

struct WindowSpec {
  WindowKind kind = WindowKind::hann;
};

/// Five-term flat-top cosine series coefficients (symmetric form).
inline constexpr double kFlatTopCoefficients[5] = {0.21557895, 0.41663158, 0.277263158,
                                                   0.083578947, 0.006947368};

/// Symmetric 1D window of length L (denominator L - 1), values in [0, 1].
std::vector<double> window_1d(WindowKind kind, std::size_t length);

/// Outer product of the row and column windows.
Image2D make_window(const WindowSpec& spec, std::size_t rows, std::size_t cols);

Spectrum2D windowed_dft(const Image2D& u, const WindowSpec& spec);

/// 2M x 2N image [[u, fliplr(u)], [flipud(u), flipud(fliplr(u))]].
Image2D symmetrize(const Image2D& u);

Spectrum2D symmetrized_dft(const Image2D& u);

}  // namespace ppsdft
