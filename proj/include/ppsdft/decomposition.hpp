#pragma once

// Periodic plus smooth decomposition u = p + s.
//
// The smooth component s solves the periodic 5-point Poisson problem
//   s(x+1,y) + s(x-1,y) + s(x,y+1) + s(x,y-1) - 4 s(x,y) = b(x,y)
// where b holds the intensity jumps across the wrapped image edges. In the
// Fourier domain this is a pointwise division by
//   2 cos(2 pi kx / M) + 2 cos(2 pi ky / N) - 4,
// which is strictly negative except at DC, where s-hat is pinned to zero so
// that mean(p) == mean(u).

#include <cstdint>
#include <utility>

#include "ppsdft/core.hpp"

namespace ppsdft {

/// Edge-jump image. Nonzero only on the first/last rows and columns; its
/// pixels sum to zero up to rounding.
class BoundaryImage {
 public:
  /// Wraps an image after checking the support and zero-sum invariants.
  explicit BoundaryImage(Image2D image);

  const Image2D& image() const noexcept { return image_; }
  std::size_t rows() const noexcept { return image_.rows(); }
  std::size_t cols() const noexcept { return image_.cols(); }

 private:
  struct Unchecked {};
  BoundaryImage(Image2D image, Unchecked) : image_(std::move(image)) {}
  friend BoundaryImage compute_boundary_image(const Image2D& u);

  Image2D image_;
};

struct Decomposition {
  Image2D periodic;
  Image2D smooth;
  /// FNV-1a hash of the input's sample bit patterns.
  std::uint64_t input_hash = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

struct PeriodicSmoothSpectra {
  Spectrum2D periodic;
  Spectrum2D smooth;
};

/// b = b1 + b2. Corners receive both contributions.
BoundaryImage compute_boundary_image(const Image2D& u);

/// Denominator of the spectral Poisson solve at bin (kx, ky).
double poisson_denominator(std::size_t kx, std::size_t ky, std::size_t rows, std::size_t cols);

/// Spectrum of the smooth component; one forward DFT of b.
Spectrum2D solve_smooth_spectrum(const BoundaryImage& b);

Decomposition decompose(const Image2D& u);

/// p-hat = u-hat - s-hat without any inverse transform (two forward DFTs).
PeriodicSmoothSpectra ps_spectra(const Image2D& u);

/// Periodic 5-point Laplacian with wraparound indexing.
Image2D periodic_laplacian(const Image2D& s);

std::uint64_t image_hash(const Image2D& u) noexcept;

}  // namespace ppsdft
