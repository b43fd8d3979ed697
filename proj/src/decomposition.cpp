#include "ppsdft/decomposition.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace ppsdft {

namespace {

std::vector<double> cosine_table(std::size_t n) {
  std::vector<double> table(n);
  for (std::size_t k = 0; k < n; ++k) {
    table[k] = 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                              static_cast<double>(n));
  }
  return table;
}

}  // namespace

BoundaryImage::BoundaryImage(Image2D image) : image_(std::move(image)) {
  const std::size_t rows = image_.rows();
  const std::size_t cols = image_.cols();
  image_.require_finite();
  double total = 0.0;
  double scale = 0.0;
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) {
      const double v = image_(x, y);
      const bool edge = x == 0 || x == rows - 1 || y == 0 || y == cols - 1;
      if (!edge && v != 0.0) {
        std::ostringstream msg;
        msg << "boundary image has nonzero interior pixel at (" << x << ", " << y << ")";
        throw ArgumentError(msg.str());
      }
      total += v;
      scale += std::abs(v);
    }
  }
  if (std::abs(total) > 1e-12 * std::max(1.0, scale)) {
    throw ArgumentError("boundary image does not sum to zero");
  }
}

BoundaryImage compute_boundary_image(const Image2D& u) {
  const std::size_t rows = u.rows();
  const std::size_t cols = u.cols();
  if (rows < 2 || cols < 2) throw SizeError("boundary image needs at least 2x2 input");
  u.require_finite();

  Image2D b(rows, cols);
  // b1: jumps across the top/bottom wrap.
  for (std::size_t y = 0; y < cols; ++y) {
    const double jump = u(rows - 1, y) - u(0, y);
    b(0, y) += jump;
    b(rows - 1, y) -= jump;
  }
  // b2: jumps across the left/right wrap.
  for (std::size_t x = 0; x < rows; ++x) {
    const double jump = u(x, cols - 1) - u(x, 0);
    b(x, 0) += jump;
    b(x, cols - 1) -= jump;
  }
  b.pixel_size = u.pixel_size;
  return BoundaryImage(std::move(b), BoundaryImage::Unchecked{});
}

double poisson_denominator(std::size_t kx, std::size_t ky, std::size_t rows, std::size_t cols) {
  return 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(kx) /
                        static_cast<double>(rows)) +
         2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(ky) /
                        static_cast<double>(cols)) -
         4.0;
}

Spectrum2D solve_smooth_spectrum(const BoundaryImage& b) {
  const std::size_t rows = b.rows();
  const std::size_t cols = b.cols();
  Spectrum2D s_hat = dft2(b.image());

  const std::vector<double> cx = cosine_table(rows);
  const std::vector<double> cy = cosine_table(cols);
  for (std::size_t kx = 0; kx < rows; ++kx) {
    for (std::size_t ky = 0; ky < cols; ++ky) {
      if (kx == 0 && ky == 0) continue;
      s_hat(kx, ky) /= cx[kx] + cy[ky] - 4.0;
    }
  }
  s_hat(0, 0) = Complex{0.0, 0.0};
  return s_hat;
}

Decomposition decompose(const Image2D& u) {
  u.require_finite();
  Image2D smooth = idft2(solve_smooth_spectrum(compute_boundary_image(u)));
  smooth.pixel_size = u.pixel_size;
  Image2D periodic = u - smooth;
  return Decomposition{std::move(periodic), std::move(smooth), image_hash(u), u.rows(),
                       u.cols()};
}

PeriodicSmoothSpectra ps_spectra(const Image2D& u) {
  Spectrum2D u_hat = dft2(u);
  Spectrum2D s_hat = solve_smooth_spectrum(compute_boundary_image(u));
  Spectrum2D p_hat = u_hat - s_hat;
  return PeriodicSmoothSpectra{std::move(p_hat), std::move(s_hat)};
}

Image2D periodic_laplacian(const Image2D& s) {
  const std::size_t rows = s.rows();
  const std::size_t cols = s.cols();
  Image2D out(rows, cols);
  for (std::size_t x = 0; x < rows; ++x) {
    const std::size_t xp = (x + 1) % rows;
    const std::size_t xm = (x + rows - 1) % rows;
    for (std::size_t y = 0; y < cols; ++y) {
      const std::size_t yp = (y + 1) % cols;
      const std::size_t ym = (y + cols - 1) % cols;
      out(x, y) = s(xp, y) + s(xm, y) + s(x, yp) + s(x, ym) - 4.0 * s(x, y);
    }
  }
  return out;
}

std::uint64_t image_hash(const Image2D& u) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(u.rows());
  mix(u.cols());
  for (double v : u.data()) mix(std::bit_cast<std::uint64_t>(v));
  return h;
}

}  // namespace ppsdft
