#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppsdft {

using Complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Image or window dimensions too small for the requested operation.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf found in an input image.
class NonFiniteError : public Error {
 public:
  NonFiniteError(std::size_t row, std::size_t col);
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

/// Inverse transform of a spectrum that did not come from a real image.
class NotRealError : public Error {
 public:
  using Error::Error;
};

/// Caller passed an argument outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Real-valued M x N grid, row-major. The first index (x) runs over rows,
/// the second (y) over columns. Both dimensions must be at least 2.
///
/// Samples are not required to be finite at construction; operations that
/// need finite data call require_finite() and report the first bad index.
class Image2D {
 public:
  Image2D(std::size_t rows, std::size_t cols, double fill = 0.0);
  Image2D(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t x, std::size_t y) { return data_[x * cols_ + y]; }
  double operator()(std::size_t x, std::size_t y) const { return data_[x * cols_ + y]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  /// Physical length per pixel; only used for labeling frequency axes.
  std::optional<double> pixel_size;

  /// Throws NonFiniteError naming the first non-finite sample.
  void require_finite() const;

  double max_abs() const noexcept;
  double mean() const noexcept;
  double sum() const noexcept;

  friend bool operator==(const Image2D& a, const Image2D& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Complex M x N DFT array.
///
/// Convention: forward X(kx, ky) = sum_{x,y} u(x,y) exp(-2 pi i (kx x / M + ky y / N)),
/// unnormalized; the inverse carries the 1/(MN) factor.
class Spectrum2D {
 public:
  Spectrum2D(std::size_t rows, std::size_t cols);
  Spectrum2D(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  Complex& operator()(std::size_t kx, std::size_t ky) { return data_[kx * cols_ + ky]; }
  const Complex& operator()(std::size_t kx, std::size_t ky) const { return data_[kx * cols_ + ky]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  double max_abs() const noexcept;

  friend bool operator==(const Spectrum2D& a, const Spectrum2D& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

/// Forward 2D DFT. Rejects non-finite input.
Spectrum2D dft2(const Image2D& image);

/// Inverse 2D DFT returning the real part. Throws NotRealError when the
/// imaginary residue exceeds 1e-10 * max|spectrum|.
Image2D idft2(const Spectrum2D& spectrum);

/// Moves the zero-frequency bin to (floor(M/2), floor(N/2)).
Spectrum2D fftshift(const Spectrum2D& spectrum);

/// Tolerance factor used by idft2 for the imaginary residue.
inline constexpr double kRealResidueTolerance = 1e-10;

/// Per-thread counts of 2D transforms executed through dft2/idft2.
struct TransformCounts {
  std::size_t forward = 0;
  std::size_t inverse = 0;
};

TransformCounts transform_counts() noexcept;
void reset_transform_counts() noexcept;

// Elementwise helpers.
Image2D operator+(const Image2D& a, const Image2D& b);
Image2D operator-(const Image2D& a, const Image2D& b);
Image2D operator*(double scale, const Image2D& a);
Image2D hadamard(const Image2D& a, const Image2D& b);
Spectrum2D operator-(const Spectrum2D& a, const Spectrum2D& b);

}  // namespace ppsdft
