#include "ppsdft/core.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

namespace ppsdft {

namespace {

void check_dims(std::size_t rows, std::size_t cols, std::size_t minimum, const char* what) {
  if (rows < minimum || cols < minimum) {
    std::ostringstream msg;
    msg << what << " must be at least " << minimum << "x" << minimum << ", got " << rows << "x"
        << cols;
    throw SizeError(msg.str());
  }
}

void check_same_shape(std::size_t ar, std::size_t ac, std::size_t br, std::size_t bc) {
  if (ar != br || ac != bc) {
    std::ostringstream msg;
    msg << "shape mismatch: " << ar << "x" << ac << " vs " << br << "x" << bc;
    throw SizeError(msg.str());
  }
}

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (rows, cols, sign) and live for the
// process lifetime. FFTW_UNALIGNED lets us execute on std::vector storage.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t rows, std::size_t cols, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(rows, cols, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> scratch(rows * cols);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), buf, buf,
                                      sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

void execute(std::vector<Complex>& data, std::size_t rows, std::size_t cols, int sign) {
  fftw_plan plan = PlanCache::instance().get(rows, cols, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

thread_local TransformCounts tl_counts;

}  // namespace

NonFiniteError::NonFiniteError(std::size_t row, std::size_t col)
    : Error("non-finite sample at (" + std::to_string(row) + ", " + std::to_string(col) + ")"),
      row_(row),
      col_(col) {}

Image2D::Image2D(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols) {
  check_dims(rows, cols, 2, "image");
  data_.assign(rows * cols, fill);
}

Image2D::Image2D(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_dims(rows, cols, 2, "image");
  if (data_.size() != rows * cols) {
    throw SizeError("image data length " + std::to_string(data_.size()) + " does not match " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void Image2D::require_finite() const {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) throw NonFiniteError(i / cols_, i % cols_);
  }
}

double Image2D::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Image2D::sum() const noexcept { return std::accumulate(data_.begin(), data_.end(), 0.0); }

double Image2D::mean() const noexcept { return sum() / static_cast<double>(data_.size()); }

Spectrum2D::Spectrum2D(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols, 1, "spectrum");
  data_.assign(rows * cols, Complex{});
}

Spectrum2D::Spectrum2D(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_dims(rows, cols, 1, "spectrum");
  if (data_.size() != rows * cols) {
    throw SizeError("spectrum data length " + std::to_string(data_.size()) +
                    " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

double Spectrum2D::max_abs() const noexcept {
  double m = 0.0;
  for (const Complex& v : data_) m = std::max(m, std::abs(v));
  return m;
}

Spectrum2D dft2(const Image2D& image) {
  image.require_finite();
  std::vector<Complex> buf(image.data().begin(), image.data().end());
  execute(buf, image.rows(), image.cols(), FFTW_FORWARD);
  ++tl_counts.forward;
  return Spectrum2D(image.rows(), image.cols(), std::move(buf));
}

Image2D idft2(const Spectrum2D& spectrum) {
  if (spectrum.rows() < 2 || spectrum.cols() < 2) {
    throw SizeError("idft2 needs at least a 2x2 spectrum to produce an image");
  }
  std::vector<Complex> buf(spectrum.data().begin(), spectrum.data().end());
  execute(buf, spectrum.rows(), spectrum.cols(), FFTW_BACKWARD);
  ++tl_counts.inverse;

  const double scale = 1.0 / static_cast<double>(buf.size());
  const double tolerance = kRealResidueTolerance * spectrum.max_abs();
  std::vector<double> out(buf.size());
  double residue = 0.0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    out[i] = buf[i].real() * scale;
    residue = std::max(residue, std::abs(buf[i].imag() * scale));
  }
  if (residue > tolerance) {
    std::ostringstream msg;
    msg << "inverse transform is not real: imaginary residue " << residue << " exceeds "
        << tolerance;
    throw NotRealError(msg.str());
  }
  return Image2D(spectrum.rows(), spectrum.cols(), std::move(out));
}

Spectrum2D fftshift(const Spectrum2D& spectrum) {
  const std::size_t rows = spectrum.rows();
  const std::size_t cols = spectrum.cols();
  Spectrum2D out(rows, cols);
  for (std::size_t x = 0; x < rows; ++x) {
    const std::size_t sx = (x + rows / 2) % rows;
    for (std::size_t y = 0; y < cols; ++y) {
      out(sx, (y + cols / 2) % cols) = spectrum(x, y);
    }
  }
  return out;
}

TransformCounts transform_counts() noexcept { return tl_counts; }

void reset_transform_counts() noexcept { tl_counts = {}; }

Image2D operator+(const Image2D& a, const Image2D& b) {
  check_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
  Image2D out = a;
  std::transform(a.data().begin(), a.data().end(), b.data().begin(), out.data().begin(),
                 std::plus<>{});
  return out;
}

Image2D operator-(const Image2D& a, const Image2D& b) {
  check_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
  Image2D out = a;
  std::transform(a.data().begin(), a.data().end(), b.data().begin(), out.data().begin(),
                 std::minus<>{});
  return out;
}

Image2D operator*(double scale, const Image2D& a) {
  Image2D out = a;
  for (double& v : out.data()) v *= scale;
  return out;
}

Image2D hadamard(const Image2D& a, const Image2D& b) {
  check_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
  Image2D out = a;
  std::transform(a.data().begin(), a.data().end(), b.data().begin(), out.data().begin(),
                 std::multiplies<>{});
  return out;
}

Spectrum2D operator-(const Spectrum2D& a, const Spectrum2D& b) {
  check_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
  Spectrum2D out = a;
  std::transform(a.data().begin(), a.data().end(), b.data().begin(), out.data().begin(),
                 std::minus<>{});
  return out;
}

}  // namespace ppsdft
