#include "ppsdft/io.hpp"

#include <png.h>
#include <tiffio.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace ppsdft {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kMetadataKey = "ppsdft-mapping";

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    throw IoError("cannot open '" + path.string() + "': " + std::strerror(errno));
  }
  return f;
}

std::string describe_mapping(const IntensityMapping& m, unsigned full_scale) {
  std::ostringstream out;
  out << "minmax min=" << format_double(m.min) << " max=" << format_double(m.max)
      << " full_scale=" << full_scale;
  return out.str();
}

// Gray samples ready for an integer container, with their bit depth.
struct GraySamples {
  std::size_t rows = 0;
  std::size_t cols = 0;
  int bit_depth = 8;
  std::vector<std::uint16_t> values;
  std::string description;
};

// ---------------------------------------------------------------- PNG

struct PngErrorState {
  std::jmp_buf jump;
  char message[256] = {};
};

void png_error_handler(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof state->message, "%s", msg);
  std::longjmp(state->jump, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

// The setjmp frames below only hold trivially destructible locals and
// objects constructed before setjmp.
Image2D read_png(const fs::path& path) {
  FilePtr file = open_file(path, "rb");
  unsigned char signature[8];
  if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
    throw IoError("'" + path.string() + "' is not a PNG file");
  }

  PngErrorState state;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state, png_error_handler,
                                           png_warning_handler);
  if (png == nullptr) throw IoError("libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  std::vector<unsigned char> pixels;
  std::vector<png_bytep> row_ptrs;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;

  if (setjmp(state.jump)) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("failed to read '" + path.string() + "': " + state.message);
  }
  if (info == nullptr) png_error(png, "cannot allocate info struct");

  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);
  if (color_type != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("'" + path.string() + "' is not a single-channel grayscale PNG");
  }
  if (bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
    bit_depth = 8;
  }
  png_read_update_info(png, info);
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  pixels.resize(row_bytes * height);
  row_ptrs.resize(height);
  for (png_uint_32 r = 0; r < height; ++r) row_ptrs[r] = pixels.data() + r * row_bytes;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  if (height < 2 || width < 2) throw SizeError("image '" + path.string() + "' is smaller than 2x2");
  std::vector<double> data(static_cast<std::size_t>(width) * height);
  for (std::size_t r = 0; r < height; ++r) {
    const unsigned char* row = pixels.data() + r * row_bytes;
    for (std::size_t c = 0; c < width; ++c) {
      data[r * width + c] = bit_depth == 16
                                ? static_cast<double>((row[2 * c] << 8) | row[2 * c + 1])
                                : static_cast<double>(row[c]);
    }
  }
  return Image2D(height, width, std::move(data));
}

void write_png(const fs::path& path, const GraySamples& samples) {
  FilePtr file = open_file(path, "wb");
  const std::size_t bytes_per = samples.bit_depth == 16 ? 2 : 1;
  const std::size_t row_bytes = samples.cols * bytes_per;
  std::vector<unsigned char> pixels(row_bytes * samples.rows);
  for (std::size_t i = 0; i < samples.values.size(); ++i) {
    if (bytes_per == 2) {
      pixels[2 * i] = static_cast<unsigned char>(samples.values[i] >> 8);
      pixels[2 * i + 1] = static_cast<unsigned char>(samples.values[i] & 0xff);
    } else {
      pixels[i] = static_cast<unsigned char>(samples.values[i]);
    }
  }
  std::vector<png_bytep> row_ptrs(samples.rows);
  for (std::size_t r = 0; r < samples.rows; ++r) row_ptrs[r] = pixels.data() + r * row_bytes;
  std::string key = kMetadataKey;
  std::string text = samples.description;

  PngErrorState state;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &state, png_error_handler,
                                            png_warning_handler);
  if (png == nullptr) throw IoError("libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  png_text chunk{};

  if (setjmp(state.jump)) {
    png_destroy_write_struct(&png, &info);
    throw IoError("failed to write '" + path.string() + "': " + state.message);
  }
  if (info == nullptr) png_error(png, "cannot allocate info struct");

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(samples.cols),
               static_cast<png_uint_32>(samples.rows), samples.bit_depth, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  chunk.compression = PNG_TEXT_COMPRESSION_NONE;
  chunk.key = key.data();
  chunk.text = text.data();
  chunk.text_length = text.size();
  png_set_text(png, info, &chunk, 1);
  // Fixed settings so identical inputs give identical bytes.
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

// --------------------------------------------------------------- TIFF

struct TiffCloser {
  void operator()(TIFF* t) const noexcept {
    if (t != nullptr) TIFFClose(t);
  }
};
using TiffPtr = std::unique_ptr<TIFF, TiffCloser>;

void silence_libtiff() {
  static const bool once = [] {
    TIFFSetErrorHandler(nullptr);
    TIFFSetWarningHandler(nullptr);
    return true;
  }();
  (void)once;
}

double tiff_sample(const unsigned char* row, std::size_t c, std::uint16_t bits,
                   std::uint16_t format) {
  auto load = [&]<typename T>(T) {
    T v;
    std::memcpy(&v, row + c * sizeof(T), sizeof(T));
    return static_cast<double>(v);
  };
  if (format == SAMPLEFORMAT_IEEEFP) {
    if (bits == 32) return load(float{});
    if (bits == 64) return load(double{});
  } else if (format == SAMPLEFORMAT_INT) {
    if (bits == 8) return load(std::int8_t{});
    if (bits == 16) return load(std::int16_t{});
    if (bits == 32) return load(std::int32_t{});
  } else {
    if (bits == 8) return load(std::uint8_t{});
    if (bits == 16) return load(std::uint16_t{});
    if (bits == 32) return load(std::uint32_t{});
  }
  throw IoError("unsupported TIFF sample layout");
}

Image2D read_tiff(const fs::path& path) {
  silence_libtiff();
  TiffPtr tif(TIFFOpen(path.c_str(), "r"));
  if (!tif) throw IoError("cannot open TIFF '" + path.string() + "'");

  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint16_t spp = 1;
  std::uint16_t bits = 8;
  std::uint16_t format = SAMPLEFORMAT_UINT;
  TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &width);
  TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &height);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLESPERPIXEL, &spp);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_BITSPERSAMPLE, &bits);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLEFORMAT, &format);
  if (spp != 1) throw IoError("'" + path.string() + "' is not a single-channel TIFF");
  if (TIFFIsTiled(tif.get())) throw IoError("tiled TIFF files are not supported");
  if (height < 2 || width < 2) throw SizeError("image '" + path.string() + "' is smaller than 2x2");

  std::vector<unsigned char> line(static_cast<std::size_t>(TIFFScanlineSize(tif.get())));
  if (line.size() < static_cast<std::size_t>(width) * bits / 8) {
    throw IoError("unsupported TIFF sample layout");
  }
  std::vector<double> data(static_cast<std::size_t>(width) * height);
  for (std::uint32_t r = 0; r < height; ++r) {
    if (TIFFReadScanline(tif.get(), line.data(), r, 0) < 0) {
      throw IoError("failed to read row " + std::to_string(r) + " of '" + path.string() + "'");
    }
    for (std::size_t c = 0; c < width; ++c) {
      data[r * width + c] = tiff_sample(line.data(), c, bits, format);
    }
  }
  return Image2D(height, width, std::move(data));
}

void write_tiff(const fs::path& path, const GraySamples& samples) {
  silence_libtiff();
  TiffPtr tif(TIFFOpen(path.c_str(), "w"));
  if (!tif) throw IoError("cannot open '" + path.string() + "' for writing");
  TIFF* t = tif.get();
  TIFFSetField(t, TIFFTAG_IMAGEWIDTH, static_cast<std::uint32_t>(samples.cols));
  TIFFSetField(t, TIFFTAG_IMAGELENGTH, static_cast<std::uint32_t>(samples.rows));
  TIFFSetField(t, TIFFTAG_SAMPLESPERPIXEL, 1);
  TIFFSetField(t, TIFFTAG_BITSPERSAMPLE, 16);
  TIFFSetField(t, TIFFTAG_SAMPLEFORMAT, SAMPLEFORMAT_UINT);
  TIFFSetField(t, TIFFTAG_PHOTOMETRIC, PHOTOMETRIC_MINISBLACK);
  TIFFSetField(t, TIFFTAG_PLANARCONFIG, PLANARCONFIG_CONTIG);
  TIFFSetField(t, TIFFTAG_COMPRESSION, COMPRESSION_NONE);
  TIFFSetField(t, TIFFTAG_ROWSPERSTRIP, 1);
  TIFFSetField(t, TIFFTAG_IMAGEDESCRIPTION, samples.description.c_str());
  std::vector<std::uint16_t> line(samples.cols);
  for (std::size_t r = 0; r < samples.rows; ++r) {
    std::copy_n(samples.values.begin() + static_cast<std::ptrdiff_t>(r * samples.cols),
                samples.cols, line.begin());
    if (TIFFWriteScanline(t, line.data(), static_cast<std::uint32_t>(r), 0) < 0) {
      throw IoError("failed to write '" + path.string() + "'");
    }
  }
}

// ---------------------------------------------------------------- raw

void write_raw(const fs::path& path, std::size_t rows, std::size_t cols,
               std::span<const double> values, std::optional<double> pixel_size) {
  std::vector<unsigned char> bytes(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = static_cast<unsigned char>(bits >> (8 * b));
  }
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed to write '" + path.string() + "'");
  }

  json sidecar = {{"rows", rows},
                  {"cols", cols},
                  {"dtype", "float64"},
                  {"byte_order", "little-endian"}};
  if (pixel_size) sidecar["pixel_size"] = *pixel_size;
  std::ofstream meta(sidecar_path(path), std::ios::trunc);
  if (!meta) throw IoError("cannot open '" + sidecar_path(path).string() + "' for writing");
  meta << sidecar.dump(2) << '\n';
  if (!meta) throw IoError("failed to write '" + sidecar_path(path).string() + "'");
}

Image2D read_raw(const fs::path& path) {
  const fs::path meta_path = sidecar_path(path);
  std::ifstream meta(meta_path);
  if (!meta) throw IoError("missing sidecar '" + meta_path.string() + "'");
  json sidecar;
  try {
    meta >> sidecar;
  } catch (const json::exception& e) {
    throw IoError("malformed sidecar '" + meta_path.string() + "': " + e.what());
  }

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::optional<double> pixel_size;
  try {
    rows = sidecar.at("rows").get<std::size_t>();
    cols = sidecar.at("cols").get<std::size_t>();
    const std::string order = sidecar.value("byte_order", std::string("little-endian"));
    if (order != "little-endian") throw IoError("unsupported byte order '" + order + "'");
    if (sidecar.contains("dtype") && sidecar["dtype"] != "float64") {
      throw IoError("unsupported dtype in '" + meta_path.string() + "'");
    }
    if (sidecar.contains("pixel_size")) pixel_size = sidecar["pixel_size"].get<double>();
  } catch (const json::exception& e) {
    throw IoError("malformed sidecar '" + meta_path.string() + "': " + e.what());
  }
  if (rows < 2 || cols < 2) throw SizeError("raw image '" + path.string() + "' is smaller than 2x2");

  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() != rows * cols * 8) {
    throw IoError("'" + path.string() + "' holds " + std::to_string(bytes.size()) +
                  " bytes, sidecar implies " + std::to_string(rows * cols * 8));
  }
  std::vector<double> data(rows * cols);
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[i * 8 + b]) << (8 * b);
    data[i] = std::bit_cast<double>(bits);
  }
  Image2D image(rows, cols, std::move(data));
  image.pixel_size = pixel_size;
  return image;
}

GraySamples quantize(std::size_t rows, std::size_t cols, std::span<const double> values,
                     int bit_depth, double lo, double hi) {
  GraySamples s;
  s.rows = rows;
  s.cols = cols;
  s.bit_depth = bit_depth;
  s.values.resize(values.size());
  const double full = bit_depth == 16 ? 65535.0 : 255.0;
  const double range = hi - lo;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double t = range > 0.0 ? (values[i] - lo) / range : 0.0;
    s.values[i] = static_cast<std::uint16_t>(std::lround(std::clamp(t, 0.0, 1.0) * full));
  }
  return s;
}

void write_integer(const RasterFile& file, const GraySamples& samples) {
  if (file.format == RasterFormat::tiff_gray) {
    write_tiff(file.path, samples);
  } else {
    write_png(file.path, samples);
  }
}

int depth_for(RasterFormat format) { return format == RasterFormat::png8 ? 8 : 16; }

}  // namespace

std::string_view to_string(RasterFormat format) noexcept {
  switch (format) {
    case RasterFormat::png8:
      return "png8";
    case RasterFormat::png16:
      return "png16";
    case RasterFormat::tiff_gray:
      return "tiff-gray";
    case RasterFormat::raw_f64:
      return "raw-f64";
  }
  return "unknown";
}

RasterFormat infer_format(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".png") return RasterFormat::png8;
  if (ext == ".tif" || ext == ".tiff") return RasterFormat::tiff_gray;
  return RasterFormat::raw_f64;
}

fs::path sidecar_path(const fs::path& raw_path) {
  fs::path p = raw_path;
  p += ".json";
  return p;
}

Image2D load_image(const RasterFile& file) {
  switch (file.format) {
    case RasterFormat::png8:
    case RasterFormat::png16:
      return read_png(file.path);
    case RasterFormat::tiff_gray:
      return read_tiff(file.path);
    case RasterFormat::raw_f64:
      return read_raw(file.path);
  }
  throw IoError("unknown raster format");
}

IntensityMapping save_image(const Image2D& image, const RasterFile& file) {
  const auto values = image.data();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  IntensityMapping mapping{*lo, *hi};
  if (file.format == RasterFormat::raw_f64) {
    write_raw(file.path, image.rows(), image.cols(), values, image.pixel_size);
    return mapping;
  }
  image.require_finite();
  const int depth = depth_for(file.format);
  GraySamples samples = quantize(image.rows(), image.cols(), values, depth, mapping.min, mapping.max);
  samples.description = describe_mapping(mapping, depth == 16 ? 65535U : 255U);
  write_integer(file, samples);
  return mapping;
}

void save_render(const SpectrumRender& render, const RasterFile& file) {
  if (file.format == RasterFormat::raw_f64) {
    write_raw(file.path, render.rows, render.cols, render.values, std::nullopt);
    return;
  }
  const int depth = depth_for(file.format);
  GraySamples samples = quantize(render.rows, render.cols, render.values, depth, 0.0, 1.0);
  std::ostringstream desc;
  desc << "log-magnitude render eps_rel=" << format_double(render.eps_rel)
       << " dc=" << render.dc_row << "," << render.dc_col << " crop_origin=" << render.crop_row
       << "," << render.crop_col;
  samples.description = desc.str();
  write_integer(file, samples);
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_profile_csv(const RadialProfile& profile, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "radius,mean_intensity,count\n";
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    const double center = 0.5 * (profile.bin_edges[i] + profile.bin_edges[i + 1]);
    out << format_double(center) << ',' << format_double(profile.mean_intensity[i]) << ','
        << profile.counts[i] << '\n';
  }
  if (!out) throw IoError("failed to write '" + path.string() + "'");
}

}  // namespace ppsdft
