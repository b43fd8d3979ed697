#pragma once

// Synthetic lattice images: sums of cosines, optionally confined to a
// rectangular domain, plus a linear ramp and seeded Gaussian noise.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppsdft/core.hpp"
#include "json.hpp"

namespace ppsdft {

/// Half-open pixel rectangle [row_begin, row_end) x [col_begin, col_end).
struct Region {
  std::size_t row_begin = 0;
  std::size_t row_end = 0;
  std::size_t col_begin = 0;
  std::size_t col_end = 0;

  bool contains(std::size_t x, std::size_t y) const noexcept {
    return x >= row_begin && x < row_end && y >= col_begin && y < col_end;
  }
};

/// amplitude * cos(2 pi (fx x + fy y) + phase); fx, fy in cycles/pixel.
struct LatticeTerm {
  double fx = 0.0;
  double fy = 0.0;
  double amplitude = 1.0;
  double phase = 0.0;
  std::optional<Region> region;
};

struct LatticeSpec {
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::vector<LatticeTerm> terms;
  /// Added ramp gx * x + gy * y.
  double ramp_x = 0.0;
  double ramp_y = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Term with an integer number of cycles across the image.
LatticeTerm cycles_term(const LatticeSpec& spec, long kx, long ky, double amplitude = 1.0,
                        double phase = 0.0);

/// Throws ArgumentError for frequencies beyond Nyquist (|f| > 0.5), bad
/// regions or negative sigma; SizeError for images below 2x2.
void validate(const LatticeSpec& spec);

Image2D generate(const LatticeSpec& spec);

/// JSON form:
/// {"rows":64,"cols":64,
///  "terms":[{"fx":0.1,"fy":0.2,"amplitude":1,"phase":0,
///            "region":{"row_begin":0,"row_end":8,"col_begin":0,"col_end":64}},
///           {"cycles":[12,5]}],
///  "ramp":[0.25,0.15],"noise_sigma":0,"seed":1}
/// "cycles" is an alternative to fx/fy giving integer cycles per image.
LatticeSpec lattice_spec_from_json(const nlohmann::json& j);
LatticeSpec load_lattice_spec(const std::string& path);

}  // namespace ppsdft
