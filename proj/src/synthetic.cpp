#include "ppsdft/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "ppsdft/io.hpp"

namespace ppsdft {

using json = nlohmann::json;

LatticeTerm cycles_term(const LatticeSpec& spec, long kx, long ky, double amplitude,
                        double phase) {
  LatticeTerm t;
  t.fx = static_cast<double>(kx) / static_cast<double>(spec.rows);
  t.fy = static_cast<double>(ky) / static_cast<double>(spec.cols);
  t.amplitude = amplitude;
  t.phase = phase;
  return t;
}

void validate(const LatticeSpec& spec) {
  if (spec.rows < 2 || spec.cols < 2) throw SizeError("lattice image must be at least 2x2");
  for (const LatticeTerm& t : spec.terms) {
    if (!(std::abs(t.fx) <= 0.5) || !(std::abs(t.fy) <= 0.5)) {
      throw ArgumentError("lattice frequency (" + format_double(t.fx) + ", " +
                          format_double(t.fy) + ") exceeds Nyquist");
    }
    if (!std::isfinite(t.amplitude) || !std::isfinite(t.phase)) {
      throw ArgumentError("lattice term amplitude/phase must be finite");
    }
    if (t.region) {
      const Region& r = *t.region;
      if (r.row_begin >= r.row_end || r.col_begin >= r.col_end || r.row_end > spec.rows ||
          r.col_end > spec.cols) {
        throw ArgumentError("lattice term region is empty or outside the image");
      }
    }
  }
  if (!std::isfinite(spec.ramp_x) || !std::isfinite(spec.ramp_y)) {
    throw ArgumentError("ramp gradient must be finite");
  }
  if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
    throw ArgumentError("noise sigma must be a finite non-negative number");
  }
}

Image2D generate(const LatticeSpec& spec) {
  validate(spec);
  Image2D u(spec.rows, spec.cols);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t x = 0; x < spec.rows; ++x) {
    for (std::size_t y = 0; y < spec.cols; ++y) {
      const auto fx = static_cast<double>(x);
      const auto fy = static_cast<double>(y);
      double v = spec.ramp_x * fx + spec.ramp_y * fy;
      for (const LatticeTerm& t : spec.terms) {
        if (t.region && !t.region->contains(x, y)) continue;
        v += t.amplitude * std::cos(two_pi * (t.fx * fx + t.fy * fy) + t.phase);
      }
      u(x, y) = v;
    }
  }
  if (spec.noise_sigma > 0.0) {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, spec.noise_sigma);
    for (double& v : u.data()) v += noise(rng);
  }
  return u;
}

LatticeSpec lattice_spec_from_json(const json& j) {
  try {
    LatticeSpec spec;
    spec.rows = j.at("rows").get<std::size_t>();
    spec.cols = j.at("cols").get<std::size_t>();
    if (j.contains("ramp")) {
      const auto& ramp = j["ramp"];
      spec.ramp_x = ramp.at(0).get<double>();
      spec.ramp_y = ramp.at(1).get<double>();
    }
    spec.noise_sigma = j.value("noise_sigma", 0.0);
    spec.seed = j.value("seed", std::uint64_t{0});
    for (const json& jt : j.value("terms", json::array())) {
      const double amplitude = jt.value("amplitude", 1.0);
      const double phase = jt.value("phase", 0.0);
      LatticeTerm t;
      if (jt.contains("cycles")) {
        t = cycles_term(spec, jt["cycles"].at(0).get<long>(), jt["cycles"].at(1).get<long>(),
                        amplitude, phase);
      } else {
        t.fx = jt.at("fx").get<double>();
        t.fy = jt.at("fy").get<double>();
        t.amplitude = amplitude;
        t.phase = phase;
      }
      if (jt.contains("region")) {
        const json& r = jt["region"];
        t.region = Region{r.at("row_begin").get<std::size_t>(), r.at("row_end").get<std::size_t>(),
                          r.at("col_begin").get<std::size_t>(), r.at("col_end").get<std::size_t>()};
      }
      spec.terms.push_back(t);
    }
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed lattice spec: ") + e.what());
  }
}

LatticeSpec load_lattice_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lattice spec '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ArgumentError("malformed lattice spec '" + path + "': " + e.what());
  }
  return lattice_spec_from_json(j);
}

}  // namespace ppsdft
