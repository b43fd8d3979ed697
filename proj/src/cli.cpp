#include "ppsdft/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>
#include <sstream>

#include "CLI11.hpp"
#include "ppsdft/baselines.hpp"
#include "ppsdft/decomposition.hpp"
#include "ppsdft/io.hpp"
#include "ppsdft/render.hpp"
#include "ppsdft/synthetic.hpp"

namespace ppsdft {

namespace fs = std::filesystem;

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  throw ArgumentError("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::raw:
      return "raw";
    case Method::ps:
      return "ps";
    case Method::hann:
      return "hann";
    case Method::flattop:
      return "flattop";
    case Method::symmetrize:
      return "symmetrize";
  }
  return "unknown";
}

Spectrum2D method_spectrum(const Image2D& input, Method method, bool pre_subtract_mean) {
  Image2D u = input;
  if (pre_subtract_mean) {
    const double mean = u.mean();
    for (double& v : u.data()) v -= mean;
  }
  switch (method) {
    case Method::raw:
      return dft2(u);
    case Method::ps:
      return ps_spectra(u).periodic;
    case Method::hann:
      return windowed_dft(u, WindowSpec{WindowKind::hann});
    case Method::flattop:
      return windowed_dft(u, WindowSpec{WindowKind::flattop});
    case Method::symmetrize:
      return symmetrized_dft(u);
  }
  throw ArgumentError("unknown method");
}

namespace {

const std::vector<std::string> kMethodNames = {"raw", "ps", "hann", "flattop", "symmetrize"};

Image2D load_input(const std::string& path) {
  return load_image(RasterFile{path, infer_format(path)});
}

SpectrumRender make_render(const Spectrum2D& spectrum, double eps, double crop) {
  SpectrumRender render = log_magnitude(spectrum, eps);
  return crop < 1.0 ? crop_center(render, crop) : render;
}

// "-o-p"/"-o-s" are not valid CLI11 option names; map them to long forms.
std::vector<std::string> normalize_args(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  out.reserve(args.size());
  for (const std::string& a : args) {
    if (a == "-o-p") {
      out.emplace_back("--out-p");
    } else if (a == "-o-s") {
      out.emplace_back("--out-s");
    } else {
      out.push_back(a);
    }
  }
  return out;
}

struct Options {
  std::string input;
  std::string output;
  std::string out_p;
  std::string out_s;
  std::string method = "ps";
  bool pre_subtract_mean = false;
  double crop = 1.0;
  double eps = kDefaultEpsRel;
  std::size_t bins = 32;
  std::size_t guard = kDefaultMetricGuard;
  bool magnitude = false;
};

int run_fft(const Options& o) {
  const Image2D u = load_input(o.input);
  const SpectrumRender render =
      make_render(method_spectrum(u, parse_method(o.method), o.pre_subtract_mean), o.eps, o.crop);
  save_render(render, RasterFile{o.output, infer_format(o.output)});
  return 0;
}

int run_decompose(const Options& o) {
  const Image2D u = load_input(o.input);
  const Decomposition d = decompose(u);
  save_image(d.periodic, RasterFile{o.out_p, RasterFormat::raw_f64});
  save_image(d.smooth, RasterFile{o.out_s, RasterFormat::raw_f64});
  return 0;
}

int run_radial(const Options& o) {
  const Image2D u = load_input(o.input);
  const RadialProfile profile =
      radial_profile(method_spectrum(u, parse_method(o.method), o.pre_subtract_mean), o.bins,
                     o.magnitude ? Intensity::magnitude : Intensity::power, u.pixel_size);
  write_profile_csv(profile, o.output);
  return 0;
}

int run_metric(const Options& o, std::ostream& out) {
  const Image2D u = load_input(o.input);
  out << format_double(axis_artifact_metric(method_spectrum(u, parse_method(o.method), o.pre_subtract_mean),
                                            o.guard))
      << '\n';
  return 0;
}

int run_compare(const Options& o) {
  const Image2D u = load_input(o.input);
  const fs::path dir = o.output;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());

  std::ostringstream summary;
  summary << "method,axis_metric_db,rows,cols\n";
  for (Method m : kAllMethods) {
    const std::string name(to_string(m));
    const Spectrum2D spectrum = method_spectrum(u, m, o.pre_subtract_mean);
    save_render(make_render(spectrum, o.eps, o.crop),
                RasterFile{dir / ("render_" + name + ".png"), RasterFormat::png8});
    write_profile_csv(radial_profile(spectrum, o.bins,
                                     o.magnitude ? Intensity::magnitude : Intensity::power,
                                     u.pixel_size),
                      dir / ("radial_" + name + ".csv"));
    summary << name << ',' << format_double(axis_artifact_metric(spectrum, o.guard)) << ','
            << spectrum.rows() << ',' << spectrum.cols() << '\n';
  }
  const Decomposition d = decompose(u);
  save_image(d.periodic, RasterFile{dir / "periodic.raw", RasterFormat::raw_f64});
  save_image(d.smooth, RasterFile{dir / "smooth.raw", RasterFormat::raw_f64});

  std::ofstream csv(dir / "metrics.csv", std::ios::trunc);
  if (!csv) throw IoError("cannot write '" + (dir / "metrics.csv").string() + "'");
  csv << summary.str();
  return 0;
}

int run_generate(const Options& o) {
  const Image2D u = generate(load_lattice_spec(o.input));
  save_image(u, RasterFile{o.output, infer_format(o.output)});
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary-artifact-free 2D Fourier transforms of lattice images", "ppsdft"};
  app.require_subcommand(1);
  Options o;

  auto add_method = [&](CLI::App* sub) {
    sub->add_option("--method", o.method, "raw, ps, hann, flattop or symmetrize")
        ->transform(CLI::IsMember(kMethodNames, CLI::ignore_case));
    sub->add_flag("--pre-subtract-mean", o.pre_subtract_mean, "Remove the image mean first");
  };
  auto add_render = [&](CLI::App* sub) {
    sub->add_option("--crop", o.crop, "Central fraction of the spectrum to keep, in (0, 1]")
        ->check(CLI::Validator(
            [](std::string& s) {
              double v = 0.0;
              if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0 && v <= 1.0)) {
                return std::string("must be a number in (0, 1]");
              }
              return std::string{};
            },
            "FRAC"));
    sub->add_option("--eps", o.eps, "Log floor relative to the peak magnitude")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* fft = app.add_subcommand("fft", "Render the log-magnitude spectrum of an image");
  fft->add_option("input", o.input)->required();
  fft->add_option("-o,--output", o.output, "Output image")->required();
  add_method(fft);
  add_render(fft);

  CLI::App* dec = app.add_subcommand("decompose", "Write periodic and smooth components");
  dec->add_option("input", o.input)->required();
  dec->add_option("--out-p", o.out_p, "Periodic component (raw-f64), also -o-p")->required();
  dec->add_option("--out-s", o.out_s, "Smooth component (raw-f64), also -o-s")->required();

  CLI::App* rad = app.add_subcommand("radial", "Write a radial intensity profile as CSV");
  rad->add_option("input", o.input)->required();
  rad->add_option("-o,--output", o.output, "Output CSV")->required();
  rad->add_option("--bins", o.bins, "Number of radial bins")->check(CLI::PositiveNumber);
  rad->add_flag("--magnitude", o.magnitude, "Average |F| instead of |F|^2");
  add_method(rad);

  CLI::App* met = app.add_subcommand("metric", "Print the axis-artifact metric in dB");
  met->add_option("input", o.input)->required();
  met->add_option("--guard", o.guard, "Bins around DC excluded from the axes");
  add_method(met);

  CLI::App* cmp = app.add_subcommand("compare", "Renders, profiles and metrics for all methods");
  cmp->add_option("input", o.input)->required();
  cmp->add_option("-o,--output", o.output, "Output directory")->required();
  cmp->add_option("--bins", o.bins, "Number of radial bins")->check(CLI::PositiveNumber);
  cmp->add_option("--guard", o.guard, "Bins around DC excluded from the axes");
  cmp->add_flag("--magnitude", o.magnitude, "Average |F| instead of |F|^2");
  cmp->add_flag("--pre-subtract-mean", o.pre_subtract_mean, "Remove the image mean first");
  add_render(cmp);

  CLI::App* gen = app.add_subcommand("generate", "Generate a synthetic lattice image");
  gen->add_option("spec", o.input, "Lattice spec JSON")->required();
  gen->add_option("-o,--output", o.output, "Output image")->required();

  std::vector<std::string> args = normalize_args(raw_args);
  std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 parses a reversed vector
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*fft) return run_fft(o);
    if (*dec) return run_decompose(o);
    if (*rad) return run_radial(o);
    if (*met) return run_metric(o, out);
    if (*cmp) return run_compare(o);
    if (*gen) return run_generate(o);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace ppsdft
