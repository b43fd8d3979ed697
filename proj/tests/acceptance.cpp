// Acceptance suite. Each criterion prints one PASS/FAIL line; with an integer
// argument only that criterion runs. Exit status is non-zero if any ran and failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "ppsdft/baselines.hpp"
#include "ppsdft/decomposition.hpp"
#include "ppsdft/io.hpp"
#include "ppsdft/render.hpp"
#include "ppsdft/synthetic.hpp"
#include "test_support.hpp"

using namespace ppsdft;
using ppsdft::testing::fixture_path;
using ppsdft::testing::max_abs_diff;
using ppsdft::testing::random_image;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Tolerances, fixed up front.
constexpr double kReconstructionTol = 1e-10;
constexpr double kMeanTol = 1e-10;
constexpr double kPoissonTol = 1e-8;
constexpr double kOracleSolveTol = 1e-8;
constexpr double kOracleDftTol = 1e-10;
constexpr double kHandTol = 1e-12;
constexpr double kMetricDropDb = 20.0;
constexpr double kPeakMatchTol = 0.01;
constexpr std::size_t kHannMinWidth = 3;
constexpr double kEdgeRatioMax = 0.2;
constexpr double kSweepSeconds = 10.0;

Image2D fixture(const char* name) {
  return generate(load_lattice_spec(fixture_path(name).string()));
}

// Every (M, N) in [2, 16]^2, three images each: 675 images, mixed parity.
template <typename F>
void for_each_sweep_image(F&& f) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> amplitude(0.5, 1000.0);
  for (int rep = 0; rep < 3; ++rep)
    for (std::size_t M = 2; M <= 16; ++M)
      for (std::size_t N = 2; N <= 16; ++N) {
        Image2D u = random_image(M, N, rng, 1.0);
        const double a = amplitude(rng);
        for (double& v : u.data()) v = a * (v + 1.5);  // positive intensities
        f(u);
      }
}

Outcome reconstruction_suite() {
  std::size_t count = 0, failures = 0;
  double worst_rec = 0.0, worst_mean = 0.0;
  bool dc_exact = true;
  const auto start = std::chrono::steady_clock::now();
  for_each_sweep_image([&](const Image2D& u) {
    ++count;
    const Decomposition d = decompose(u);
    const double rec = max_abs_diff(d.periodic + d.smooth, u) / std::max(1.0, u.max_abs());
    const double mean = std::abs(d.periodic.mean() - u.mean()) / std::abs(u.mean());
    const PeriodicSmoothSpectra ps = ps_spectra(u);
    dc_exact = dc_exact && ps.smooth(0, 0) == Complex(0.0, 0.0);
    worst_rec = std::max(worst_rec, rec);
    worst_mean = std::max(worst_mean, mean);
    if (rec > kReconstructionTol || mean > kMeanTol) ++failures;
  });
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {count >= 500 && failures == 0 && dc_exact && seconds < kSweepSeconds,
          std::to_string(count) + " images, worst |p+s-u| " + fmt(worst_rec) + ", worst mean rel " +
              fmt(worst_mean) + ", s_hat(0,0) exact " + (dc_exact ? "yes" : "no") + ", " +
              fmt(seconds) + " s"};
}

Outcome poisson_residual() {
  std::size_t count = 0, failures = 0;
  double worst = 0.0;
  for_each_sweep_image([&](const Image2D& u) {
    ++count;
    const Image2D b = compute_boundary_image(u).image();
    const double r =
        max_abs_diff(periodic_laplacian(decompose(u).smooth), b) / std::max(1.0, b.max_abs());
    worst = std::max(worst, r);
    if (r > kPoissonTol) ++failures;
  });
  return {failures == 0, std::to_string(count) + " images, worst residual " + fmt(worst)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  double worst_solve = 0.0;
  int solves = 0;
  for (; solves < 150; ++solves) {
    const Image2D u = random_image(size(rng), size(rng), rng, 10.0);
    const Image2D dense = oracle::dense_poisson_solve(compute_boundary_image(u));
    const Image2D fast = decompose(u).smooth;
    worst_solve = std::max(worst_solve, max_abs_diff(fast, dense) / dense.max_abs());
  }
  double worst_dft = 0.0;
  int dfts = 0;
  for (std::size_t M = 2; M <= 16; ++M)
    for (std::size_t N = 2; N <= 16; ++N, ++dfts) {
      const Image2D u = random_image(M, N, rng, 10.0);
      const Spectrum2D naive = oracle::naive_dft2(u);
      worst_dft = std::max(worst_dft, max_abs_diff(dft2(u), naive) / naive.max_abs());
    }
  return {worst_solve <= kOracleSolveTol && worst_dft <= kOracleDftTol,
          std::to_string(solves) + " dense solves, worst rel " + fmt(worst_solve) + "; " +
              std::to_string(dfts) + " naive DFTs, worst rel " + fmt(worst_dft)};
}

Outcome hand_derived_2x2() {
  using ppsdft::testing::image_from;
  const Image2D u = image_from(2, 2, {0, 1, 2, 3});
  const Image2D b_want = image_from(2, 2, {3, 1, -1, -3});
  const Image2D s_want = image_from(2, 2, {-0.75, -0.25, 0.25, 0.75});
  const Image2D p_want = image_from(2, 2, {0.75, 1.25, 1.75, 2.25});
  const BoundaryImage b = compute_boundary_image(u);
  const Decomposition d = decompose(u);
  const double eb = max_abs_diff(b.image(), b_want);
  const double es = max_abs_diff(d.smooth, s_want);
  const double ep = max_abs_diff(d.periodic, p_want);
  const double eo = max_abs_diff(oracle::dense_poisson_solve(b), s_want);
  const double err = std::max({eb, es, ep, eo});
  return {err <= kHandTol, "max error " + fmt(err) + " (b, spectral s, p, dense s)"};
}

Outcome artifact_reduction() {
  const LatticeSpec spec = load_lattice_spec(fixture_path("lattice_ramp64.json").string());
  const Image2D u = generate(spec);
  const Spectrum2D u_hat = dft2(u);
  const Spectrum2D p_hat = ps_spectra(u).periodic;
  const double drop = axis_artifact_metric(u_hat) - axis_artifact_metric(p_hat);

  double worst_peak = 0.0;
  for (const LatticeTerm& t : spec.terms) {
    const long kx = std::lround(t.fx * spec.rows), ky = std::lround(t.fy * spec.cols);
    for (int sign : {1, -1}) {
      const auto bx = static_cast<std::size_t>(((sign * kx) % 64 + 64) % 64);
      const auto by = static_cast<std::size_t>(((sign * ky) % 64 + 64) % 64);
      const double a = std::abs(u_hat(bx, by)), p = std::abs(p_hat(bx, by));
      worst_peak = std::max(worst_peak, std::abs(p - a) / a);
    }
  }
  return {drop >= kMetricDropDb && worst_peak <= kPeakMatchTol,
          "metric drop " + fmt(drop) + " dB (need >= 20), worst lattice peak change " +
              fmt(100 * worst_peak) + "% (need <= 1%)"};
}

// Strict 8-neighbour local maxima with |F| >= half the maximum, counted over
// the half plane 0 < ky < N/2 so conjugate peaks are not counted twice.
std::size_t half_max_peaks(const Spectrum2D& f) {
  const std::size_t M = f.rows(), N = f.cols();
  double peak = 0.0;
  for (std::size_t kx = 0; kx < M; ++kx)
    for (std::size_t ky = 1; ky < N / 2; ++ky) peak = std::max(peak, std::abs(f(kx, ky)));
  std::size_t count = 0;
  for (std::size_t kx = 0; kx < M; ++kx)
    for (std::size_t ky = 1; ky < N / 2; ++ky) {
      const double v = std::abs(f(kx, ky));
      if (v < 0.5 * peak) continue;
      bool is_max = true;
      for (int dx = -1; dx <= 1 && is_max; ++dx)
        for (int dy = -1; dy <= 1; ++dy) {
          if (dx == 0 && dy == 0) continue;
          if (std::abs(f((kx + M + dx) % M, (ky + N + dy) % N)) >= v) {
            is_max = false;
            break;
          }
        }
      count += is_max;
    }
  return count;
}

// Contiguous run of bins along kx (at the peak's ky) with |F| >= half the peak.
std::size_t half_max_width(const Spectrum2D& f, std::size_t ky) {
  const std::size_t M = f.rows();
  std::size_t best = 0;
  for (std::size_t kx = 0; kx < M; ++kx)
    if (std::abs(f(kx, ky)) > std::abs(f(best, ky))) best = kx;
  const double half = 0.5 * std::abs(f(best, ky));
  std::size_t width = 1;
  for (std::size_t step = 1; step < M && std::abs(f((best + step) % M, ky)) >= half; ++step) ++width;
  for (std::size_t step = 1; step < M && std::abs(f((best + M - step) % M, ky)) >= half; ++step) ++width;
  return std::min(width, M);
}

Outcome peak_sharpness() {
  const Image2D u = fixture("two_peak64.json");
  const Spectrum2D p_hat = ps_spectra(u).periodic;
  const Spectrum2D hann = windowed_dft(u, WindowSpec{WindowKind::hann});
  const std::size_t ps_peaks = half_max_peaks(p_hat);
  const std::size_t hann_peaks = half_max_peaks(hann);
  const std::size_t ps_width = half_max_width(p_hat, 6);
  const std::size_t hann_width = half_max_width(hann, 6);
  return {ps_peaks == 2 && hann_width >= kHannMinWidth,
          "P+S: " + std::to_string(ps_peaks) + " half-max maxima, width " + std::to_string(ps_width) +
              "; Hann: " + std::to_string(hann_peaks) + " half-max maxima, width " +
              std::to_string(hann_width) + " bins"};
}

double neighbourhood_peak(const Spectrum2D& f, long kx, long ky, long radius) {
  const long M = static_cast<long>(f.rows()), N = static_cast<long>(f.cols());
  double best = 0.0;
  for (long dx = -radius; dx <= radius; ++dx)
    for (long dy = -radius; dy <= radius; ++dy)
      best = std::max(best, std::abs(f(static_cast<std::size_t>(((kx + dx) % M + M) % M),
                                       static_cast<std::size_t>(((ky + dy) % N + N) % N))));
  return best;
}

Outcome edge_content() {
  const Image2D u = fixture("two_domain64.json");
  const Spectrum2D p_hat = ps_spectra(u).periodic;
  const Image2D window = make_window(WindowSpec{WindowKind::hann}, u.rows(), u.cols());
  Spectrum2D hann = dft2(hadamard(u, window));
  // Compare at equal coherent gain so the ratio reflects spatial weighting only.
  const double gain = window.mean();
  for (Complex& z : hann.data()) z /= gain;

  const double edge = neighbourhood_peak(hann, 16, -4, 2) / neighbourhood_peak(p_hat, 16, -4, 2);
  const double core = neighbourhood_peak(hann, 8, 12, 2) / neighbourhood_peak(p_hat, 8, 12, 2);
  const double edge_raw = edge * gain;
  return {edge < kEdgeRatioMax && edge_raw < kEdgeRatioMax,
          "edge-domain peak windowed/P+S " + fmt(edge) + " gain-matched (" + fmt(edge_raw) +
              " unscaled), core-domain " + fmt(core)};
}

Outcome symmetrization_suite() {
  std::mt19937_64 rng(88);
  bool shapes = true, zero_boundary = true;
  for (std::size_t M = 2; M <= 12; ++M)
    for (std::size_t N = 2; N <= 12; N += 5) {
      const Image2D v = symmetrize(random_image(M, N, rng, 100.0));
      shapes = shapes && v.rows() == 2 * M && v.cols() == 2 * N;
      zero_boundary = zero_boundary && compute_boundary_image(v).image() == Image2D(2 * M, 2 * N, 0.0);
    }
  const Image2D u = fixture("oblique64.json");  // cos(2 pi (3x + 5y) / 64)
  const Spectrum2D plain = dft2(u);
  const Spectrum2D sym = symmetrized_dft(u);
  // (3, -5) in the plain grid corresponds to (6, -10) in the doubled grid.
  const double plain_mirror = std::abs(plain(3, 64 - 5)) / plain.max_abs();
  const double sym_mirror = std::abs(sym(6, 128 - 10)) / sym.max_abs();
  const bool mirror = plain_mirror < 1e-10 && sym_mirror > 0.1;
  return {shapes && zero_boundary && mirror,
          std::string("2Mx2N ") + (shapes ? "ok" : "bad") + ", zero boundary " +
              (zero_boundary ? "ok" : "bad") + ", mirror peak rel. magnitude plain " +
              fmt(plain_mirror) + " vs symmetrized " + fmt(sym_mirror)};
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int shell(const std::string& cmd) { return std::system((cmd + " >/dev/null 2>&1").c_str()); }

Outcome cli_determinism() {
  const fs::path dir = ppsdft::testing::scratch_dir("acceptance_cli");
  const std::string cli = PPSDFT_CLI_PATH;
  std::size_t compared = 0, mismatched = 0;
  bool ok = true;
  for (const char* name : {"lattice_ramp64", "two_peak64", "two_domain64", "oblique64"}) {
    const fs::path img = dir / (std::string(name) + ".raw");
    ok = ok && shell(cli + " generate " + fixture_path(std::string(name) + ".json").string() +
                     " -o " + img.string()) == 0;
    const fs::path a = dir / (std::string(name) + "_a"), b = dir / (std::string(name) + "_b");
    ok = ok && shell(cli + " compare " + img.string() + " -o " + a.string()) == 0;
    ok = ok && shell(cli + " compare " + img.string() + " -o " + b.string()) == 0;
    if (!ok) break;
    for (const auto& entry : fs::directory_iterator(a)) {
      const auto ext = entry.path().extension();
      if (ext != ".raw" && ext != ".csv" && ext != ".json" && ext != ".png") continue;
      ++compared;
      if (read_bytes(entry.path()) != read_bytes(b / entry.path().filename())) ++mismatched;
    }
  }
  fs::remove_all(dir);
  return {ok && compared > 0 && mismatched == 0,
          std::string("CLI runs ") + (ok ? "ok" : "FAILED") + ", " + std::to_string(compared) +
              " files compared, " + std::to_string(mismatched) + " differ"};
}

Outcome cost_contract() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"lattice_ramp64.json", "two_domain64.json"}) {
    const Image2D u = fixture(name);
    reset_transform_counts();
    (void)ps_spectra(u);
    const TransformCounts c = transform_counts();
    ok = ok && c.forward == 2 && c.inverse == 0;
    detail += (detail.empty() ? "" : "; ") + std::string(name) + ": " + std::to_string(c.forward) +
              " forward, " + std::to_string(c.inverse) + " inverse";
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "reconstruction suite", reconstruction_suite},
      {2, "Poisson residual", poisson_residual},
      {3, "oracle equivalence", oracle_equivalence},
      {4, "hand-derived 2x2 case", hand_derived_2x2},
      {5, "artifact-reduction regression", artifact_reduction},
      {6, "peak sharpness vs Hann", peak_sharpness},
      {7, "edge-content preservation", edge_content},
      {8, "symmetrization suite", symmetrization_suite},
      {9, "CLI determinism", cli_determinism},
      {10, "cost contract", cost_contract},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all_pass = true;
  int ran = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    char label[8];
    std::snprintf(label, sizeof label, "AC%02d", c.id);
    std::cout << label << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << c.title << ": " << o.detail
              << std::endl;
  }
  if (ran == 0) {
    std::cerr << "no criterion with id " << only << '\n';
    return 2;
  }
  return all_pass ? 0 : 1;
}
