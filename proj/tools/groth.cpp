// Command-line front end: weights, normalization checks, correlations,
// kernels, Nanson tests, exact sampling, and limit shapes.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <mutex>
#include <thread>

#include "groth/io.hpp"
#include "groth/limitshape.hpp"
#include "groth/measures.hpp"
#include "groth/pmap.hpp"
#include "groth/sampler.hpp"
#include "groth/schur2d.hpp"
#include "groth/svg.hpp"

namespace {

using namespace groth;

constexpr int kExitUsage = 2;
constexpr int kExitRegime = 3;
constexpr int kExitNumeric = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_flag_rational(const std::string& value, const std::string& flag) {
  try {
    return parse_rational(value);
  } catch (const std::invalid_argument&) {
    throw UsageError("flag " + flag + ": malformed rational '" + value + "'");
  }
}

std::vector<Rational> parse_flag_rationals(const std::string& value, const std::string& flag) {
  std::vector<Rational> out;
  std::stringstream ss(value);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_flag_rational(tok, flag));
  if (out.empty()) throw UsageError("flag " + flag + ": empty list");
  return out;
}

struct ParamFlags {
  int n = 2;
  std::string x, y, beta;
  std::string xs, ys, betas;
  bool schur = false;

  void attach(CLI::App* cmd, bool with_n = true) {
    if (with_n) cmd->add_option("--n", n, "number of parts N");
    cmd->add_option("--x", x, "homogeneous x parameter, e.g. 1/3");
    cmd->add_option("--y", y, "homogeneous y parameter");
    cmd->add_option("--beta", beta, "homogeneous beta parameter");
    cmd->add_option("--xs", xs, "comma-separated x parameters (overrides --x)");
    cmd->add_option("--ys", ys, "comma-separated y parameters");
    cmd->add_option("--betas", betas, "comma-separated beta parameters");
    cmd->add_flag("--schur", schur, "force beta = 0 (Schur measure)");
  }

  GrothendieckModel model() const {
    std::vector<Rational> xv, yv, bv;
    if (!xs.empty())
      xv = parse_flag_rationals(xs, "--xs");
    else if (!x.empty())
      xv.assign(std::size_t(n), parse_flag_rational(x, "--x"));
    else
      throw UsageError("need --x or --xs");
    if (!ys.empty())
      yv = parse_flag_rationals(ys, "--ys");
    else if (!y.empty())
      yv.assign(std::size_t(n), parse_flag_rational(y, "--y"));
    else
      throw UsageError("need --y or --ys");
    const std::size_t nn = xv.size();
    if (schur)
      bv.assign(nn - 1, Rational(0));
    else if (!betas.empty())
      bv = parse_flag_rationals(betas, "--betas");
    else if (!beta.empty())
      bv.assign(nn - 1, parse_flag_rational(beta, "--beta"));
    else
      throw UsageError("need --beta, --betas, or --schur");
    return GrothendieckModel(std::move(xv), std::move(yv), std::move(bv));
  }
};

std::string rational_report(const Rational& r) {
  std::ostringstream out;
  out.precision(15);
  out << to_string(r) << " = " << to_double(r);
  return out.str();
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("GROTH_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

// ---------------------------------------------------------------------------

int cmd_weight(const ParamFlags& pf, const std::string& lambda_csv) {
  GrothendieckModel m = pf.model();
  const Partition lam = parse_partition(lambda_csv);
  const Rational w = grothendieck_weight(lam, m);
  std::cout << "weight " << partition_to_json(lam) << " = " << rational_report(w) << "\n";
  return 0;
}

int cmd_normalize_check(const ParamFlags& pf, double tol) {
  GrothendieckModel m = pf.model();
  const CauchySum cs = cauchy_sum(m, tol);
  const double gap = std::abs(1.0 - to_double(cs.partial));
  std::cout << "partial sum over lambda_1 <= " << cs.max_part << ": "
            << rational_report(cs.partial) << "\n";
  std::cout << "|1 - sum| = " << gap << (gap < tol ? "  (converged)" : "  (NOT converged)")
            << "\n";
  return gap < tol ? 0 : kExitNumeric;
}

int cmd_correlations(const ParamFlags& pf, const std::string& points_csv) {
  GrothendieckModel m = pf.model();
  std::vector<long> pts;
  std::stringstream ss(points_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) pts.push_back(std::stol(tok));
  EmKernel kernel(m.ensemble());
  const int kmax = std::min<int>(m.n(), int(pts.size()));
  nlohmann::json out = nlohmann::json::array();
  std::function<void(std::size_t, std::vector<long>&)> rec = [&](std::size_t start,
                                                                 std::vector<long>& cur) {
    if (!cur.empty()) {
      const Rational rho = correlation_function(kernel, cur);
      out.push_back({{"points", cur}, {"rho", to_string(rho)}, {"value", to_double(rho)}});
    }
    if (int(cur.size()) == kmax) return;
    for (std::size_t i = start; i < pts.size(); ++i) {
      cur.push_back(pts[i]);
      rec(i + 1, cur);
      cur.pop_back();
    }
  };
  std::vector<long> cur;
  rec(0, cur);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_kernel(const ParamFlags& pf, int t, int s, long amax, long bmax, int nodes,
               const std::string& method) {
  GrothendieckModel m = pf.model();
  nlohmann::json rows = nlohmann::json::array();
  EmKernel* em = nullptr;
  std::unique_ptr<EmKernel> em_holder;
  if (method != "contour") {
    em_holder = std::make_unique<EmKernel>(m.ensemble());
    em = em_holder.get();
  }
  bool contour_fallback = false;
  for (long a = 0; a <= amax; ++a)
    for (long b = 0; b <= bmax; ++b) {
      const KernelQuery q{a, t, b, s};
      nlohmann::json row{{"a", a}, {"t", t}, {"b", b}, {"s", s}};
      if (em) {
        const Rational v = (*em)(q);
        row["re"] = to_double(v);
        row["im"] = 0.0;
        row["exact"] = to_string(v);
      }
      if (method != "em") {
        try {
          const std::complex<double> v = contour_kernel(m, q, nodes);
          row["re"] = v.real();
          row["im"] = v.imag();
        } catch (const ContourInfeasible&) {
          if (!em) throw;  // nothing to fall back to
          contour_fallback = true;
        }
      }
      rows.push_back(row);
    }
  if (contour_fallback)
    std::cerr << "contours infeasible for these parameters; emitted exact-kernel values\n";
  std::cout << rows.dump(2) << "\n";
  return 0;
}

int cmd_nanson(const ParamFlags& pf, const std::string& points_csv,
               const std::string& matrix_path, int order) {
  if (!matrix_path.empty()) {
    std::ifstream in(matrix_path);
    if (!in) throw UsageError("cannot open --matrix file: " + matrix_path);
    const RatMatrix a = matrix_from_csv(in);
    const int n = order > 0 ? order : a.rows();
    if (n != a.rows()) throw UsageError("--order does not match the matrix size");
    const ClusterTable t = cluster_from_minors(principal_minors(a));
    if (n == 4) {
      const Rational v = nanson4(t);
      std::cout << "N4 = " << rational_report(v) << "\n";
    }
    const NansonN nn = nanson_n(t, n);
    std::cout << "N" << n << " (numeric product) = " << nn.mantissa << " * 2^" << nn.exponent
              << "\n";
    std::cout << "relative magnitude vs cancellation-free scale = " << nn.relative() << "\n";
    return 0;
  }
  std::vector<long> pts;
  {
    std::stringstream ss(points_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) pts.push_back(std::stol(tok));
  }
  if (pts.size() != 4) throw UsageError("--points needs exactly 4 distinct positions");
  GrothendieckModel m = pf.model();
  const Rational raw = determinantality_witness(m, {pts[0], pts[1], pts[2], pts[3]});
  std::cout << "N4 (raw) = " << rational_report(raw) << "\n";
  const Rational beta = m.betas().empty() ? Rational(0) : m.betas()[0];
  try {
    const Rational scaled = raw * nanson_paper_scale(beta);
    std::cout << "N4 scaled by (beta-2)^32/((beta-4)(beta-1)beta^4) = "
              << rational_report(scaled) << "\n";
  } catch (const ZeroParameter&) {
    std::cout << "(scaled value undefined at beta in {0, 1, 4})\n";
  }
  return 0;
}

int cmd_sample(const ParamFlags& pf, std::uint64_t seed, std::uint64_t stream, long count,
               const std::string& out_path, const std::string& svg_path,
               const std::string& shape_csv, const std::string& profile_csv, int threads) {
  GrothendieckModel m = pf.model();
  std::vector<Partition> samples(static_cast<std::size_t>(count));
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    try {
      while (true) {
        const long i = next.fetch_add(1);
        if (i >= count) return;
        samples[std::size_t(i)] = sample_grothendieck(m, {seed, stream + std::uint64_t(i)});
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::max(1, threads); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::ostringstream body;
  for (const auto& s : samples) body << partition_to_json(s).dump() << "\n";
  if (out_path.empty())
    std::cout << body.str();
  else
    write_file(out_path, body.str());

  if (!profile_csv.empty())
    write_file(profile_csv, profile_to_csv(profile_of(samples.front(), m.n())));

  if (!svg_path.empty()) {
    SvgPlot plot;
    const int n = m.n();
    const Profile prof = profile_of(samples.front(), n);
    std::vector<std::pair<double, double>> scaled;
    for (const auto& bp : prof.breakpoints())
      scaled.emplace_back(double(bp.u) / n, double(bp.v) / n);
    plot.add_polyline(scaled, "#d62728");
    if (!shape_csv.empty()) {
      std::ifstream in(shape_csv);
      if (!in) throw UsageError("cannot open --shape-csv file: " + shape_csv);
      plot.add_polyline(shape_from_csv(in), "#1f77b4");
    }
    write_file(svg_path, plot.render());
  }
  return 0;
}

int cmd_limit_shape(const std::string& xs, const std::string& ys, const std::string& bs,
                    int tau_steps, double xi_step, bool allow_positive, const std::string& out_dir,
                    const std::string& sample_csv, int threads) {
  const double x = to_double(parse_flag_rational(xs, "--x"));
  const double y = to_double(parse_flag_rational(ys, "--y"));
  const double b = to_double(parse_flag_rational(bs, "--beta"));
  AsymptoticParams p(x, y, b, allow_positive);
  const bool conjectural = b > 0;
  ShapeGrid sg = compute_shape(p, tau_steps, xi_step, threads);

  std::filesystem::create_directories(out_dir);
  const std::string tag = conjectural ? ".CONJECTURAL" : "";
  write_file(out_dir + "/shape" + tag + ".csv", shape_to_csv(sg));
  write_file(out_dir + "/boundary" + tag + ".csv", boundary_to_csv(sg.boundary));
  {
    std::ostringstream hs;
    hs.precision(12);
    hs << "tau";
    for (double v : sg.xi_grid) hs << "," << v;
    hs << "\n";
    for (std::size_t i = 0; i < sg.tau.size(); ++i) {
      hs << sg.tau[i];
      for (double v : sg.H[i]) hs << "," << v;
      hs << "\n";
    }
    write_file(out_dir + "/height" + tag + ".csv", hs.str());
  }
  SvgPlot shape_plot;
  shape_plot.add_polyline(shape_W(sg), "#1f77b4");
  {  // |u| reference
    std::vector<std::pair<double, double>> vee = {{-1.5, 1.5}, {0, 0}, {1.5, 1.5}};
    shape_plot.add_polyline(vee, "#999999", 0.8);
  }
  if (!sample_csv.empty()) {
    std::ifstream in(sample_csv);
    if (!in) throw UsageError("cannot open --sample-profile file: " + sample_csv);
    shape_plot.add_polyline(shape_from_csv(in), "#d62728");
  }
  write_file(out_dir + "/shape" + tag + ".svg", shape_plot.render());
  SvgPlot boundary_plot;
  {
    // draw arcs in (xi, 1-tau), split where consecutive z samples jump
    std::vector<std::pair<double, double>> arc;
    double last_z = 0;
    bool first = true;
    for (const auto& bp : sg.boundary) {
      if (!first && std::fabs(bp.z - last_z) > 0.5) {
        boundary_plot.add_polyline(arc, "#2ca02c");
        arc.clear();
      }
      arc.emplace_back(bp.xi, 1 - bp.tau);
      last_z = bp.z;
      first = false;
    }
    boundary_plot.add_polyline(arc, "#2ca02c");
  }
  write_file(out_dir + "/boundary" + tag + ".svg", boundary_plot.render());
  if (conjectural)
    std::cout << "positive beta: outputs tagged CONJECTURAL in " << out_dir << "\n";
  else
    std::cout << "wrote shape, boundary, height CSV/SVG to " << out_dir << "\n";
  return 0;
}

int cmd_frozen_boundary(const std::string& xs, const std::string& ys, const std::string& bs,
                        int samples, const std::string& out_path) {
  const double x = to_double(parse_flag_rational(xs, "--x"));
  const double y = to_double(parse_flag_rational(ys, "--y"));
  const double b = to_double(parse_flag_rational(bs, "--beta"));
  AsymptoticParams p(x, y, b, b > 0);
  HeightSurface hs(p, samples);
  const std::string csv = boundary_to_csv(hs.physical_boundary());
  if (out_path.empty())
    std::cout << csv;
  else
    write_file(out_path, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grothendieck random partitions: weights, kernels, Nanson tests, samplers, limit shapes"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  int threads_flag = 0;
  app.add_option("--threads", threads_flag, "worker threads (default: GROTH_THREADS or 1)");

  ParamFlags wf, nf, cf, kf, af, sf;
  std::string lambda_csv = "0";
  auto* weight = app.add_subcommand("weight", "probability weight of a partition");
  wf.attach(weight);
  weight->add_option("--lambda", lambda_csv, "partition parts, e.g. 6,6,5,3,1,1");

  double tol = 1e-8;
  auto* ncheck = app.add_subcommand("normalize-check", "partial Cauchy sums toward 1");
  nf.attach(ncheck);
  ncheck->add_option("--tol", tol, "convergence tolerance");

  std::string points_csv = "0,1,2,3";
  auto* corr = app.add_subcommand("correlations", "correlation functions rho_I");
  cf.attach(corr);
  corr->add_option("--points", points_csv, "comma-separated positions");

  int kt = 1, ks = 1, knodes = 2048;
  long amax = 4, bmax = 4;
  std::string method = "both";
  auto* kern = app.add_subcommand("kernel", "two-dimensional correlation kernel table");
  kf.attach(kern);
  kern->add_option("--t", kt, "row level");
  kern->add_option("--s", ks, "column level");
  kern->add_option("--amax", amax, "max position a");
  kern->add_option("--bmax", bmax, "max position b");
  kern->add_option("--nodes", knodes, "quadrature nodes per contour");
  kern->add_option("--method", method, "em | contour | both")
      ->check(CLI::IsMember({"em", "contour", "both"}));

  std::string nanson_points = "0,1,2,3", matrix_path;
  int order = 0;
  auto* nan = app.add_subcommand("nanson", "determinantal tests");
  af.attach(nan);
  nan->add_option("--points", nanson_points, "four positions for the witness");
  nan->add_option("--matrix", matrix_path, "CSV matrix of rationals to test");
  nan->add_option("--order", order, "test order for --matrix input");

  std::uint64_t seed = 1, stream = 0;
  long count = 1;
  std::string sample_out, sample_svg, sample_shape_csv, sample_profile_csv;
  auto* smp = app.add_subcommand("sample", "exact sampling by RSK dynamics");
  sf.attach(smp);
  smp->add_option("--seed", seed, "RNG seed");
  smp->add_option("--stream", stream, "RNG stream id of the first sample");
  smp->add_option("--count", count, "number of samples");
  smp->add_option("--out", sample_out, "output file (default stdout), newline-delimited JSON");
  smp->add_option("--svg", sample_svg, "write a scaled profile SVG of the first sample");
  smp->add_option("--shape-csv", sample_shape_csv, "limit-shape CSV to overlay in the SVG");
  smp->add_option("--profile-csv", sample_profile_csv, "write the first sample's profile CSV");

  std::string lx = "1/3", ly = "1/5", lb = "-6", out_dir = "limit-shape-out", overlay_csv;
  int tau_steps = 200;
  double xi_step = 0.01;
  bool allow_positive = false;
  auto* lsh = app.add_subcommand("limit-shape", "limit-shape pipeline outputs");
  lsh->add_option("--x", lx, "x parameter (rational string)");
  lsh->add_option("--y", ly, "y parameter");
  lsh->add_option("--beta", lb, "beta parameter");
  lsh->add_option("--tau-steps", tau_steps, "tau grid steps");
  lsh->add_option("--xi-step", xi_step, "xi grid step");
  lsh->add_flag("--allow-positive-beta", allow_positive, "run the conjectural positive-beta pipeline");
  lsh->add_option("--out", out_dir, "output directory");
  lsh->add_option("--sample-profile", overlay_csv, "scaled sample profile CSV to overlay");

  std::string fx = "1/3", fy = "1/5", fb = "-6", fout;
  int fsamples = 4000;
  auto* fb_cmd = app.add_subcommand("frozen-boundary", "frozen boundary parametrization CSV");
  fb_cmd->add_option("--x", fx, "x parameter");
  fb_cmd->add_option("--y", fy, "y parameter");
  fb_cmd->add_option("--beta", fb, "beta parameter");
  fb_cmd->add_option("--samples", fsamples, "arc samples");
  fb_cmd->add_option("--out", fout, "output file (default stdout)");

  try {
    app.parse(argc, argv);
    const int threads = resolve_threads(threads_flag);
    if (weight->parsed()) return cmd_weight(wf, lambda_csv);
    if (ncheck->parsed()) return cmd_normalize_check(nf, tol);
    if (corr->parsed()) return cmd_correlations(cf, points_csv);
    if (kern->parsed()) return cmd_kernel(kf, kt, ks, amax, bmax, knodes, method);
    if (nan->parsed()) return cmd_nanson(af, nanson_points, matrix_path, order);
    if (smp->parsed())
      return cmd_sample(sf, seed, stream, count, sample_out, sample_svg, sample_shape_csv,
                        sample_profile_csv, threads);
    if (lsh->parsed())
      return cmd_limit_shape(lx, ly, lb, tau_steps, xi_step, allow_positive, out_dir,
                             overlay_csv, threads);
    if (fb_cmd->parsed()) return cmd_frozen_boundary(fx, fy, fb, fsamples, fout);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidRegime& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const ZeroParameter& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
