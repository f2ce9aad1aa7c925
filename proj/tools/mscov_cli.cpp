// mscov: simulate, estimate and verify spectra of sample covariance
// matrices with missing observations.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>

#include "mscov/estimators.hpp"
#include "mscov/io.hpp"
#include "mscov/limit.hpp"
#include "mscov/simulate.hpp"
#include "mscov/spectral.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace mscov;

namespace {

constexpr const char* kVersion = "0.1.0";

int worker_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MS_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) return std::min<int>(cap, static_cast<int>(hw));
  }
  return static_cast<int>(hw);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  if (out.empty()) throw std::invalid_argument("empty numeric list");
  return out;
}

// Scalar -> constant vector; k values with k | d -> block-constant.
Vector expand_blocks(const std::vector<double>& vals, Index d,
                     const std::string& what) {
  Vector v(d);
  Index k = static_cast<Index>(vals.size());
  if (d % k != 0)
    throw std::invalid_argument(what + ": list length must divide d");
  Index block = d / k;
  for (Index i = 0; i < d; ++i) v(i) = vals[static_cast<size_t>(i / block)];
  return v;
}

struct ModelFlags {
  Index d = 0;
  Index n = 0;
  std::string sigma2 = "1";  // comma list, block-expanded into t_diag
  std::string p = "1";       // comma list, block-expanded
  std::string dist = "gaussian";
  double df = 3.0;
  std::uint64_t seed = 0;

  void add_to(CLI::App* cmd, bool with_dist = true) {
    cmd->add_option("-d,--dim", d, "dimension d")->required();
    cmd->add_option("-n,--samples", n, "sample size n")->required();
    cmd->add_option("--sigma2", sigma2,
                    "diagonal of T: scalar or comma list (block-expanded)");
    cmd->add_option("-p,--prob", p,
                    "observation probabilities: scalar or comma list");
    if (with_dist) {
      cmd->add_option("--dist", dist,
                      "entry distribution: gaussian|rademacher|uniform|t")
          ->check(CLI::IsMember({"gaussian", "rademacher", "uniform", "t"}));
      cmd->add_option("--df", df, "degrees of freedom for --dist t");
      cmd->add_option("--seed", seed, "RNG seed");
    }
  }

  DiagonalModel model() const {
    return DiagonalModel(expand_blocks(parse_list(sigma2), d, "--sigma2"),
                         expand_blocks(parse_list(p), d, "--prob"), n);
  }

  EntryDistribution distribution() const {
    if (dist == "gaussian") return EntryDistribution::gaussian();
    if (dist == "rademacher") return EntryDistribution::rademacher();
    if (dist == "uniform") return EntryDistribution::uniform();
    return EntryDistribution::heavy_tail_t(df);
  }

  bool is_null_case(const DiagonalModel& m) const {
    return (m.t_diag.array() == m.t_diag(0)).all() &&
           (m.p.array() == m.p(0)).all();
  }
};

void write_json(const fs::path& path, const json& j) {
  io::write_text_atomic(path, j.dump(2) + "\n");
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  return json::parse(in);
}

json model_to_json(const DiagonalModel& m) {
  json j;
  j["d"] = m.dim();
  j["n"] = m.n;
  j["t_diag"] = std::vector<double>(m.t_diag.data(), m.t_diag.data() + m.dim());
  j["p"] = std::vector<double>(m.p.data(), m.p.data() + m.dim());
  return j;
}

DiagonalModel model_from_json(const json& j) {
  auto t = j.at("t_diag").get<std::vector<double>>();
  auto p = j.at("p").get<std::vector<double>>();
  Vector tv = Eigen::Map<const Vector>(t.data(), static_cast<Index>(t.size()));
  Vector pv = Eigen::Map<const Vector>(p.data(), static_cast<Index>(p.size()));
  return DiagonalModel(tv, pv, j.at("n").get<Index>());
}

// Reference density/CDF curve for a model: closed form in the null case,
// solver inversion otherwise.
DensityCurve reference_curve(const DiagonalModel& model, bool null_case,
                             double v, Index grid_points) {
  const double y = model.aspect_ratio();
  if (null_case) {
    double sigma2 = model.t_diag(0), p0 = model.p(0);
    auto [a, b] = support_edges(y, sigma2, p0);
    Vector xs = Vector::LinSpaced(grid_points, a - 1.0, b + 1.0);
    DensityCurve c;
    c.xs = xs;
    c.density.resize(grid_points);
    for (Index j = 0; j < grid_points; ++j)
      c.density(j) = mp_shifted_density(xs(j), y, sigma2, p0);
    c.cdf.resize(grid_points);
    c.cdf(0) = mp_point_mass(y);
    for (Index j = 1; j < grid_points; ++j)
      c.cdf(j) = c.cdf(j - 1) +
                 0.5 * (c.density(j) + c.density(j - 1)) * (xs(j) - xs(j - 1));
    return c;
  }
  ModelMatrices mm = build_model_matrices(model);
  double lo = -mm.s_diag.maxCoeff() - 1.0;
  double hi = mm.max_r() * (1.0 + std::sqrt(std::max(y, 1e-12))) *
                  (1.0 + std::sqrt(std::max(y, 1e-12))) +
              1.0;
  Vector xs = Vector::LinSpaced(grid_points, lo, hi);
  return invert_to_density(mm, y, xs, v);
}

// Atoms at the quantiles (i - 1/2)/count of a CDF curve, by inverting the
// piecewise-linear CDF (normalized to total mass 1).
SpectralMeasure sample_curve_atoms(const DensityCurve& curve, Index count) {
  double total = curve.cdf(curve.cdf.size() - 1);
  if (total <= 0.0) throw std::runtime_error("reference curve has zero mass");
  Vector atoms(count);
  Index seg = 1;
  for (Index i = 0; i < count; ++i) {
    double q = total * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    while (seg < curve.cdf.size() - 1 && curve.cdf(seg) < q) ++seg;
    double c0 = curve.cdf(seg - 1), c1 = curve.cdf(seg);
    double w = (c1 > c0) ? (q - c0) / (c1 - c0) : 0.0;
    atoms(i) = curve.xs(seg - 1) + w * (curve.xs(seg) - curve.xs(seg - 1));
  }
  return SpectralMeasure(atoms);
}

int cmd_simulate(const ModelFlags& flags, const std::string& out_dir) {
  DiagonalModel model = flags.model();
  MaskedSample sample = gen_sample(model, flags.distribution(),
                                   Vector::Zero(model.dim()), flags.seed);
  fs::path dir(out_dir);
  fs::create_directories(dir);
  io::write_matrix_csv(dir / "Y.csv", sample.y);
  io::write_mask_csv(dir / "mask.csv", sample.mask);

  json meta;
  meta["version"] = kVersion;
  meta["seed"] = flags.seed;
  meta["model"] = model_to_json(model);
  meta["dist"] = flags.dist;
  if (flags.dist == "t") meta["df"] = flags.df;
  meta["mean_known"] = sample.mean_known;
  write_json(dir / "meta.json", meta);
  return 0;
}

int cmd_estimate(const std::string& in_dir, const std::string& estimator,
                 const std::string& out_file) {
  fs::path dir(in_dir);
  json meta = read_json(dir / "meta.json");
  MaskedSample sample;
  sample.y = io::read_matrix_csv(dir / "Y.csv");
  sample.mask = io::read_mask_csv(dir / "mask.csv");
  sample.mean_known = meta.at("mean_known").get<bool>();
  if (sample.y.rows() != sample.mask.rows() ||
      sample.y.cols() != sample.mask.cols())
    throw std::invalid_argument("Y.csv and mask.csv dimensions disagree");

  Matrix cov = (estimator == "t_hat") ? estimate_t_hat(sample)
                                      : estimate_sigma_hat(sample);
  io::write_matrix_csv(out_file, cov);
  return 0;
}

int cmd_spectrum(const std::string& cov_file, Index bins,
                 const std::string& out_dir) {
  Matrix cov = io::read_matrix_csv(cov_file);
  SpectralMeasure mu = esd(cov);
  fs::path dir(out_dir);
  fs::create_directories(dir);

  json eigs;
  eigs["eigenvalues"] = std::vector<double>(
      mu.eigenvalues.data(), mu.eigenvalues.data() + mu.atoms());
  write_json(dir / "eigs.json", eigs);
  io::write_histogram_csv(dir / "hist.csv", histogram(mu, bins));
  return 0;
}

int cmd_limit(const ModelFlags& flags, Index grid_points, double v,
              const std::string& out_dir) {
  DiagonalModel model = flags.model();
  const double y = model.aspect_ratio();
  bool null_case = flags.is_null_case(model);

  fs::path dir(out_dir);
  fs::create_directories(dir);
  DensityCurve curve = reference_curve(model, null_case, v, grid_points);
  io::write_curve_csv(dir / "density.csv", curve);

  json edges;
  if (null_case) {
    auto [a, b] = support_edges(y, model.t_diag(0), model.p(0));
    edges["a"] = a;
    edges["b"] = b;
    if (mp_point_mass(y) > 0.0) edges["point_mass"] = mp_point_mass(y);
  } else {
    // solver-derived support: region where the smoothed density is visible
    double thresh = 1e-3;
    double a = curve.xs(curve.xs.size() - 1), b = curve.xs(0);
    for (Index j = 0; j < curve.xs.size(); ++j)
      if (curve.density(j) > thresh) {
        a = std::min(a, curve.xs(j));
        b = std::max(b, curve.xs(j));
      }
    edges["a"] = a;
    edges["b"] = b;
    edges["solver_derived"] = true;
  }
  if (y > 0.0 && y < 1.0) edges["pd_threshold"] = pd_threshold(y);
  write_json(dir / "edges.json", edges);
  return 0;
}

int cmd_compare(const std::string& eigs_file, const ModelFlags& flags,
                double v, const std::string& out_file) {
  json eigs = read_json(eigs_file);
  auto vals = eigs.at("eigenvalues").get<std::vector<double>>();
  SpectralMeasure mu(
      Eigen::Map<const Vector>(vals.data(), static_cast<Index>(vals.size())));

  DiagonalModel model = flags.model();
  const double y = model.aspect_ratio();
  bool null_case = flags.is_null_case(model);

  DensityCurve ref = reference_curve(model, null_case, v, 2001);
  double dk = kolmogorov_distance(mu, ref);
  SpectralMeasure ref_atoms =
      sample_curve_atoms(ref, std::max<Index>(mu.atoms(), 10000));
  double dl = levy_distance(mu, ref_atoms);

  json report;
  report["kolmogorov"] = dk;
  report["levy"] = dl;
  report["lambda_min"] = mu.eigenvalues.minCoeff();
  report["lambda_max"] = mu.eigenvalues.maxCoeff();
  double a, b;
  if (null_case) {
    std::tie(a, b) = support_edges(y, model.t_diag(0), model.p(0));
  } else {
    a = ref.xs(0);
    b = ref.xs(ref.xs.size() - 1);
  }
  report["edge_errors"] = {
      {"lambda_min", std::abs(mu.eigenvalues.minCoeff() - a)},
      {"lambda_max", std::abs(mu.eigenvalues.maxCoeff() - b)}};
  if (y >= 1.0) {
    report["warning"] =
        "extremal-eigenvalue limits assume 0 < y < 1; lambda_min comparison "
        "is not covered by the theory";
    std::cerr << "warning: y >= 1, lambda_min comparison not covered\n";
  }
  write_json(out_file, report);
  return 0;
}

int cmd_figure1(std::uint64_t seed, double scale, Index bins,
                const std::string& out_dir) {
  const Index d = static_cast<Index>(2000 * scale);
  const Index n = static_cast<Index>(8000 * scale);
  if (d < 2 || d % 2 != 0)
    throw std::invalid_argument("figure1: scaled d must be even and >= 2");

  struct Row {
    const char* name;
    std::vector<double> p;
  };
  std::vector<Row> rows = {{"p1", {1.0}}, {"p05", {0.5}}, {"psplit", {0.25, 0.75}}};

  fs::path dir(out_dir);
  fs::create_directories(dir);

  json manifest;
  manifest["version"] = kVersion;
  manifest["seed"] = seed;
  manifest["d"] = d;
  manifest["n"] = n;
  manifest["sigma2"] = 1.0;
  manifest["rows"] = json::array();

  struct Task {
    std::string file;
    Matrix cov;
  };
  std::vector<Task> tasks;

  for (size_t r = 0; r < rows.size(); ++r) {
    DiagonalModel model(Vector::Ones(d), expand_blocks(rows[r].p, d, "p"), n);
    MaskedSample sample = gen_sample(model, EntryDistribution::gaussian(),
                                     Vector::Zero(d), seed + r);
    tasks.push_back({std::string("hist_") + rows[r].name + "_sigma_hat.csv",
                     estimate_sigma_hat(sample)});
    tasks.push_back({std::string("hist_") + rows[r].name + "_t_hat.csv",
                     estimate_t_hat(sample)});
    json row;
    row["name"] = rows[r].name;
    row["p"] = rows[r].p;
    row["files"] = {tasks[tasks.size() - 2].file, tasks.back().file};
    manifest["rows"].push_back(row);
  }

  // eigensolves dominate; spread them over the worker cap
  int workers = std::min<int>(worker_cap(), static_cast<int>(tasks.size()));
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::mutex err_mutex;
  std::string first_error;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        try {
          Histogram h = histogram(esd(tasks[i].cov), bins);
          io::write_histogram_csv(dir / tasks[i].file, h);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (first_error.empty()) first_error = e.what();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (!first_error.empty()) throw std::runtime_error(first_error);

  manifest["bins"] = bins;
  write_json(dir / "manifest.json", manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectra of sample covariance matrices with missing observations"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  ModelFlags sim_flags;
  std::string sim_out = ".";
  auto* sim = app.add_subcommand("simulate", "generate Y.csv, mask.csv, meta.json");
  sim_flags.add_to(sim);
  sim->add_option("-o,--out", sim_out, "output directory");

  std::string est_in = ".", est_kind = "t_hat", est_out = "cov.csv";
  auto* est = app.add_subcommand("estimate", "pairwise-complete covariance");
  est->add_option("-i,--in", est_in, "directory with Y.csv, mask.csv, meta.json");
  est->add_option("--estimator", est_kind, "t_hat or sigma_hat")
      ->check(CLI::IsMember({"t_hat", "sigma_hat"}));
  est->add_option("-o,--out", est_out, "output CSV file");

  std::string spec_cov = "cov.csv", spec_out = ".";
  Index spec_bins = 80;
  auto* spec = app.add_subcommand("spectrum", "eigenvalues and histogram");
  spec->add_option("-i,--in", spec_cov, "covariance CSV");
  spec->add_option("-B,--bins", spec_bins, "histogram bins")
      ->check(CLI::PositiveNumber);
  spec->add_option("-o,--out", spec_out, "output directory");

  ModelFlags limit_flags;
  Index limit_grid = 2001;
  double limit_v = 1e-3;
  std::string limit_out = ".";
  auto* limit = app.add_subcommand("limit", "limiting density and support edges");
  limit_flags.add_to(limit, false);
  limit->add_option("--grid", limit_grid, "grid points")->check(CLI::PositiveNumber);
  limit->add_option("--v", limit_v, "inversion height")->check(CLI::PositiveNumber);
  limit->add_option("-o,--out", limit_out, "output directory");

  ModelFlags cmp_flags;
  std::string cmp_eigs = "eigs.json", cmp_out = "report.json";
  double cmp_v = 1e-3;
  auto* cmp = app.add_subcommand("compare", "distances of an ESD to the limit law");
  cmp->add_option("-i,--in", cmp_eigs, "eigs.json from spectrum");
  cmp_flags.add_to(cmp, false);
  cmp->add_option("--v", cmp_v, "inversion height for non-null models");
  cmp->add_option("-o,--out", cmp_out, "output report JSON");

  std::uint64_t fig_seed = 0;
  double fig_scale = 1.0;
  Index fig_bins = 80;
  std::string fig_out = "figure1";
  auto* fig = app.add_subcommand("figure1", "six eigenvalue histograms");
  fig->add_option("--seed", fig_seed, "RNG seed");
  fig->add_option("--scale", fig_scale, "size multiplier for d = 2000, n = 8000")
      ->check(CLI::PositiveNumber);
  fig->add_option("-B,--bins", fig_bins, "histogram bins")->check(CLI::PositiveNumber);
  fig->add_option("-o,--out", fig_out, "output directory");

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return cmd_simulate(sim_flags, sim_out);
    if (est->parsed()) return cmd_estimate(est_in, est_kind, est_out);
    if (spec->parsed()) return cmd_spectrum(spec_cov, spec_bins, spec_out);
    if (limit->parsed()) return cmd_limit(limit_flags, limit_grid, limit_v, limit_out);
    if (cmp->parsed()) return cmd_compare(cmp_eigs, cmp_flags, cmp_v, cmp_out);
    if (fig->parsed()) return cmd_figure1(fig_seed, fig_scale, fig_bins, fig_out);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
