// Command-line front end: bound/threshold/scan drive the analytic pipeline,
// rigid-count/mc/sample drive the finite-graph laboratory.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "c3bound/bound.hpp"
#include "c3bound/errors.hpp"
#include "c3bound/graph.hpp"
#include "c3bound/model.hpp"
#include "c3bound/solver.hpp"
#include "c3bound/spread.hpp"
#include "record.hpp"

namespace {

using c3bound::cli::OutputRecord;

// Densities accepted by the analytic commands; the machinery is only
// validated inside this window.
constexpr double kMinDensity = 2.30;
constexpr double kMaxDensity = 2.60;

void require_density(double c) {
  if (!(c >= kMinDensity && c <= kMaxDensity))
    throw c3bound::ParameterError(
        "density must lie in [2.30, 2.60], got " + std::to_string(c));
}

void emit(const OutputRecord& r, bool json) {
  std::cout << (json ? r.to_json() + "\n" : r.to_text());
}

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void run_bound(double c, int x_max, bool unit_total, bool json) {
  require_density(c);
  const auto params = c3bound::ModelParams::make(c, x_max);
  c3bound::SolverConfig cfg;
  cfg.unit_total_spread = unit_total;
  const auto sol = c3bound::solve_system(params, cfg);
  const auto rep = c3bound::bound_per_vertex(params, sol);
  OutputRecord r;
  r.schema = "bound";
  r.add("c", rep.c);
  r.add("x_max", rep.x_max);
  r.add("phi0", rep.phi.phi0);
  r.add("phi1", rep.phi.phi1);
  r.add("phi2", rep.phi.phi2);
  r.add("residual_norm", sol.residual_norm);
  r.add("iterations", sol.iterations);
  r.add("f_value", rep.f_value);
  r.add("log_f", rep.log_f);
  emit(r, json);
}

void run_threshold(int x_max, double tol, bool json) {
  const auto res = c3bound::threshold_search(x_max, tol);
  OutputRecord r;
  r.schema = "threshold";
  r.add("c_star", res.c_star);
  r.add("bracket_lo", res.bracket_lo);
  r.add("bracket_hi", res.bracket_hi);
  r.add("iterations", res.iterations);
  r.add("tol_c", tol);
  r.add("x_max", x_max);
  emit(r, json);
}

void run_scan(double c_lo, double c_hi, int steps, int x_max, bool json) {
  const auto reports = c3bound::scan(c_lo, c_hi, steps, x_max);
  if (json) {
    for (const auto& rep : reports) {
      OutputRecord r;
      r.schema = "bound_scan";
      r.add("c", rep.c);
      r.add("phi0", rep.phi.phi0);
      r.add("phi1", rep.phi.phi1);
      r.add("phi2", rep.phi.phi2);
      r.add("f_value", rep.f_value);
      r.add("log_f", rep.log_f);
      std::cout << r.to_json() << "\n";
    }
    return;
  }
  std::cout << "c,phi0,phi1,phi2,f_value,log_f\n";
  for (const auto& rep : reports) {
    std::cout << csv_double(rep.c) << ',' << csv_double(rep.phi.phi0) << ','
              << csv_double(rep.phi.phi1) << ',' << csv_double(rep.phi.phi2)
              << ',' << csv_double(rep.f_value) << ',' << csv_double(rep.log_f)
              << "\n";
  }
}

// Residual values of the rotated system over an interior lattice of the
// admissible box, for plotting.
void run_grid(double c, int steps, int x_max, bool json) {
  if (!(c >= 2.40 && c <= 2.50))
    throw c3bound::ParameterError("grid mode expects c in [2.40, 2.50]");
  if (steps < 2) throw c3bound::ParameterError("grid mode needs steps >= 2");
  const auto params = c3bound::ModelParams::make(c, x_max);
  const auto profile = c3bound::build_profile(params);
  const double total = profile.u_trunc;
  const auto box = c3bound::admissible_y_box(total);

  struct Row {
    double y0, y1, k0, k1;
  };
  std::vector<Row> rows;
  for (int i = 0; i < steps; ++i) {
    const double f0 = (i + 1.0) / (steps + 1.0);
    const double y0 = box.y0_lo + f0 * (box.y0_hi - box.y0_lo);
    const auto yr = c3bound::y1_range(y0);
    for (int j = 0; j < steps; ++j) {
      const double f1 = (j + 1.0) / (steps + 1.0);
      const double y1 = yr.lo + f1 * (yr.hi - yr.lo);
      const auto k = c3bound::rotated_residual({y0, y1}, params, profile, total);
      rows.push_back({y0, y1, k.k0, k.k1});
    }
  }
  if (json) {
    for (const auto& row : rows) {
      OutputRecord r;
      r.schema = "residual_grid";
      r.add("y0", row.y0);
      r.add("y1", row.y1);
      r.add("K0", row.k0);
      r.add("K1", row.k1);
      std::cout << r.to_json() << "\n";
    }
    return;
  }
  std::cout << "y0,y1,K0,K1\n";
  for (const auto& row : rows)
    std::cout << csv_double(row.y0) << ',' << csv_double(row.y1) << ','
              << csv_double(row.k0) << ',' << csv_double(row.k1) << "\n";
}

void run_rigid_count(const std::string& path, bool json) {
  const auto g = c3bound::read_graph_file(path);
  const long long proper = c3bound::count_proper(g);
  const long long rigid = c3bound::count_rigid(g);
  OutputRecord r;
  r.schema = "rigid_count";
  r.add("n", g.n);
  r.add("m", g.m());
  r.add("proper", proper);
  r.add("rigid", rigid);
  emit(r, json);
}

void run_mc(int n, long long m, double c, double epsilon, int x_max,
            long long samples, std::uint64_t seed, bool json) {
  const auto params = c3bound::ModelParams::make(c, x_max, epsilon);
  const auto res = c3bound::mc_first_moment(n, m, params, samples, seed);
  OutputRecord r;
  r.schema = "mc";
  r.add("n", n);
  r.add("m", static_cast<long long>(m));
  r.add("c", c);
  r.add("epsilon", epsilon);
  r.add("x_max", x_max);
  r.add("samples", res.samples);
  r.add("seed", static_cast<long long>(seed));
  r.add("estimate", res.estimate);
  r.add("stderr", res.stderr_);
  r.add("subspace_fraction", res.subspace_fraction);
  emit(r, json);
}

void run_sample(int n, long long m, std::uint64_t seed, const std::string& out) {
  const auto g = c3bound::sample_graph(n, m, seed);
  if (out.empty())
    c3bound::write_graph(std::cout, g);
  else
    c3bound::write_graph_file(out, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-moment bounds on 3-colourability of sparse random multigraphs"};
  app.require_subcommand(1);

  bool json = false;
  app.add_flag("--json", json, "emit one JSON object per record");
  app.fallthrough();  // lets --json appear after the subcommand name

  // bound
  double b_c = 0.0;
  int b_xmax = c3bound::kDefaultXMax;
  bool b_unit_total = false;
  auto* bound = app.add_subcommand("bound", "growth rate of the expected rigid count at one density");
  bound->add_option("--c", b_c, "edge density m/n")->required();
  bound->add_option("--xmax", b_xmax, "degree truncation");
  bound->add_flag("--unit-total-spread", b_unit_total,
                  "budget the spread with 1 instead of the truncated mean fraction");
  bound->callback([&] { run_bound(b_c, b_xmax, b_unit_total, json); });

  // threshold
  int t_xmax = c3bound::kDefaultXMax;
  double t_tol = 1e-4;
  auto* threshold = app.add_subcommand("threshold", "density where the growth rate crosses 1");
  threshold->add_option("--xmax", t_xmax, "degree truncation");
  threshold->add_option("--tol", t_tol, "bracket width at which the bisection stops");
  threshold->callback([&] { run_threshold(t_xmax, t_tol, json); });

  // scan
  double s_lo = 2.44, s_hi = 2.50;
  int s_steps = 7;
  int s_xmax = c3bound::kDefaultXMax;
  bool s_grid = false;
  bool s_csv = false;
  auto* scan = app.add_subcommand("scan", "bound across a density range (CSV)");
  scan->add_option("--c-lo", s_lo, "low end of the density range");
  scan->add_option("--c-hi", s_hi, "high end of the density range");
  scan->add_option("--steps", s_steps, "number of grid points (per axis in grid mode)");
  scan->add_option("--xmax", s_xmax, "degree truncation");
  scan->add_flag("--csv", s_csv, "tabular output (the default)");
  scan->add_flag("--grid-mode", s_grid,
                 "emit rotated residuals K0,K1 on a lattice at density --c-lo");
  scan->callback([&] {
    if (s_csv && json)
      throw c3bound::ParameterError("--csv and --json are mutually exclusive");
    if (s_grid)
      run_grid(s_lo, s_steps, s_xmax, json);
    else
      run_scan(s_lo, s_hi, s_steps, s_xmax, json);
  });

  // rigid-count
  std::string r_path;
  auto* rigid = app.add_subcommand("rigid-count", "exhaustive proper/rigid colouring counts of a graph file");
  rigid->add_option("path", r_path, "graph file: 'n m' then m lines 'u v'")->required();
  rigid->callback([&] { run_rigid_count(r_path, json); });

  // mc
  int m_n = 4;
  long long m_m = 5;
  double m_c = 1.25;
  double m_eps = 0.05;
  int m_xmax = c3bound::kDefaultXMax;
  long long m_samples = 10000;
  std::uint64_t m_seed = 1;
  auto* mc = app.add_subcommand("mc", "Monte Carlo mean of the subspace-restricted rigid count");
  mc->add_option("--n", m_n, "vertices")->required();
  mc->add_option("--m", m_m, "edges")->required();
  mc->add_option("--c", m_c, "density defining the reference degree weights")->required();
  mc->add_option("--epsilon", m_eps, "subspace slack");
  mc->add_option("--xmax", m_xmax, "degree truncation");
  mc->add_option("--samples", m_samples, "number of sampled graphs");
  mc->add_option("--seed", m_seed, "base RNG seed");
  mc->callback([&] { run_mc(m_n, m_m, m_c, m_eps, m_xmax, m_samples, m_seed, json); });

  // sample
  int g_n = 10;
  long long g_m = 25;
  std::uint64_t g_seed = 1;
  std::string g_out;
  auto* sample = app.add_subcommand("sample", "draw one multigraph and write it as a graph file");
  sample->add_option("--n", g_n, "vertices")->required();
  sample->add_option("--m", g_m, "edges")->required();
  sample->add_option("--seed", g_seed, "RNG seed");
  sample->add_option("--out", g_out, "output path (stdout when omitted)");
  sample->callback([&] { run_sample(g_n, g_m, g_seed, g_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(c3bound::ErrorCode::parameter);
  } catch (const c3bound::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
