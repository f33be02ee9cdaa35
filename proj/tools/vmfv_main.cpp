// Command-line runner: reproduces the paper-style experiments as CSV and
// provides convergence, comparison, and exact-solution utilities.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

#include "vmfv/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

int fail(int code, const char* category, const std::string& message) {
  std::cerr << "error: " << category << ": " << message << "\n";
  return code;
}

struct CompareOptions {
  std::string file_a, file_b;
  std::vector<double> window;
  std::string column;
  std::string output;
};

int run_compare(const CompareOptions& opt) {
  vmfv::CsvTable a, b;
  try {
    a = vmfv::read_csv(opt.file_a);
    b = vmfv::read_csv(opt.file_b);
  } catch (const std::exception& e) {
    return fail(kExitIo, "io", e.what());
  }
  const int ax = a.column_index("x");
  const int bx = b.column_index("x");
  if (ax < 0 || bx < 0)
    return fail(kExitConfig, "config", "both csv files need an x column");
  if (a.rows.empty() || b.rows.empty())
    return fail(kExitConfig, "config", "empty csv file");

  const double bx0 = b.rows.front()[bx];
  const double bx1 = b.rows.back()[bx];
  const size_t bn = b.rows.size();
  const double dx = a.rows.size() > 1
                        ? (a.rows.back()[ax] - a.rows.front()[ax]) /
                              (static_cast<double>(a.rows.size()) - 1)
                        : 1.0;

  std::string text = "column,l1,l2,linf\n";
  bool compared_any = false;
  for (size_t c = 0; c < a.columns.size(); ++c) {
    if (static_cast<int>(c) == ax) continue;
    if (!opt.column.empty() && a.columns[c] != opt.column) continue;
    const int bc = b.column_index(a.columns[c]);
    if (bc < 0) continue;
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
    bool any = false;
    for (const auto& row : a.rows) {
      const double x = row[ax];
      if (opt.window.size() == 2 &&
          (x < opt.window[0] || x > opt.window[1]))
        continue;
      double pos = bn == 1 ? 0.0 : (x - bx0) / (bx1 - bx0) * (bn - 1);
      long i = std::lround(pos);
      i = std::max(0l, std::min(static_cast<long>(bn) - 1, i));
      const double d = std::abs(row[c] - b.rows[static_cast<size_t>(i)][bc]);
      l1 += d;
      l2 += d * d;
      linf = std::max(linf, d);
      any = true;
    }
    if (!any) return fail(kExitConfig, "config", "empty comparison window");
    text += a.columns[c] + "," + vmfv::format_double(l1 * dx) + "," +
            vmfv::format_double(std::sqrt(l2 * dx)) + "," +
            vmfv::format_double(linf) + "\n";
    compared_any = true;
  }
  if (!compared_any)
    return fail(kExitConfig, "config", "no shared columns to compare");

  if (opt.output.empty()) {
    std::cout << text;
  } else {
    std::FILE* f = std::fopen(opt.output.c_str(), "wb");
    if (!f) return fail(kExitIo, "io", "cannot write " + opt.output);
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"viscosity-matched finite volume solver"};
  app.require_subcommand(1);

  std::string config_path, output_path;
  bool quiet = false;
  unsigned long seed = 0;  // reserved for randomized property drivers

  auto* run = app.add_subcommand("run", "run one configured experiment");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--output", output_path, "override the output csv path");
  run->add_flag("--quiet", quiet, "suppress progress output");
  run->add_option("--seed", seed, "seed for randomized property drivers");

  std::vector<int> meshes;
  auto* converge =
      app.add_subcommand("converge", "mesh-refinement study of a config");
  converge->add_option("--config", config_path, "config file")->required();
  converge->add_option("--meshes", meshes, "nested mesh sizes")
      ->required()
      ->delimiter(',');
  converge->add_option("--output", output_path, "write the rate table here");
  converge->add_flag("--quiet", quiet, "suppress progress output");

  CompareOptions cmp;
  auto* compare =
      app.add_subcommand("compare", "error norms between two csv files");
  compare->add_option("a", cmp.file_a, "first csv")->required();
  compare->add_option("b", cmp.file_b, "second csv (reference)")->required();
  compare->add_option("--window", cmp.window, "restrict to [lo, hi]")
      ->expected(2);
  compare->add_option("--column", cmp.column, "restrict to one column");
  compare->add_option("--output", cmp.output, "write the report here");

  std::string viscosity = "eddy";
  double exact_t = 0.25;
  int exact_n = 1000;
  double exact_xl = -1.0, exact_xr = 1.0;
  auto* exact = app.add_subcommand(
      "exact", "dump the exact shallow water boundary solution");
  exact->add_option("--viscosity", viscosity, "laplacian or eddy")
      ->check(CLI::IsMember({"laplacian", "eddy"}));
  exact->add_option("--t", exact_t, "evaluation time");
  exact->add_option("--n", exact_n, "number of sample cells");
  exact->add_option("--x-left", exact_xl, "domain left end");
  exact->add_option("--x-right", exact_xr, "domain right end");
  exact->add_option("--output", output_path, "output csv")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      vmfv::ParseResult parsed = vmfv::parse_config_file(config_path);
      if (!parsed.config) {
        for (const std::string& e : parsed.errors)
          std::cerr << "error: config: " << e << "\n";
        return kExitConfig;
      }
      vmfv::ExperimentConfig cfg = *parsed.config;
      if (!output_path.empty()) cfg.output_path = output_path;
      vmfv::ProgressCallback progress;
      if (!quiet)
        progress = [](long step, double t, double) {
          if (step % 500 == 0)
            std::fprintf(stderr, "  step %ld, t = %.6f\n", step, t);
        };
      const vmfv::RunOutput out = vmfv::run_experiment(
          cfg, vmfv::Exec::openmp, progress);
      if (!quiet)
        std::printf("%ld steps, %.3f s, conservation defect %.3e%s\n",
                    out.steps, out.wall_seconds,
                    out.conservation_defect_value,
                    cfg.output_path.empty()
                        ? ""
                        : (", wrote " + cfg.output_path).c_str());
      return kExitOk;
    }

    if (converge->parsed()) {
      vmfv::ParseResult parsed = vmfv::parse_config_file(config_path);
      if (!parsed.config) {
        for (const std::string& e : parsed.errors)
          std::cerr << "error: config: " << e << "\n";
        return kExitConfig;
      }
      const vmfv::ConvergenceTable table =
          vmfv::convergence_study(*parsed.config, meshes);
      vmfv::CsvTable csv;
      csv.columns = {"n_cells", "l1", "rate"};
      for (const auto& row : table.rows)
        csv.rows.push_back({static_cast<double>(row.n_cells), row.l1,
                            row.rate ? *row.rate
                                     : std::nan("")});
      const std::string text = vmfv::to_csv_string(csv);
      if (output_path.empty())
        std::cout << text;
      else
        vmfv::write_csv(csv, output_path);
      for (const auto& row : table.rows)
        if (!row.rate)
          std::cerr << "note: rate undefined at n_cells = " << row.n_cells
                    << " (zero error or first mesh)\n";
      return kExitOk;
    }

    if (compare->parsed()) return run_compare(cmp);

    if (exact->parsed()) {
      const vmfv::SwViscosity kind = viscosity == "eddy"
                                         ? vmfv::SwViscosity::eddy
                                         : vmfv::SwViscosity::laplacian;
      const vmfv::Grid grid = vmfv::make_grid(exact_xl, exact_xr, exact_n);
      vmfv::CsvTable csv;
      csv.metadata.push_back("exact shallow water solution, viscosity = " +
                             viscosity + ", t = " +
                             vmfv::format_double(exact_t));
      csv.columns = {"x", "h", "u"};
      for (int j = 0; j < grid.n_cells; ++j) {
        const vmfv::Vec v =
            vmfv::exact_sw_solution(kind, grid.centers[j], exact_t);
        csv.rows.push_back({grid.centers[j], v[0], v[1]});
      }
      vmfv::write_csv(csv, output_path);
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    return fail(kExitConfig, "config", e.what());
  } catch (const std::domain_error& e) {
    return fail(kExitSolver, "solver", e.what());
  } catch (const std::runtime_error& e) {
    return fail(kExitSolver, "solver", e.what());
  }
  return kExitOk;
}
