#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "vmfv/experiment.hpp"

using namespace vmfv;

namespace {

double column_plateau(const RunOutput& out, const std::string& column,
                      double lo, double hi) {
  int col = -1;
  for (size_t c = 0; c < out.columns.size(); ++c)
    if (out.columns[c] == column) col = static_cast<int>(c);
  REQUIRE(col >= 0);
  double sum = 0.0;
  int count = 0;
  for (const auto& row : out.rows)
    if (row[0] >= lo && row[0] <= hi) {
      sum += row[col];
      ++count;
    }
  REQUIRE(count > 0);
  return sum / count;
}

}  // namespace

TEST_CASE("parse_config") {
  SUBCASE("minimal shallow water config gets the defaults") {
    const ParseResult r = parse_config(
        "[model]\ntype = swlin\n"
        "[problem]\nt_final = 0.25\n"
        "[solver]\nscheme = cnd\nn_cells = 1000\n");
    REQUIRE(r.config.has_value());
    CHECK(r.config->cfl == 0.45);
    CHECK(r.config->viscosity == SwViscosity::eddy);
    CHECK(r.config->init == InitKind::lswinit);
    CHECK(r.config->left_bc == BcKind::ldir);
    CHECK(r.config->right_bc == BcKind::open);
    CHECK(r.config->x_left == -1.0);
    CHECK(r.config->x_right == 1.0);
  }

  SUBCASE("euler defaults and the recorded gamma") {
    const ParseResult r = parse_config(
        "[model]\ntype = euler\n"
        "[problem]\nt_final = 0.2\n"
        "[solver]\nscheme = cnd\nn_cells = 100\n");
    REQUIRE(r.config.has_value());
    CHECK(r.config->gamma == 1.4);
    CHECK(r.config->init == InitKind::eulinit);
    CHECK(r.config->left_bc == BcKind::eulbd);
    // the default shows up in the canonical echo
    CHECK(r.config->to_text().find("gamma = 1.4") != std::string::npos);
  }

  SUBCASE("violations name the offending field and accumulate") {
    const ParseResult r = parse_config(
        "[model]\ntype = swlin\n"
        "[problem]\nt_final = 0.25\n"
        "[solver]\nscheme = cnd\nn_cells = -5\ncfl = 2.0\n");
    CHECK_FALSE(r.config.has_value());
    REQUIRE(r.errors.size() == 2);
    CHECK(r.errors[0].find("n_cells") != std::string::npos);
    CHECK(r.errors[1].find("cfl") != std::string::npos);
  }

  SUBCASE("unknown keys and sections are rejected") {
    const ParseResult r = parse_config(
        "[model]\ntype = swlin\nkolor = blue\n"
        "[problem]\nt_final = 0.25\n"
        "[solver]\nscheme = cnd\nn_cells = 10\n"
        "[plot]\nstyle = dashed\n");
    CHECK_FALSE(r.config.has_value());
    bool unknown_key = false, unknown_section = false;
    for (const std::string& e : r.errors) {
      if (e.find("kolor") != std::string::npos) unknown_key = true;
      if (e.find("[plot]") != std::string::npos) unknown_section = true;
    }
    CHECK(unknown_key);
    CHECK(unknown_section);
  }

  SUBCASE("missing required fields are violations") {
    const ParseResult r = parse_config("[model]\ntype = swlin\n");
    CHECK_FALSE(r.config.has_value());
    CHECK(r.errors.size() >= 2);  // t_final and n_cells at least
  }

  SUBCASE("bad enum values list the alternatives") {
    const ParseResult r = parse_config(
        "[model]\ntype = swlin\n"
        "[problem]\nt_final = 0.25\n"
        "[solver]\nscheme = upwind\nn_cells = 10\n");
    CHECK_FALSE(r.config.has_value());
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].find("cnd") != std::string::npos);
  }

  SUBCASE("viscous runs need epsilon") {
    const ParseResult r = parse_config(
        "[model]\ntype = swlin\n"
        "[problem]\nt_final = 0.25\n"
        "[solver]\nscheme = viscous\nn_cells = 10\n");
    CHECK_FALSE(r.config.has_value());
    CHECK(r.errors[0].find("epsilon") != std::string::npos);
  }

  SUBCASE("model and problem data must match") {
    const ParseResult r = parse_config(
        "[model]\ntype = euler\n"
        "[problem]\ninit = lswinit\nt_final = 0.2\n"
        "[solver]\nscheme = cnd\nn_cells = 10\n");
    CHECK_FALSE(r.config.has_value());
  }

  SUBCASE("canonical text round-trips") {
    ExperimentConfig cfg;
    cfg.model = ModelKind::euler;
    cfg.solver = SolverKind::viscous;
    cfg.epsilon = 1e-4;
    cfg.t_final = 0.2;
    cfg.n_cells = 321;
    cfg.init = InitKind::constant;
    cfg.init_value = {1.5, 0.25, 2.0};
    cfg.left_bc = BcKind::constant;
    cfg.left_bc_value = {2.0, 1.0, 2.0};
    cfg.right_bc = BcKind::open;
    cfg.output_path = "out.csv";
    const std::string text = cfg.to_text();
    const ParseResult r = parse_config(text);
    REQUIRE(r.config.has_value());
    CHECK(r.config->to_text() == text);
  }
}

TEST_CASE("run_experiment output shape and physics") {
  ExperimentConfig cfg;
  cfg.model = ModelKind::swlin;
  cfg.viscosity = SwViscosity::eddy;
  cfg.t_final = 0.25;
  cfg.solver = SolverKind::cnd;
  cfg.n_cells = 1000;

  const RunOutput out = run_experiment(cfg);
  REQUIRE(out.columns.size() == 5);  // x, h, u, exact_h, exact_u
  CHECK(out.columns[1] == "h");
  CHECK(out.columns[3] == "exact_h");
  CHECK(out.rows.size() == 1000);
  for (const auto& row : out.rows) CHECK(row.size() == out.columns.size());
  CHECK(out.steps > 0);
  CHECK(out.conservation_defect_value <= 1e-10);
  REQUIRE(out.max_entropy_residual.has_value());
  CHECK(*out.max_entropy_residual <= 1e-8);

  // the plateau next to the boundary approximates the eddy limit
  CHECK(std::abs(column_plateau(out, "h", -0.9, -0.6) - 2.5857864376269049) /
            2.5857864376269049 <=
        0.01);

  ExperimentConfig roe = cfg;
  roe.solver = SolverKind::roe;
  const RunOutput out_roe = run_experiment(roe);
  CHECK_FALSE(out_roe.max_entropy_residual.has_value());
  CHECK(std::abs(column_plateau(out_roe, "h", -0.9, -0.6) - 2.5) / 2.5 <=
        0.01);
}

TEST_CASE("csv output is byte-identical across reruns") {
  ExperimentConfig cfg;
  cfg.model = ModelKind::swlin;
  cfg.viscosity = SwViscosity::laplacian;
  cfg.t_final = 0.1;
  cfg.solver = SolverKind::cnd2;
  cfg.n_cells = 200;

  const std::string a = to_csv_string(run_experiment(cfg).to_csv());
  const std::string b = to_csv_string(run_experiment(cfg).to_csv());
  CHECK(a == b);
  CHECK(a.find("# [model]") != std::string::npos);
  CHECK(a.find("# steps = ") != std::string::npos);
  CHECK(a.find("# conservation_defect = ") != std::string::npos);
}

TEST_CASE("metadata echo parses back to the same config") {
  ExperimentConfig cfg;
  cfg.model = ModelKind::swlin;
  cfg.viscosity = SwViscosity::eddy;
  cfg.t_final = 0.1;
  cfg.solver = SolverKind::cnd;
  cfg.n_cells = 50;
  const CsvTable table = run_experiment(cfg).to_csv();
  // config echo lines are everything up to the appended run statistics
  std::string echo;
  for (const std::string& line : table.metadata) {
    if (line.rfind("steps = ", 0) == 0) break;
    echo += line + "\n";
  }
  const ParseResult r = parse_config(echo);
  REQUIRE(r.config.has_value());
  CHECK(r.config->to_text() == cfg.to_text());
}

TEST_CASE("reference columns are attached by nearest cell") {
  // build a small reference csv
  const char* ref_path = "test_reference_tmp.csv";
  {
    CsvTable ref;
    ref.columns = {"x", "rho", "u", "p"};
    const Grid g = make_grid(-1.0, 1.0, 40);
    for (int j = 0; j < g.n_cells; ++j)
      ref.rows.push_back({g.centers[j], 1.5, 0.5, 2.5});
    write_csv(ref, ref_path);
  }

  ExperimentConfig cfg;
  cfg.model = ModelKind::euler;
  cfg.init = InitKind::eulinit;
  cfg.left_bc = BcKind::eulbd;
  cfg.t_final = 0.05;
  cfg.solver = SolverKind::cnd;
  cfg.n_cells = 80;
  cfg.reference_path = ref_path;
  const RunOutput out = run_experiment(cfg);
  REQUIRE(out.columns.size() == 7);  // x, rho, u, p, ref_rho, ref_u, ref_p
  CHECK(out.columns[4] == "ref_rho");
  for (const auto& row : out.rows) {
    CHECK(row[4] == 1.5);
    CHECK(row[5] == 0.5);
    CHECK(row[6] == 2.5);
  }
  std::remove(ref_path);
}

TEST_CASE("convergence_study") {
  ExperimentConfig cfg;
  cfg.model = ModelKind::swlin;
  cfg.viscosity = SwViscosity::eddy;
  cfg.init = InitKind::swsine;
  cfg.t_final = 0.1;
  cfg.solver = SolverKind::cnd;
  cfg.n_cells = 100;
  cfg.attach_exact = false;

  SUBCASE("first order on the smooth transport problem") {
    const ConvergenceTable table = convergence_study(cfg, {100, 200, 400});
    REQUIRE(table.rows.size() == 3);
    CHECK_FALSE(table.rows[0].rate.has_value());
    REQUIRE(table.rows[2].rate.has_value());
    CHECK(*table.rows[2].rate >= 0.8);
    CHECK(table.rows[0].l1 > table.rows[2].l1);
  }

  SUBCASE("mesh lists must be nested and long enough") {
    CHECK_THROWS_AS(convergence_study(cfg, {100, 200}),
                    std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(cfg, {100, 150, 300}),
                    std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(cfg, {400, 200, 100}),
                    std::invalid_argument);
  }

  SUBCASE("identical reference leaves rates undefined") {
    // constant problem: every mesh reproduces the constant exactly
    ExperimentConfig steady;
    steady.model = ModelKind::swlin;
    steady.viscosity = SwViscosity::eddy;
    steady.init = InitKind::constant;
    steady.init_value = {2.0, 1.0};
    steady.left_bc = BcKind::constant;
    steady.left_bc_value = {2.0, 1.0};
    steady.t_final = 0.05;
    steady.solver = SolverKind::cnd;
    steady.n_cells = 40;
    steady.attach_exact = false;

    const char* ref_path = "test_constant_ref_tmp.csv";
    {
      ExperimentConfig once = steady;
      once.output_path = ref_path;
      run_experiment(once);
    }
    ExperimentConfig with_ref = steady;
    with_ref.reference_path = ref_path;
    const ConvergenceTable table =
        convergence_study(with_ref, {40, 80, 160});
    for (const auto& row : table.rows) {
      CHECK(row.l1 == 0.0);
      CHECK_FALSE(row.rate.has_value());
    }
    std::remove(ref_path);
  }

  SUBCASE("problems without exact solutions need a reference") {
    ExperimentConfig bare;
    bare.model = ModelKind::euler;
    bare.t_final = 0.05;
    bare.solver = SolverKind::cnd;
    bare.n_cells = 40;
    CHECK_THROWS_AS(convergence_study(bare, {40, 80, 160}),
                    std::invalid_argument);
  }
}

TEST_CASE("attach_exact degrades gracefully outside the validity window") {
  ExperimentConfig cfg;
  cfg.model = ModelKind::swlin;
  cfg.viscosity = SwViscosity::eddy;
  cfg.t_final = 0.4;  // beyond the fan interaction time 0.3535
  cfg.solver = SolverKind::cnd;
  cfg.n_cells = 100;
  const RunOutput out = run_experiment(cfg);
  CHECK(out.columns.size() == 3);  // no exact columns attached
}
