#include "vmfv/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace vmfv {

namespace {

// ---------------------------------------------------------------------
// enum <-> string tables

const std::map<std::string, ModelKind> kModelNames = {
    {"swlin", ModelKind::swlin}, {"euler", ModelKind::euler}};
const std::map<std::string, SwViscosity> kViscosityNames = {
    {"laplacian", SwViscosity::laplacian}, {"eddy", SwViscosity::eddy}};
const std::map<std::string, InitKind> kInitNames = {
    {"lswinit", InitKind::lswinit},
    {"eulinit", InitKind::eulinit},
    {"swsine", InitKind::swsine},
    {"constant", InitKind::constant}};
const std::map<std::string, BcKind> kBcNames = {{"ldir", BcKind::ldir},
                                                {"eulbd", BcKind::eulbd},
                                                {"open", BcKind::open},
                                                {"constant", BcKind::constant}};
const std::map<std::string, SolverKind> kSolverNames = {
    {"roe", SolverKind::roe},
    {"cnd", SolverKind::cnd},
    {"cnd2", SolverKind::cnd2},
    {"ec", SolverKind::ec},
    {"viscous", SolverKind::viscous}};
const std::map<std::string, EulerDiffusion> kDiffusionNames = {
    {"ns", EulerDiffusion::navier_stokes},
    {"laplacian", EulerDiffusion::laplacian}};

template <typename T>
std::string name_of(const std::map<std::string, T>& table, T value) {
  for (const auto& [name, v] : table)
    if (v == value) return name;
  return "?";
}

template <typename T>
std::string known_values(const std::map<std::string, T>& table) {
  std::string s;
  for (const auto& [name, v] : table) {
    if (!s.empty()) s += ", ";
    s += name;
  }
  return s;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += format_double(xs[i]);
  }
  return s;
}

// ---------------------------------------------------------------------
// raw entries + typed accessors that collect violations

struct RawEntry {
  std::string section, key, value;
  size_t line;
  bool used = false;
};

class EntrySet {
public:
  explicit EntrySet(std::vector<RawEntry> entries)
      : entries_(std::move(entries)) {}

  const std::string* find(const std::string& section, const std::string& key) {
    for (RawEntry& e : entries_)
      if (e.section == section && e.key == key) {
        e.used = true;
        return &e.value;
      }
    return nullptr;
  }

  void get_double(const std::string& sec, const std::string& key, double& out) {
    if (const std::string* v = find(sec, key)) {
      try {
        size_t pos = 0;
        const double x = std::stod(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        out = x;
      } catch (const std::exception&) {
        fail(sec, key, "expected a number, got '" + *v + "'");
      }
    }
  }

  void get_int(const std::string& sec, const std::string& key, int& out) {
    if (const std::string* v = find(sec, key)) {
      try {
        size_t pos = 0;
        const long x = std::stol(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        out = static_cast<int>(x);
      } catch (const std::exception&) {
        fail(sec, key, "expected an integer, got '" + *v + "'");
      }
    }
  }

  void get_bool(const std::string& sec, const std::string& key, bool& out) {
    if (const std::string* v = find(sec, key)) {
      if (*v == "true" || *v == "1")
        out = true;
      else if (*v == "false" || *v == "0")
        out = false;
      else
        fail(sec, key, "expected true/false, got '" + *v + "'");
    }
  }

  void get_string(const std::string& sec, const std::string& key,
                  std::string& out) {
    if (const std::string* v = find(sec, key)) out = *v;
  }

  void get_vector(const std::string& sec, const std::string& key,
                  std::vector<double>& out) {
    if (const std::string* v = find(sec, key)) {
      std::vector<double> xs;
      std::istringstream is(*v);
      std::string cell;
      bool ok = true;
      while (std::getline(is, cell, ',')) {
        try {
          size_t pos = 0;
          cell = trim(cell);
          xs.push_back(std::stod(cell, &pos));
          if (pos != cell.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          ok = false;
        }
      }
      if (ok && !xs.empty())
        out = xs;
      else
        fail(sec, key, "expected comma-separated numbers, got '" + *v + "'");
    }
  }

  template <typename T>
  void get_enum(const std::string& sec, const std::string& key,
                const std::map<std::string, T>& table, T& out) {
    if (const std::string* v = find(sec, key)) {
      auto it = table.find(*v);
      if (it == table.end())
        fail(sec, key, "unknown value '" + *v + "' (one of: " +
                           known_values(table) + ")");
      else
        out = it->second;
    }
  }

  void fail(const std::string& sec, const std::string& key,
            const std::string& what) {
    errors.push_back(sec + "." + key + ": " + what);
  }

  void reject_unused() {
    for (const RawEntry& e : entries_)
      if (!e.used) {
        std::ostringstream os;
        os << e.section << "." << e.key << ": unknown key (line " << e.line
           << ")";
        errors.push_back(os.str());
      }
  }

  std::vector<std::string> errors;

private:
  std::vector<RawEntry> entries_;
};

int model_dim(ModelKind m) { return m == ModelKind::swlin ? 2 : 3; }

// Smooth compactly supported bump used by the swsine convergence problem.
constexpr double kSineAmplitude = 0.2;
constexpr double kSineHalfWidth = 0.3;

double smooth_bump(double x) {
  const double r = x / kSineHalfWidth;
  if (std::abs(r) >= 1.0) return 0.0;
  return kSineAmplitude * std::exp(1.0 - 1.0 / (1.0 - r * r));
}

}  // namespace

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  os << "[model]\n";
  os << "type = " << name_of(kModelNames, model) << "\n";
  if (model == ModelKind::swlin) {
    os << "viscosity = " << name_of(kViscosityNames, viscosity) << "\n";
    os << "h_tilde = " << format_double(sw_params.h_tilde) << "\n";
    os << "u_tilde = " << format_double(sw_params.u_tilde) << "\n";
    os << "g = " << format_double(sw_params.g) << "\n";
  } else {
    os << "gamma = " << format_double(gamma) << "\n";
    os << "nu = " << format_double(nu) << "\n";
    os << "kappa = " << format_double(kappa) << "\n";
  }
  os << "\n[problem]\n";
  os << "init = " << name_of(kInitNames, init) << "\n";
  if (init == InitKind::constant)
    os << "init_value = " << join(init_value) << "\n";
  os << "left_bc = " << name_of(kBcNames, left_bc) << "\n";
  if (left_bc == BcKind::constant)
    os << "left_bc_value = " << join(left_bc_value) << "\n";
  os << "right_bc = " << name_of(kBcNames, right_bc) << "\n";
  if (right_bc == BcKind::constant)
    os << "right_bc_value = " << join(right_bc_value) << "\n";
  os << "x_left = " << format_double(x_left) << "\n";
  os << "x_right = " << format_double(x_right) << "\n";
  os << "t_final = " << format_double(t_final) << "\n";
  os << "\n[solver]\n";
  os << "scheme = " << name_of(kSolverNames, solver) << "\n";
  os << "n_cells = " << n_cells << "\n";
  os << "cfl = " << format_double(cfl) << "\n";
  if (solver == SolverKind::viscous) {
    os << "cfl_diff = " << format_double(cfl_diff) << "\n";
    os << "epsilon = " << format_double(epsilon) << "\n";
    if (model == ModelKind::euler)
      os << "diffusion = " << name_of(kDiffusionNames, diffusion) << "\n";
  }
  os << "\n[output]\n";
  if (!output_path.empty()) os << "path = " << output_path << "\n";
  os << "exact = " << (attach_exact ? "true" : "false") << "\n";
  if (!reference_path.empty()) os << "reference = " << reference_path << "\n";
  return os.str();
}

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  std::vector<RawEntry> entries;
  {
    std::istringstream in(text);
    std::string line, section;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          std::ostringstream os;
          os << "line " << line_no << ": malformed section header '" << line
             << "'";
          result.errors.push_back(os.str());
          continue;
        }
        section = trim(line.substr(1, line.size() - 2));
        if (section != "model" && section != "problem" &&
            section != "solver" && section != "output") {
          std::ostringstream os;
          os << "line " << line_no << ": unknown section [" << section << "]";
          result.errors.push_back(os.str());
          section.clear();
        }
        continue;
      }
      const size_t eq = line.find('=');
      if (eq == std::string::npos) {
        std::ostringstream os;
        os << "line " << line_no << ": expected 'key = value', got '" << line
           << "'";
        result.errors.push_back(os.str());
        continue;
      }
      if (section.empty()) {
        std::ostringstream os;
        os << "line " << line_no << ": key outside of any section";
        result.errors.push_back(os.str());
        continue;
      }
      entries.push_back(RawEntry{section, trim(line.substr(0, eq)),
                                 trim(line.substr(eq + 1)), line_no});
    }
  }

  EntrySet set(std::move(entries));
  ExperimentConfig cfg;

  set.get_enum("model", "type", kModelNames, cfg.model);
  set.get_enum("solver", "scheme", kSolverNames, cfg.solver);

  // Problem defaults follow the model.
  if (cfg.model == ModelKind::euler) {
    cfg.init = InitKind::eulinit;
    cfg.left_bc = BcKind::eulbd;
  }

  if (cfg.model == ModelKind::swlin) {
    set.get_enum("model", "viscosity", kViscosityNames, cfg.viscosity);
    set.get_double("model", "h_tilde", cfg.sw_params.h_tilde);
    set.get_double("model", "u_tilde", cfg.sw_params.u_tilde);
    set.get_double("model", "g", cfg.sw_params.g);
    if (!(cfg.sw_params.h_tilde > 0.0))
      set.fail("model", "h_tilde", "must be positive");
    if (!(cfg.sw_params.g > 0.0)) set.fail("model", "g", "must be positive");
  } else {
    set.get_double("model", "gamma", cfg.gamma);
    set.get_double("model", "nu", cfg.nu);
    set.get_double("model", "kappa", cfg.kappa);
    if (!(cfg.gamma > 1.0)) set.fail("model", "gamma", "must exceed 1");
    if (cfg.nu < 0.0) set.fail("model", "nu", "must be nonnegative");
    if (cfg.kappa < 0.0) set.fail("model", "kappa", "must be nonnegative");
  }

  set.get_enum("problem", "init", kInitNames, cfg.init);
  set.get_vector("problem", "init_value", cfg.init_value);
  set.get_enum("problem", "left_bc", kBcNames, cfg.left_bc);
  set.get_vector("problem", "left_bc_value", cfg.left_bc_value);
  set.get_enum("problem", "right_bc", kBcNames, cfg.right_bc);
  set.get_vector("problem", "right_bc_value", cfg.right_bc_value);
  set.get_double("problem", "x_left", cfg.x_left);
  set.get_double("problem", "x_right", cfg.x_right);
  set.get_double("problem", "t_final", cfg.t_final);

  set.get_int("solver", "n_cells", cfg.n_cells);
  set.get_double("solver", "cfl", cfg.cfl);
  set.get_double("solver", "cfl_diff", cfg.cfl_diff);
  set.get_double("solver", "epsilon", cfg.epsilon);
  set.get_enum("solver", "diffusion", kDiffusionNames, cfg.diffusion);

  set.get_string("output", "path", cfg.output_path);
  set.get_bool("output", "exact", cfg.attach_exact);
  set.get_string("output", "reference", cfg.reference_path);

  set.reject_unused();

  // Cross-field validation.
  const int m = model_dim(cfg.model);
  if (!(cfg.x_left < cfg.x_right))
    set.fail("problem", "x_left", "domain is degenerate");
  if (!(cfg.t_final > 0.0))
    set.fail("problem", "t_final", "required and must be positive");
  if (cfg.n_cells < 1)
    set.fail("solver", "n_cells", "required and must be at least 1");
  if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0))
    set.fail("solver", "cfl", "must lie in (0, 1)");
  if (cfg.solver == SolverKind::viscous) {
    if (!(cfg.epsilon > 0.0))
      set.fail("solver", "epsilon", "required and must be positive");
    if (!(cfg.cfl_diff > 0.0 && cfg.cfl_diff < 1.0))
      set.fail("solver", "cfl_diff", "must lie in (0, 1)");
  }
  if (cfg.init == InitKind::constant &&
      static_cast<int>(cfg.init_value.size()) != m)
    set.fail("problem", "init_value",
             "constant init needs exactly " + std::to_string(m) + " values");
  if (cfg.left_bc == BcKind::constant &&
      static_cast<int>(cfg.left_bc_value.size()) != m)
    set.fail("problem", "left_bc_value",
             "constant bc needs exactly " + std::to_string(m) + " values");
  if (cfg.right_bc == BcKind::constant &&
      static_cast<int>(cfg.right_bc_value.size()) != m)
    set.fail("problem", "right_bc_value",
             "constant bc needs exactly " + std::to_string(m) + " values");
  if (cfg.model == ModelKind::euler &&
      (cfg.init == InitKind::lswinit || cfg.init == InitKind::swsine))
    set.fail("problem", "init", "shallow water data on an euler model");
  if (cfg.model == ModelKind::swlin && cfg.init == InitKind::eulinit)
    set.fail("problem", "init", "euler data on a shallow water model");
  if (cfg.model == ModelKind::euler && cfg.left_bc == BcKind::ldir)
    set.fail("problem", "left_bc", "shallow water data on an euler model");
  if (cfg.model == ModelKind::swlin && cfg.left_bc == BcKind::eulbd)
    set.fail("problem", "left_bc", "euler data on a shallow water model");

  result.errors.insert(result.errors.end(), set.errors.begin(),
                       set.errors.end());
  if (result.errors.empty()) result.config = cfg;
  return result;
}

ParseResult parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult r;
    r.errors.push_back("cannot open config file: " + path);
    return r;
  }
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

ExperimentSetup make_setup(const ExperimentConfig& cfg) {
  ExperimentSetup setup;
  setup.grid = make_grid(cfg.x_left, cfg.x_right, cfg.n_cells);

  std::shared_ptr<const HyperbolicModel> model;
  if (cfg.model == ModelKind::swlin) {
    model = make_swlin_model(cfg.sw_params, cfg.viscosity);
    setup.component_names = {"h", "u"};
  } else {
    model = std::make_shared<EulerModel>(cfg.gamma, cfg.nu, cfg.kappa);
    setup.component_names = {"rho", "u", "p"};
  }
  setup.model = model;

  const double gamma = cfg.gamma;
  std::function<Vec(double)> init;
  switch (cfg.init) {
    case InitKind::lswinit:
      init = [](double x) {
        return x < 0.0 ? Vec{3.0, 1.0} : Vec{1.0, 1.0};
      };
      break;
    case InitKind::eulinit:
      init = [gamma](double x) {
        return x < 0.0 ? euler_prim_to_cons({3.0, 1.0, 3.0}, gamma)
                       : euler_prim_to_cons({1.0, 1.0, 1.0}, gamma);
      };
      break;
    case InitKind::swsine:
      init = [](double x) { return Vec{2.0 + smooth_bump(x), 1.0}; };
      break;
    case InitKind::constant: {
      Vec value(static_cast<int>(cfg.init_value.size()));
      for (int c = 0; c < value.size(); ++c) value[c] = cfg.init_value[c];
      if (cfg.model == ModelKind::euler)
        value = euler_prim_to_cons({value[0], value[1], value[2]}, gamma);
      init = [value](double) { return value; };
      break;
    }
  }
  setup.initial = init_field(*model, setup.grid, init);

  const auto make_bc = [&](BcKind kind, const std::vector<double>& values) {
    switch (kind) {
      case BcKind::ldir:
        return BoundaryCondition::dirichlet(Vec{2.0, 1.0});
      case BcKind::eulbd:
        return BoundaryCondition::dirichlet(
            euler_prim_to_cons({2.0, 1.0, 2.0}, gamma));
      case BcKind::open:
        return BoundaryCondition::open();
      case BcKind::constant: {
        Vec value(static_cast<int>(values.size()));
        for (int c = 0; c < value.size(); ++c) value[c] = values[c];
        if (cfg.model == ModelKind::euler)
          value = euler_prim_to_cons({value[0], value[1], value[2]}, gamma);
        return BoundaryCondition::dirichlet(value);
      }
    }
    return BoundaryCondition::open();
  };
  setup.left = make_bc(cfg.left_bc, cfg.left_bc_value);
  setup.right = make_bc(cfg.right_bc, cfg.right_bc_value);

  // Exact solutions for the two shallow water problems.
  if (cfg.model == ModelKind::swlin && cfg.init == InitKind::lswinit &&
      cfg.left_bc == BcKind::ldir && cfg.x_left == -1.0) {
    const SwViscosity kind = cfg.viscosity;
    setup.exact = [kind](double x, double t) {
      return exact_sw_solution(kind, x, t);
    };
  } else if (cfg.model == ModelKind::swlin && cfg.init == InitKind::swsine) {
    const SwLinParams p = cfg.sw_params;
    const double x_left = cfg.x_left, x_right = cfg.x_right;
    setup.exact = [p, x_left, x_right](double x, double t) {
      const double c = std::sqrt(p.g * p.h_tilde);
      const double l1 = p.u_tilde - c, l2 = p.u_tilde + c;
      if (-kSineHalfWidth + l1 * t <= x_left ||
          kSineHalfWidth + l2 * t >= x_right)
        throw std::invalid_argument(
            "swsine exact solution: waves reached the boundary");
      const double d1 = 0.5 * smooth_bump(x - l1 * t);
      const double d2 = 0.5 * smooth_bump(x - l2 * t);
      return Vec{2.0 + d1 + d2, 1.0 + (-d1 + d2) * c / p.h_tilde};
    };
  }
  return setup;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

CsvTable RunOutput::to_csv() const {
  CsvTable table;
  for (const std::string& line : split_lines(config.to_text()))
    table.metadata.push_back(line);
  table.metadata.push_back("steps = " + std::to_string(steps));
  table.metadata.push_back("conservation_defect = " +
                           format_double(conservation_defect_value));
  if (max_entropy_residual)
    table.metadata.push_back("max_entropy_residual = " +
                             format_double(*max_entropy_residual));
  table.columns = columns;
  table.rows = rows;
  return table;
}

RunOutput run_experiment(const ExperimentConfig& cfg, Exec exec,
                         const ProgressCallback& progress) {
  ExperimentSetup setup = make_setup(cfg);
  const auto start = std::chrono::steady_clock::now();

  RunResult rr;
  if (cfg.solver == SolverKind::viscous) {
    ViscousSpec spec;
    spec.base_model = setup.model;
    spec.epsilon = cfg.epsilon;
    if (cfg.model == ModelKind::swlin) {
      spec.kind = DiffusionKind::matrix_b;
      spec.b = sw_viscosity(cfg.viscosity);
    } else if (cfg.diffusion == EulerDiffusion::navier_stokes) {
      spec.kind = DiffusionKind::euler_navier_stokes;
      spec.nu = cfg.nu;
      spec.kappa = cfg.kappa;
    } else {
      spec.kind = DiffusionKind::identity_laplacian;
    }
    rr = run_viscous(spec, setup.initial, setup.left, setup.right,
                     cfg.t_final, cfg.cfl, cfg.cfl_diff, progress, exec);
  } else {
    SchemeConfig scheme;
    scheme.cfl = cfg.cfl;
    switch (cfg.solver) {
      case SolverKind::roe: scheme.kind = SchemeKind::roe; break;
      case SolverKind::cnd: scheme.kind = SchemeKind::cnd; break;
      case SolverKind::cnd2: scheme.kind = SchemeKind::cnd2; break;
      case SolverKind::ec: scheme.kind = SchemeKind::ec_only; break;
      case SolverKind::viscous: break;
    }
    TimeLoopConfig loop;
    loop.t_final = cfg.t_final;
    loop.cfl = cfg.cfl;
    rr = run_to_time(*setup.model, scheme, setup.initial, setup.left,
                     setup.right, loop, progress, exec);
  }

  RunOutput out;
  out.config = cfg;
  out.steps = rr.trace.steps;
  out.conservation_defect_value = conservation_defect(rr.trace);
  if (cfg.solver == SolverKind::cnd || cfg.solver == SolverKind::ec) {
    SchemeConfig scheme;
    scheme.kind =
        cfg.solver == SolverKind::cnd ? SchemeKind::cnd : SchemeKind::ec_only;
    out.max_entropy_residual =
        entropy_residual(*setup.model, scheme, rr.state, setup.left,
                         setup.right, rr.state.time)
            .max_positive_residual;
  }

  // Assemble rows: x, components (primitive for Euler), optional exact
  // and reference columns.
  const int n = setup.grid.n_cells;
  out.columns.push_back("x");
  for (const std::string& name : setup.component_names)
    out.columns.push_back(name);

  const auto to_components = [&](const Vec& state) {
    if (cfg.model == ModelKind::euler) {
      const EulerPrim w = euler_cons_to_prim(state, cfg.gamma);
      return Vec{w.rho, w.u, w.p};
    }
    return state;
  };

  bool with_exact = false;
  if (cfg.attach_exact && setup.exact) {
    try {
      setup.exact(setup.grid.centers[0], cfg.t_final);
      with_exact = true;
    } catch (const std::exception&) {
      with_exact = false;  // outside the validity window
    }
  }
  if (with_exact)
    for (const std::string& name : setup.component_names)
      out.columns.push_back("exact_" + name);

  CsvTable reference;
  int ref_x = -1;
  if (!cfg.reference_path.empty()) {
    reference = read_csv(cfg.reference_path);
    ref_x = reference.column_index("x");
    if (ref_x < 0)
      throw std::runtime_error("reference csv has no x column: " +
                               cfg.reference_path);
    if (reference.rows.empty())
      throw std::runtime_error("reference csv is empty: " +
                               cfg.reference_path);
    for (size_t c = 0; c < reference.columns.size(); ++c)
      if (static_cast<int>(c) != ref_x)
        out.columns.push_back("ref_" + reference.columns[c]);
  }

  out.rows.resize(n);
  for (int j = 0; j < n; ++j) {
    std::vector<double>& row = out.rows[j];
    const double x = setup.grid.centers[j];
    row.push_back(x);
    const Vec comps = to_components(rr.state.at(j));
    for (int c = 0; c < comps.size(); ++c) row.push_back(comps[c]);
    if (with_exact) {
      const Vec ex = setup.exact(x, cfg.t_final);
      for (int c = 0; c < ex.size(); ++c) row.push_back(ex[c]);
    }
    if (ref_x >= 0) {
      // Nearest reference row by x (reference meshes are uniform).
      const double rx0 = reference.rows.front()[ref_x];
      const double rx1 = reference.rows.back()[ref_x];
      const size_t rn = reference.rows.size();
      double pos = rn == 1 ? 0.0 : (x - rx0) / (rx1 - rx0) * (rn - 1);
      long i = std::lround(pos);
      i = std::max(0l, std::min(static_cast<long>(rn) - 1, i));
      for (size_t c = 0; c < reference.columns.size(); ++c)
        if (static_cast<int>(c) != ref_x)
          row.push_back(reference.rows[static_cast<size_t>(i)][c]);
    }
  }

  out.final_state = std::move(rr.state);
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  if (!cfg.output_path.empty()) write_csv(out.to_csv(), cfg.output_path);
  return out;
}

ConvergenceTable convergence_study(const ExperimentConfig& base,
                                   const std::vector<int>& meshes,
                                   Exec exec) {
  if (meshes.size() < 3)
    throw std::invalid_argument("convergence_study: need at least 3 meshes");
  for (size_t i = 0; i + 1 < meshes.size(); ++i) {
    if (meshes[i] < 1 || meshes[i + 1] % meshes[i] != 0 ||
        meshes[i + 1] <= meshes[i])
      throw std::invalid_argument(
          "convergence_study: meshes must be increasing and nested (each "
          "dividing the next)");
  }

  const bool has_exact = static_cast<bool>(make_setup(base).exact);
  CsvTable reference;
  if (!has_exact) {
    if (base.reference_path.empty())
      throw std::invalid_argument(
          "convergence_study: problem has no exact solution and no "
          "reference csv is configured");
    reference = read_csv(base.reference_path);
  }

  ConvergenceTable table;
  for (int n : meshes) {
    ExperimentConfig cfg = base;
    cfg.n_cells = n;
    cfg.output_path.clear();
    cfg.attach_exact = false;

    double l1 = 0.0;
    if (has_exact) {
      ExperimentSetup setup = make_setup(cfg);
      const RunOutput out = run_experiment(cfg, exec);
      const double t = cfg.t_final;
      l1 = error_norms(out.final_state,
                       [&](double x) { return setup.exact(x, t); })
               .l1;
    } else {
      const RunOutput out = run_experiment(cfg, exec);
      // Compare shared columns against the reference by nearest x.
      const int ref_x = reference.column_index("x");
      if (ref_x < 0)
        throw std::runtime_error("convergence_study: reference has no x");
      const double rx0 = reference.rows.front()[ref_x];
      const double rx1 = reference.rows.back()[ref_x];
      const size_t rn = reference.rows.size();
      const double dx = (cfg.x_right - cfg.x_left) / n;
      for (int j = 0; j < n; ++j) {
        const double x = out.rows[j][0];
        double pos = rn == 1 ? 0.0 : (x - rx0) / (rx1 - rx0) * (rn - 1);
        long i = std::lround(pos);
        i = std::max(0l, std::min(static_cast<long>(rn) - 1, i));
        for (size_t c = 1; c < out.columns.size(); ++c) {
          const int rc = reference.column_index(out.columns[c]);
          if (rc < 0) continue;
          l1 += std::abs(out.rows[j][c] -
                         reference.rows[static_cast<size_t>(i)][rc]) *
                dx;
        }
      }
    }

    ConvergenceRow row;
    row.n_cells = n;
    row.l1 = l1;
    if (!table.rows.empty() && table.rows.back().l1 > 0.0 && l1 > 0.0) {
      const double ratio =
          static_cast<double>(n) / table.rows.back().n_cells;
      row.rate = std::log(table.rows.back().l1 / l1) / std::log(ratio);
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace vmfv
