#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "killingbeck/errors.hpp"
#include "killingbeck/quasi_exact.hpp"
#include "killingbeck/series.hpp"
#include "killingbeck/shooting.hpp"
#include "killingbeck/special_cases.hpp"
#include "report.hpp"
#include "table1_data.hpp"

namespace killingbeck::cli {
namespace {

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "csv";
  std::string out;
  std::string config;

  Format parsed_format() const { return format == "jsonl" ? Format::jsonl : Format::csv; }
};

struct Model {
  double a = 0.0, c = 0.0, mass = 0.0, c_ps = 0.0;
  int n = 1, kappa = 0;

  PhysicalParams physical() const { return {mass, c_ps}; }
};

struct Oracle {
  int steps = 8000;
  double r_min = 1e-4;

  ShootingConfig config() const {
    ShootingConfig cfg;
    cfg.steps = steps;
    cfg.r_min = r_min;
    return cfg;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  sub->add_option("--out", c.out, "write rows to this file instead of stdout");
  sub->add_option("--config", c.config, "key=value file; command-line flags take precedence");
}

void add_model(CLI::App* sub, Model& m) {
  sub->add_option("--a", m.a, "quadratic strength a [fm^-3]")->required();
  sub->add_option("--c", m.c, "Coulomb strength c")->required();
  sub->add_option("--M", m.mass, "mass M [fm^-1]")->required();
  sub->add_option("--Cps", m.c_ps, "pseudospin constant C_ps [fm^-1]")->required();
  sub->add_option("--n", m.n, "series index n (polynomial degree n - 1)")->required();
  sub->add_option("--kappa", m.kappa, "spin-orbit quantum number, nonzero")->required();
}

void add_oracle(CLI::App* sub, Oracle& o) {
  sub->add_option("--steps", o.steps, "RK4 steps per shooting leg")->capture_default_str();
  sub->add_option("--r-min", o.r_min, "inner start radius of the oracle [fm]")
      ->capture_default_str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Appends the entries of a --config file that are not given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw InvalidInput("cannot read config file " + *path);

  const auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (key.empty() || key == "config") {
      throw InvalidInput(*path + ":" + std::to_string(lineno) + ": bad key");
    }
    const std::string value = eq == std::string::npos ? "true" : trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    if (!given(flag)) extra.push_back(flag + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

IndexConvention parse_convention(const std::string& s) {
  return s == "paper-kappa" ? IndexConvention::paper_kappa : IndexConvention::regular_delta;
}

const char* convention_name(IndexConvention c) {
  return c == IndexConvention::paper_kappa ? "paper-kappa" : "regular-delta";
}

const char* method_name(SolveMethod m) { return m == SolveMethod::eq19 ? "eq19" : "recurrence"; }

std::vector<QuasiExactSolution> solve_mode(const Model& m, const std::string& mode,
                                           IndexConvention convention) {
  SearchConfig search;
  search.convention = convention;
  if (mode == "eq19") {
    return solve_energy(m.a, m.c, m.physical(), channel_from_kappa(m.kappa, m.n), search);
  }
  channel_from_kappa(m.kappa, m.n);  // same argument checks as the eq19 path
  TerminationConfig cfg;
  cfg.search = search;
  return solve_by_termination(m.a, m.c, m.physical(), m.kappa, m.n - 1, cfg);
}

struct Output {
  std::ofstream file;
  std::ostream* stream;

  Output(const Common& c, std::ostream& fallback) : stream(&fallback) {
    if (c.out.empty()) return;
    file.open(c.out);
    if (!file) throw InvalidInput("cannot write " + c.out);
    stream = &file;
  }
  std::ostream& get() { return *stream; }
};

int cmd_solve(const Model& m, const std::string& mode, const std::string& convention_flag,
              const Common& common, std::ostream& out, std::ostream& err) {
  const auto convention = parse_convention(convention_flag);
  std::map<std::string, std::vector<QuasiExactSolution>> found;
  for (const std::string method : {"eq19", "recurrence"}) {
    if (mode != "both" && mode != method) continue;
    try {
      found[method] = solve_mode(m, method, convention);
    } catch (const NoConvergenceError& e) {
      if (mode != "both") throw;
      write_error(std::string(to_string(e.code())), std::string("recurrence: ") + e.what(),
                  common.parsed_format(), err);
    }
  }

  Table table;
  table.columns = {"method", "convention", "n", "kappa", "E", "b_solved", "gamma_tilde",
                   "residual", "agreement"};
  for (const auto& [method, sols] : found) {
    const auto* other = mode == "both" && found.size() == 2
                            ? &found.at(method == "eq19" ? "recurrence" : "eq19")
                            : nullptr;
    for (const auto& s : sols) {
      Cell agreement;
      if (other) {
        const auto* near = nearest_solution(*other, s.energy);
        if (near) agreement = std::abs(near->energy - s.energy);
      }
      table.add({std::string(method_name(s.method)),
                 std::string(s.method == SolveMethod::eq19 ? convention_name(convention)
                                                           : "regular-delta"),
                 static_cast<long long>(s.channel.n), static_cast<long long>(s.channel.kappa),
                 s.energy, s.b_solved(), s.gamma_tilde(), s.residual, agreement});
    }
  }
  Output sink(common, out);
  write(table, common.parsed_format(), sink.get());
  if (table.rows.empty()) {
    write_error("not-found", "no root in the search bracket", common.parsed_format(), err);
    return 1;
  }
  return 0;
}

struct Table1Row {
  std::string n, kappa, a, b, energy;
};

std::vector<Table1Row> read_table1(const std::string& override_path) {
  std::string text = kTable1Csv;
  if (!override_path.empty()) {
    std::ifstream in(override_path);
    if (!in) throw InvalidInput("cannot read " + override_path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  std::vector<Table1Row> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(trim(cell));
    if (f.size() != 5) throw InvalidInput("table data row needs 5 fields: " + line);
    rows.push_back({f[0], f[1], f[2], f[3], f[4]});
  }
  return rows;
}

int cmd_table1(const std::string& mode, const std::string& convention_flag,
               const std::string& data, const Common& common, std::ostream& out) {
  constexpr double c = 1.0;
  const PhysicalParams phys{5.0, -5.5};
  const auto convention = parse_convention(convention_flag);

  Table table;
  table.columns = {"n",          "kappa",      "a",
                   "E_paper",    "b_paper",    "mode",
                   "E_computed", "b_computed", "residual_computed",
                   "abs_dE",     "eq19_residual_at_E_paper", "roots"};
  for (const auto& row : read_table1(data)) {
    Model m;
    m.n = std::stoi(row.n);
    m.kappa = std::stoi(row.kappa);
    m.a = std::stod(row.a);
    m.c = c;
    m.mass = phys.mass;
    m.c_ps = phys.c_ps;
    const double e_paper = std::stod(row.energy);

    std::vector<QuasiExactSolution> sols;
    try {
      sols = solve_mode(m, mode, convention);
    } catch (const NoConvergenceError&) {
    }
    const auto* near = nearest_solution(sols, e_paper);
    const Channel ch = channel_from_kappa(m.kappa, m.n);
    const double literal = energy_residual(gamma_tilde(e_paper, phys), m.a, c, phys, ch,
                                           IndexConvention::paper_kappa);
    Cell e_c, b_c, r_c, de;
    if (near) {
      e_c = near->energy;
      b_c = near->b_solved();
      r_c = near->residual;
      de = std::abs(near->energy - e_paper);
    }
    table.add({row.n, row.kappa, row.a, row.energy, row.b, mode, e_c, b_c, r_c, de, literal,
               static_cast<long long>(sols.size())});
  }
  Output sink(common, out);
  write(table, common.parsed_format(), sink.get());
  return 0;
}

struct VerifyFlags {
  std::string mode = "recurrence";
  std::string convention = "regular-delta";
  std::optional<double> b, energy;
  std::optional<int> nodes;
};

int cmd_verify(const Model& m, const VerifyFlags& v, const Oracle& o, const Common& common,
               std::ostream& out, std::ostream& err) {
  const auto cfg = o.config();
  Table table;
  table.columns = {"method",    "n",        "kappa",      "n_r",
                   "E_analytic", "b",       "E_numeric",  "abs_diff",
                   "node_count", "wavefunction_nodes", "match_defect", "converged"};
  bool any_converged = false;

  if (v.energy || v.b) {
    if (!v.energy || !v.b) throw InvalidInput("--E and --b must be given together");
    const Channel ch = channel_from_kappa(m.kappa, m.n);
    const int n_r = v.nodes.value_or(m.n - 1);
    const auto rep = verify_energy(*v.energy, {m.a, *v.b, m.c}, m.physical(), ch, n_r, cfg);
    table.add({std::string("given"), static_cast<long long>(m.n),
               static_cast<long long>(m.kappa), static_cast<long long>(n_r), rep.energy_analytic,
               *v.b, rep.energy_numeric, rep.abs_diff, static_cast<long long>(rep.node_count),
               Cell{}, rep.match_defect, rep.converged});
    any_converged = rep.converged;
  } else {
    const auto sols = solve_mode(m, v.mode, parse_convention(v.convention));
    for (const auto& s : sols) {
      try {
        const auto rep = verify(s, cfg);
        Cell wf_nodes;
        try {
          wf_nodes = static_cast<long long>(build_wavefunction(s).node_count_G);
        } catch (const Error&) {
        }
        table.add({std::string(method_name(s.method)), static_cast<long long>(s.channel.n),
                   static_cast<long long>(s.channel.kappa),
                   static_cast<long long>(s.polynomial_degree()), rep.energy_analytic,
                   s.b_solved(), rep.energy_numeric, rep.abs_diff,
                   static_cast<long long>(rep.node_count), wf_nodes, rep.match_defect,
                   rep.converged});
        any_converged = any_converged || rep.converged;
      } catch (const Error& e) {
        write_error(std::string(to_string(e.code())), e.what(), common.parsed_format(), err);
      }
    }
  }
  Output sink(common, out);
  write(table, common.parsed_format(), sink.get());
  return any_converged ? 0 : 1;
}

struct WavefunctionFlags {
  std::string mode = "recurrence";
  std::string convention = "regular-delta";
  int root = 0;
  int points = 4001;
  double r_min = 1e-6;
};

int cmd_wavefunction(const Model& m, const WavefunctionFlags& w, const Common& common,
                     std::ostream& out) {
  const auto sols = solve_mode(m, w.mode, parse_convention(w.convention));
  if (w.root < 0 || static_cast<std::size_t>(w.root) >= sols.size()) {
    throw Error(ErrorCode::not_found, "root index " + std::to_string(w.root) + " requested, " +
                                          std::to_string(sols.size()) + " roots found");
  }
  const auto& sol = sols[static_cast<std::size_t>(w.root)];
  GridConfig grid;
  grid.points = w.points;
  grid.r_min = w.r_min;
  const auto wf = build_wavefunction(sol, grid);

  Table table;
  table.meta = {{"method", std::string(method_name(sol.method))},
                {"n", static_cast<long long>(sol.channel.n)},
                {"kappa", static_cast<long long>(sol.channel.kappa)},
                {"E", sol.energy},
                {"b", sol.b_solved()},
                {"N", wf.norm},
                {"normalization", normalization(wf)},
                {"node_count", static_cast<long long>(wf.node_count_G)}};
  table.columns = {"r", "G", "F"};
  for (std::size_t i = 0; i < wf.r.size(); ++i) table.add({wf.r[i], wf.G[i], wf.F[i]});
  Output sink(common, out);
  write(table, common.parsed_format(), sink.get());
  return 0;
}

int cmd_coulomb(double c, int n, int l_tilde, double mass, bool oracle, const Oracle& o,
                const Common& common, std::ostream& out) {
  const double e = coulomb_energy(c, n, l_tilde, mass);
  Cell e_num, diff;
  if (oracle) {
    const auto p = coulomb_problem(c, n, l_tilde, mass);
    const auto rep = verify_energy(e, p.potential, p.physical, p.channel, p.n_r, o.config());
    e_num = rep.energy_numeric;
    diff = rep.abs_diff;
  }
  Table table;
  table.columns = {"case", "c", "n", "l_tilde", "M", "E", "E_oracle", "abs_diff"};
  table.add({std::string("coulomb"), c, static_cast<long long>(n),
             static_cast<long long>(l_tilde), mass, e, e_num, diff});
  Output sink(common, out);
  write(table, common.parsed_format(), sink.get());
  return 0;
}

int cmd_oscillator(const OscillatorSpec& spec, bool oracle, const Oracle& o,
                   const Common& common, std::ostream& out) {
  const double e = oscillator_energy(spec);
  const auto p = oscillator_problem(spec);
  Cell e_num, diff;
  if (oracle) {
    const auto rep = verify_energy(e, p.potential, p.physical, p.channel, p.n_r, o.config());
    e_num = rep.energy_numeric;
    diff = rep.abs_diff;
  }
  Table table;
  table.columns = {"case", "omega", "n_r", "l_tilde", "M", "a", "E", "E_oracle", "abs_diff"};
  table.add({std::string("oscillator"), spec.omega, static_cast<long long>(spec.n_r),
             static_cast<long long>(spec.l_tilde), spec.mass, p.potential.a, e, e_num, diff});
  Output sink(common, out);
  write(table, common.parsed_format(), sink.get());
  return 0;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input:
    case ErrorCode::domain:
    case ErrorCode::degenerate_channel:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-exact pseudospin solver for the Dirac-Killingbeck problem", "killingbeck"};
  app.require_subcommand(1);
  Common common;

  Model model;
  std::string solve_mode_flag = "eq19", convention = "regular-delta";
  auto* solve = app.add_subcommand("solve", "roots of the spectrum equation or of series termination");
  add_model(solve, model);
  solve->add_option("--mode", solve_mode_flag, "eq19, recurrence or both")
      ->check(CLI::IsMember({"eq19", "recurrence", "both"}))
      ->capture_default_str();
  solve->add_option("--convention", convention, "regular-delta or paper-kappa (eq19 only)")
      ->check(CLI::IsMember({"regular-delta", "paper-kappa"}))
      ->capture_default_str();
  add_common(solve, common);

  std::string table_mode = "recurrence", table_convention = "regular-delta", table_data;
  auto* table1 = app.add_subcommand("table1", "recompute the published c = 1 energy table");
  table1->add_option("--mode", table_mode, "eq19 or recurrence")
      ->check(CLI::IsMember({"eq19", "recurrence"}))
      ->capture_default_str();
  table1->add_option("--convention", table_convention, "regular-delta or paper-kappa")
      ->check(CLI::IsMember({"regular-delta", "paper-kappa"}))
      ->capture_default_str();
  table1->add_option("--data", table_data, "CSV (n,kappa,a,b,E) replacing the embedded table");
  add_common(table1, common);

  VerifyFlags vflags;
  Oracle oracle;
  auto* verify_cmd = app.add_subcommand("verify", "check quasi-exact energies with the shooting oracle");
  add_model(verify_cmd, model);
  verify_cmd->add_option("--mode", vflags.mode, "eq19 or recurrence")
      ->check(CLI::IsMember({"eq19", "recurrence"}))
      ->capture_default_str();
  verify_cmd->add_option("--convention", vflags.convention, "regular-delta or paper-kappa")
      ->check(CLI::IsMember({"regular-delta", "paper-kappa"}));
  verify_cmd->add_option("--E", vflags.energy, "verify this energy instead of solving");
  verify_cmd->add_option("--b", vflags.b, "linear strength b for --E");
  verify_cmd->add_option("--nodes", vflags.nodes, "target node count for --E (default n - 1)");
  add_oracle(verify_cmd, oracle);
  add_common(verify_cmd, common);

  WavefunctionFlags wflags;
  auto* wave = app.add_subcommand("wavefunction", "sample the normalized spinor (r, G, F)");
  add_model(wave, model);
  wave->add_option("--mode", wflags.mode, "eq19 or recurrence")
      ->check(CLI::IsMember({"eq19", "recurrence"}))
      ->capture_default_str();
  wave->add_option("--convention", wflags.convention, "regular-delta or paper-kappa")
      ->check(CLI::IsMember({"regular-delta", "paper-kappa"}));
  wave->add_option("--root", wflags.root, "index of the root, ascending in E")
      ->capture_default_str();
  wave->add_option("--points", wflags.points, "odd number of grid points")->capture_default_str();
  wave->add_option("--r-min", wflags.r_min, "first grid radius [fm]")->capture_default_str();
  add_common(wave, common);

  auto* special = app.add_subcommand("special", "closed-form Coulomb and oscillator limits");
  special->require_subcommand(1);
  double sc_c = 0.0, sc_mass = 0.0, omega = 0.0;
  int sc_n = 1, sc_ltilde = 0, osc_nr = 0;
  bool with_oracle = false;
  auto* coulomb = special->add_subcommand("coulomb", "E = M (c^2 - 4N^2) / (c^2 + 4N^2), N = n + l_tilde");
  coulomb->add_option("--c", sc_c)->required();
  coulomb->add_option("--n", sc_n)->required();
  coulomb->add_option("--ltilde", sc_ltilde)->required();
  coulomb->add_option("--M", sc_mass)->required();
  coulomb->add_flag("--oracle", with_oracle, "also solve with the shooting oracle");
  add_oracle(coulomb, oracle);
  add_common(coulomb, common);
  auto* osc = special->add_subcommand("oscillator", "harmonic-oscillator limit, a = M omega^2 / 2");
  osc->add_option("--omega", omega)->required();
  osc->add_option("--nr", osc_nr)->required();
  osc->add_option("--ltilde", sc_ltilde)->required();
  osc->add_option("--M", sc_mass)->required();
  osc->add_flag("--oracle", with_oracle, "also solve with the shooting oracle");
  add_oracle(osc, oracle);
  add_common(osc, common);

  try {
    auto args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    const auto* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << e.what() << '\n' << failed->help();
    return 2;
  } catch (const InvalidInput& e) {
    err << e.what() << '\n';
    return 2;
  }

  const Format format = common.parsed_format();
  try {
    if (solve->parsed()) return cmd_solve(model, solve_mode_flag, convention, common, out, err);
    if (table1->parsed()) return cmd_table1(table_mode, table_convention, table_data, common, out);
    if (verify_cmd->parsed()) return cmd_verify(model, vflags, oracle, common, out, err);
    if (wave->parsed()) return cmd_wavefunction(model, wflags, common, out);
    if (coulomb->parsed()) {
      return cmd_coulomb(sc_c, sc_n, sc_ltilde, sc_mass, with_oracle, oracle, common, out);
    }
    if (osc->parsed()) {
      return cmd_oscillator({omega, osc_nr, sc_ltilde, sc_mass}, with_oracle, oracle, common, out);
    }
  } catch (const Error& e) {
    write_error(std::string(to_string(e.code())), e.what(), format, err);
    return exit_code(e.code());
  } catch (const InvalidInput& e) {
    write_error("invalid-input", e.what(), format, err);
    return 2;
  } catch (const std::invalid_argument& e) {
    write_error("invalid-input", e.what(), format, err);
    return 2;
  } catch (const std::out_of_range& e) {
    write_error("invalid-input", e.what(), format, err);
    return 2;
  }
  return 2;
}

}  // namespace killingbeck::cli
