#include "mup/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mup/bipartite.hpp"
#include "mup/multipartite.hpp"
#include "mup/simple_state.hpp"
#include "mup/spectral.hpp"

namespace mup::cli {

namespace {

// nearest double to the 12-decimal value, so ranges and lists agree bitwise
double snap(double v) { return std::round(v * 1e12) / 1e12; }

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 19; ++k) g.push_back(snap(0.05 * k));
  return g;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::unique_ptr<RadialProfile> family_profile(int parties, double xi, Execution exec) {
  using multipartite::OdeFamilyProfile;
  if (parties == 2) return bipartite::f_profile(xi);
  if (parties == 4) return std::make_unique<OdeFamilyProfile>(OdeFamilyProfile::g_family(xi, 2.0, exec));
  return std::make_unique<OdeFamilyProfile>(OdeFamilyProfile::h_family(xi, exec));
}

UncertaintyReport family_product(int parties, double xi, const Tolerance& tol, Execution exec) {
  if (parties == 2) return bipartite::uncertainty_product(xi);
  const int n = parties / 2;
  auto p = family_profile(parties, xi, exec);
  return make_report(parties, xi, multipartite::functional_z(n, *p, tol, exec), ProductRoute::quadrature);
}

Outcome run_verify(const RunConfig& cfg) {
  Outcome out;
  out.table.columns = {"name", "value", "reference", "tolerance", "relation", "passed"};
  for (const auto& c : verify_suite(cfg.inject_fault, cfg.execution)) {
    out.table.rows.push_back({c.name, c.value, c.reference, c.tolerance, c.relation, c.passed});
    if (!c.passed) {
      out.status = 1;
      out.notes.push_back("check failed: " + c.name);
    }
  }
  return out;
}

Outcome run_scan(const RunConfig& cfg) {
  Outcome out;
  const bool two = cfg.parties == 2;
  out.table.columns = {"xi", "product", "separable_bound", "infimum", "violation_ratio"};
  if (two) {
    out.table.columns.push_back("R");
    out.table.columns.push_back("q0");
  }
  const auto& grid = cfg.xi_grid;
  // grid points are independent; failures are captured per point
  struct Point {
    UncertaintyReport rep;
    double r = 0.0, q = 0.0;
    std::string error;
  };
  auto pts = map_indexed<Point>(grid.size(), cfg.execution, [&](std::size_t i) {
    Point p;
    try {
      // nested kernels stay serial inside a parallel grid
      const Execution inner = cfg.execution == Execution::parallel && grid.size() > 1 ? Execution::serial : cfg.execution;
      p.rep = family_product(cfg.parties, grid[i], cfg.tol, inner);
      if (two) {
        p.r = bipartite::r_closed(grid[i]);
        p.q = simple_state::q0(grid[i]);
      }
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    return p;
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& p = pts[i];
    std::vector<Cell> row{grid[i]};
    if (!p.error.empty()) {
      row.resize(out.table.columns.size());
      out.notes.push_back("xi=" + format_double(grid[i]) + ": " + p.error);
      out.status = 1;
    } else {
      row.insert(row.end(), {p.rep.product, p.rep.separable_bound, p.rep.infimum, p.rep.violation_ratio});
      if (two) row.insert(row.end(), {p.r, p.q});
      if (!(p.rep.product > p.rep.infimum)) {
        out.notes.push_back("xi=" + format_double(grid[i]) + ": product not above the infimum");
        out.status = 1;
      }
      if (!(p.rep.product < p.rep.separable_bound)) {
        // only the bipartite family is below the separable bound everywhere
        out.notes.push_back("xi=" + format_double(grid[i]) + (two ? ": product not below the separable bound"
                                                                 : ": note: no entanglement witnessed (ratio < 1)"));
        if (two) out.status = 1;
      }
    }
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

Outcome run_profile(const RunConfig& cfg) {
  Outcome out;
  out.table.columns = {"xi", "r", "psi"};
  const int n = cfg.parties / 2;
  const double pre = std::sqrt(std::tgamma(n + 1.0) / std::pow(std::numbers::pi, n));
  std::vector<double> rs = cfg.r_grid;
  if (rs.empty())
    for (int k = 0; k <= 60; ++k) rs.push_back(0.05 * k);
  for (double xi : cfg.xi_grid) {
    try {
      auto prof = family_profile(cfg.parties, xi, cfg.execution);
      auto vals = map_indexed<double>(rs.size(), cfg.execution,
                                      [&](std::size_t i) { return pre * (*prof)(std::pow(rs[i], 2 * n)); });
      for (std::size_t i = 0; i < rs.size(); ++i) out.table.rows.push_back({xi, rs[i], vals[i]});
    } catch (const std::exception& e) {
      out.table.rows.push_back({xi, Cell{}, Cell{}});
      out.notes.push_back("xi=" + format_double(xi) + ": " + e.what());
      out.status = 1;
    }
  }
  return out;
}

Outcome run_minimize_q(const RunConfig& cfg) {
  Outcome out;
  out.table.columns = {"route", "q_min", "xi_min", "phi", "residual"};
  auto eig = spectral::min_eigenpair(spectral::build_q_form(cfg.truncation));
  auto sol = simple_state::minimize_q0();
  out.table.rows.push_back({std::string("eigen"), eig.eigenvalue, Cell{}, Cell{}, eig.residual});
  out.table.rows.push_back({std::string("closed_form"), sol.q_value, sol.xi, sol.phi, Cell{}});
  if (!(std::abs(eig.eigenvalue - sol.q_value) < 1e-4)) {
    out.status = 1;
    out.notes.push_back("routes disagree");
  }
  return out;
}

Outcome run_fock(const RunConfig& cfg) {
  Outcome out;
  out.table.columns = {"xi", "n", "m", "class", "coeff"};
  for (double xi : cfg.xi_grid)
    for (int total = 0; total <= cfg.truncation; ++total)
      for (int n = 0; n <= total; ++n) {
        const int m = total - n;
        if (!bipartite::fock_selected(n, m)) continue;
        const std::string cls = n % 4 == 0 ? "(0,0) mod 4" : "(2,2) mod 4";
        out.table.rows.push_back({xi, static_cast<long long>(n), static_cast<long long>(m), cls,
                                  bipartite::fock_coeff(n, m, xi)});
      }
  return out;
}

Outcome run_overlap(const RunConfig& cfg) {
  Outcome out;
  out.table.columns = {"xi", "xi_prime", "overlap"};
  const auto& g = cfg.xi_grid;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i; j < g.size(); ++j) out.table.rows.push_back({g[i], g[j], bipartite::overlap(g[i], g[j])});
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::scan: return "scan";
    case Command::profile: return "profile";
    case Command::minimize_q: return "minimize-q";
    case Command::fock: return "fock";
    case Command::overlap: return "overlap";
  }
  return "?";
}

std::vector<double> parse_grid(const std::vector<std::string>& specs) {
  std::vector<double> out;
  for (const auto& s : specs) {
    const auto c1 = s.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_number(s));
      continue;
    }
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("range must be a:b:step, got '" + s + "'");
    const double a = parse_number(s.substr(0, c1)), b = parse_number(s.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_number(s.substr(c2 + 1));
    if (!(step > 0.0) || !(b >= a)) throw UsageError("range needs b >= a and step > 0: '" + s + "'");
    const auto count = static_cast<long long>(std::floor((b - a) / step * (1 + 1e-12) + 1e-9));
    if (count > 1000000) throw UsageError("range too long: '" + s + "'");
    for (long long k = 0; k <= count; ++k) out.push_back(snap(a + static_cast<double>(k) * step));
  }
  return out;
}

void validate(RunConfig& cfg) {
  if (cfg.parties != 2 && cfg.parties != 4 && cfg.parties != 6) throw UsageError("--parties must be 2, 4 or 6");
  if (cfg.truncation < 2) throw UsageError("--order must be at least 2");
  if (cfg.xi_grid.empty()) {
    switch (cfg.command) {
      case Command::scan: cfg.xi_grid = default_grid(); break;
      case Command::profile: cfg.xi_grid = {0.1, 0.5, 0.9}; break;
      case Command::fock: cfg.xi_grid = {0.5}; break;
      case Command::overlap: cfg.xi_grid = {0.3, 0.7}; break;
      default: break;
    }
  }
  for (std::size_t i = 0; i < cfg.xi_grid.size(); ++i) {
    const double x = cfg.xi_grid[i];
    if (!(x > 0.0 && x < 1.0)) throw UsageError("xi values must lie in (0, 1)");
    if (i > 0 && !(x > cfg.xi_grid[i - 1])) throw UsageError("xi grid must be strictly increasing");
  }
  for (double r : cfg.r_grid)
    if (!(r >= 0.0) || !std::isfinite(r)) throw UsageError("r values must be finite and >= 0");
}

void write_table(const Table& t, Format f, std::ostream& os) {
  if (f == Format::csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        std::visit(
            [&](const auto& v) {
              using V = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<V, double>) os << format_double(v);
              else if constexpr (std::is_same_v<V, long long>) os << v;
              else if constexpr (std::is_same_v<V, bool>) os << (v ? "true" : "false");
              else if constexpr (std::is_same_v<V, std::string>) {
                if (v.find_first_of(",\"\n") == std::string::npos) os << v;
                else {
                  os << '"';
                  for (char c : v) os << (c == '"' ? "\"\"" : std::string(1, c));
                  os << '"';
                }
              }
            },
            row[i]);
      }
      os << '\n';
    }
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      auto& slot = obj[t.columns[i]];
      if (i >= row.size()) continue;
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              if (std::isfinite(v)) slot = v;
            } else if constexpr (!std::is_same_v<V, std::monostate>) {
              slot = v;
            }
          },
          row[i]);
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

Outcome run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::verify: return run_verify(cfg);
    case Command::scan: return run_scan(cfg);
    case Command::profile: return run_profile(cfg);
    case Command::minimize_q: return run_minimize_q(cfg);
    case Command::fock: return run_fock(cfg);
    case Command::overlap: return run_overlap(cfg);
  }
  throw UsageError("unknown command");
}

int main_entry(int argc, char** argv) {
  CLI::App app{"uncertainty-product toolkit"};
  RunConfig cfg;
  std::string command = "verify", format = "csv";
  std::vector<std::string> xi_specs, r_specs;
  double tol = cfg.tol.rel_tol;
  bool serial = false;
  const std::map<std::string, Command> commands{{"verify", Command::verify},   {"scan", Command::scan},
                                                {"profile", Command::profile}, {"minimize-q", Command::minimize_q},
                                                {"fock", Command::fock},       {"overlap", Command::overlap}};
  app.add_option("--command", command, "verify | scan | profile | minimize-q | fock | overlap")
      ->check(CLI::IsMember({"verify", "scan", "profile", "minimize-q", "fock", "overlap"}));
  app.add_option("--parties", cfg.parties, "2, 4 or 6");
  app.add_option("--xi", xi_specs, "xi value or range a:b:step (repeatable)");
  app.add_option("--r", r_specs, "profile radii, value or range (repeatable)");
  app.add_option("--order", cfg.truncation, "truncation order (Q form, Fock max total)");
  app.add_option("--tol", tol, "relative tolerance for family functionals");
  app.add_option("--out", cfg.output_path, "output file (default stdout or $MUP_OUTPUT_DIR)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--serial", serial, "run kernels on the serial reference path");
  app.add_option("--inject-fault", cfg.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Outcome outcome;
  try {
    cfg.command = commands.at(command);
    cfg.format = format == "json" ? Format::json : Format::csv;
    cfg.execution = serial ? Execution::serial : Execution::parallel;
    if (!(tol > 0.0 && tol < 1.0)) throw UsageError("--tol must lie in (0, 1)");
    cfg.tol = Tolerance::relative(tol);
    cfg.xi_grid = parse_grid(xi_specs);
    cfg.r_grid = parse_grid(r_specs);
    validate(cfg);
    outcome = run(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  std::string path = cfg.output_path;
  if (path.empty())
    if (const char* dir = std::getenv("MUP_OUTPUT_DIR"); dir && *dir)
      path = std::string(dir) + "/" + command_name(cfg.command) + (cfg.format == Format::json ? ".json" : ".csv");
  if (path.empty()) {
    write_table(outcome.table, cfg.format, std::cout);
  } else {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
      std::cerr << "usage error: cannot write " << path << '\n';
      return 2;
    }
    write_table(outcome.table, cfg.format, os);
  }
  for (const auto& n : outcome.notes) std::cerr << n << '\n';
  return outcome.status;
}

}  // namespace mup::cli
