#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mup/common.hpp"
#include "mup/parallel.hpp"

namespace mup::cli {

enum class Command { verify, scan, profile, minimize_q, fock, overlap };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::verify;
  int parties = 2;
  std::vector<double> xi_grid;  // empty: command default
  std::vector<double> r_grid;   // profile only; empty: default
  int truncation = 200;
  Tolerance tol{0.0, 1e-9};
  std::string output_path;  // empty: stdout (or $MUP_OUTPUT_DIR/<command>.<fmt>)
  Format format = Format::csv;
  std::string inject_fault;
  Execution execution = Execution::parallel;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "0.5", or "a:b:step" (inclusive of b up to rounding)
std::vector<double> parse_grid(const std::vector<std::string>& specs);
void validate(RunConfig& cfg);  // throws UsageError
std::string command_name(Command c);

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};
void write_table(const Table& t, Format f, std::ostream& os);
std::string format_double(double v);  // 17 significant digits

struct Check {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "abs<=tol", "<", ">", "exact"
  bool passed = false;
};
std::vector<Check> verify_suite(const std::string& inject_fault = "", Execution exec = Execution::parallel);

struct Outcome {
  Table table;
  int status = 0;  // 0 pass, 1 check failure
  std::vector<std::string> notes;
};
Outcome run(const RunConfig& cfg);

// Full front end: parse argv, run, write output. Returns the exit code.
int main_entry(int argc, char** argv);

}  // namespace mup::cli
