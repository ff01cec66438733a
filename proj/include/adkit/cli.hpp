#ifndef ADKIT_CLI_HPP
#define ADKIT_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace adkit::cli {

// Thrown by parse_args after help text has already been printed.
struct HelpRequested {};

// Fully parsed and validated invocation.  Fields not used by the selected
// subcommand keep their defaults.
struct Command {
  std::string subcommand;  // grad | jacobian | hvp | errcurve | helmholtz | demo
  std::string demo;        // gd | newton | mlp (when subcommand == demo)

  std::string fn = "example";  // example | logistic | helmholtz | rosenbrock | quadratic
  std::string mode = "reverse";  // forward | reverse | numeric
  std::vector<double> at;
  std::vector<double> v;  // hvp direction

  double h = 0.0;                // numeric step; 0 means per-coordinate default
  std::string scheme = "center";  // forward | center
  int logistic_iters = 4;

  std::vector<std::size_t> n_list{1, 8, 15, 22, 29, 36, 43, 50};
  std::uint64_t seed = 42;
  std::size_t reps = 1000;
  bool no_time = false;

  double x0 = 0.2;
  double hmin = 1e-14;
  double hmax = 1e-1;
  std::size_t points = 100;

  double eta = 0.0;          // 0 means the demo's documented default
  std::size_t iters = 0;     // 0 means the demo's documented default
  std::uint64_t demo_seed = 7;

  std::string out;  // empty = stdout
};

// Parses the argument list (without argv[0]).  Throws UsageError on unknown
// flags, arity mismatches, or unparsable numbers; help requests throw
// HelpRequested after printing.
Command parse_args(const std::vector<std::string>& args);

// Executes a parsed command; returns the process exit status.
int dispatch(const Command& cmd);

// parse + dispatch with the documented exit-code mapping:
// 0 success, 1 evaluation/domain error, 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace adkit::cli

#endif
