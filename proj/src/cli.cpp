#include "adkit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <span>
#include <string>

#include "adkit/bench.hpp"
#include "adkit/csv.hpp"
#include "adkit/dual.hpp"
#include "adkit/errors.hpp"
#include "adkit/functions.hpp"
#include "adkit/modes.hpp"
#include "adkit/nest.hpp"
#include "adkit/numdiff.hpp"
#include "adkit/optim.hpp"
#include "adkit/tape.hpp"

namespace adkit::cli {

namespace {

enum class Fn { example, logistic, helmholtz, rosenbrock, quadratic };

Fn fn_from_name(const std::string& name) {
  if (name == "example") return Fn::example;
  if (name == "logistic") return Fn::logistic;
  if (name == "helmholtz") return Fn::helmholtz;
  if (name == "rosenbrock") return Fn::rosenbrock;
  if (name == "quadratic") return Fn::quadratic;
  throw UsageError("unknown function: " + name);
}

std::size_t fn_arity(Fn fn) {
  switch (fn) {
    case Fn::example: return 2;
    case Fn::logistic: return 1;
    case Fn::helmholtz: return 0;  // any n >= 1
    case Fn::rosenbrock: return 2;
    case Fn::quadratic: return 3;
  }
  return 0;
}

GradMode mode_from_name(const std::string& name) {
  if (name == "forward") return GradMode::forward;
  if (name == "reverse") return GradMode::reverse;
  if (name == "numeric") return GradMode::numeric;
  throw UsageError("unknown mode: " + name);
}

struct Builtin {
  Fn kind = Fn::example;
  int logistic_iters = 4;
  bench::HelmholtzSpec spec;
};

Builtin make_builtin(const Command& cmd) {
  Builtin b;
  b.kind = fn_from_name(cmd.fn);
  b.logistic_iters = cmd.logistic_iters;
  if (b.kind == Fn::helmholtz)
    b.spec = bench::helmholtz_make(cmd.at.size(), cmd.seed);
  return b;
}

template <class S>
S eval_builtin(const Builtin& b, std::span<const S> x) {
  switch (b.kind) {
    case Fn::example: return bench::example_f(x[0], x[1]);
    case Fn::logistic: return bench::logistic_l(b.logistic_iters, x[0]);
    case Fn::helmholtz: return bench::helmholtz_eval(b.spec, x);
    case Fn::rosenbrock: return bench::rosenbrock(x);
    case Fn::quadratic: return bench::quadratic(x);
  }
  throw UsageError("unknown function selector");
}

std::vector<double> parse_doubles(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot parse number '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  for (double v : parse_doubles(text, flag)) {
    if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v)))
      throw UsageError(flag + ": entries must be positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void check_arity(Fn fn, const std::vector<double>& at) {
  const std::size_t want = fn_arity(fn);
  if (want == 0) {
    if (at.empty()) throw UsageError("--at: helmholtz needs at least 1 coordinate");
    return;
  }
  if (at.size() != want)
    throw UsageError("--at: function expects " + std::to_string(want) +
                     " coordinates, got " + std::to_string(at.size()));
}

std::string join_numbers(std::span<const double> vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ',';
    s += csv::format_number(vs[i]);
  }
  return s;
}

// --- subcommand handlers -----------------------------------------------------

void do_grad(const Command& cmd, std::ostream& os) {
  const Builtin b = make_builtin(cmd);
  auto f = [&b](auto x) { return eval_builtin(b, x); };
  const std::span<const double> x(cmd.at);

  GradEval g;
  const GradMode mode = mode_from_name(cmd.mode);
  if (mode == GradMode::numeric) {
    const numdiff::FdKind kind = cmd.scheme == "forward" ? numdiff::FdKind::forward
                                                         : numdiff::FdKind::center;
    g.value = f(x);
    g.grad = cmd.h > 0.0
                 ? numdiff::grad_numeric(f, x, numdiff::DiffScheme{kind, cmd.h}).grad
                 : numdiff::grad_numeric(f, x, kind).grad;
  } else {
    g = eval_gradient(f, x, mode);
  }
  os << "y=" << csv::format_number(g.value) << '\n';
  os << "grad=" << join_numbers(g.grad) << '\n';
}

void do_jacobian(const Command& cmd, std::ostream& os) {
  const Builtin b = make_builtin(cmd);
  const std::span<const double> x(cmd.at);
  auto fv = [&b](auto xs) {
    using S = typename decltype(xs)::value_type;
    std::vector<S> out;
    out.push_back(eval_builtin(b, xs));
    return out;
  };

  const GradMode mode = mode_from_name(cmd.mode);
  std::vector<double> value;
  Matrix jac;
  if (mode == GradMode::forward) {
    auto r = dual::jacobian_forward(fv, x);
    value = std::move(r.value);
    jac = std::move(r.jacobian);
  } else if (mode == GradMode::reverse) {
    auto r = tape::jacobian_reverse(fv, x);
    value = std::move(r.value);
    jac = std::move(r.jacobian);
  } else {
    auto f = [&b](auto xs) { return eval_builtin(b, xs); };
    const numdiff::FdKind kind = cmd.scheme == "forward" ? numdiff::FdKind::forward
                                                         : numdiff::FdKind::center;
    value.push_back(f(x));
    auto row = cmd.h > 0.0
                   ? numdiff::grad_numeric(f, x, numdiff::DiffScheme{kind, cmd.h})
                   : numdiff::grad_numeric(f, x, kind);
    jac = Matrix(1, x.size());
    for (std::size_t j = 0; j < x.size(); ++j) jac(0, j) = row.grad[j];
  }
  os << "y=" << join_numbers(value) << '\n';
  for (std::size_t i = 0; i < jac.rows(); ++i) {
    std::vector<double> row(jac.cols());
    for (std::size_t j = 0; j < jac.cols(); ++j) row[j] = jac(i, j);
    os << "jacobian=" << join_numbers(row) << '\n';
  }
}

void do_hvp(const Command& cmd, std::ostream& os) {
  const Builtin b = make_builtin(cmd);
  auto f = [&b](auto x) { return eval_builtin(b, x); };
  const std::span<const double> x(cmd.at);
  const std::vector<double> hv = nest::hvp(f, x, std::span<const double>(cmd.v));
  os << "y=" << csv::format_number(f(x)) << '\n';
  os << "hvp=" << join_numbers(hv) << '\n';
}

void do_errcurve(const Command& cmd, std::ostream& os) {
  const std::vector<double> grid = numdiff::h_grid(cmd.hmin, cmd.hmax, cmd.points);
  const auto rows = numdiff::error_curve(cmd.x0, grid);
  os << "h,e_forward,e_center\n";
  for (const auto& r : rows)
    os << csv::format_number(r.h) << ',' << csv::format_number(r.e_forward)
       << ',' << csv::format_number(r.e_center) << '\n';
}

void do_helmholtz(const Command& cmd, std::ostream& os) {
  bench::BenchmarkOptions opts;
  opts.n_list = cmd.n_list;
  opts.seed = cmd.seed;
  opts.reps = cmd.reps;
  opts.no_time = cmd.no_time;
  const auto records = bench::benchmark_helmholtz(opts);
  bench::write_benchmark_csv(os, records);
}

void write_trajectory_csv(std::ostream& os, const optim::Trajectory& traj) {
  os << "iter,f,grad_norm\n";
  for (std::size_t i = 0; i < traj.size(); ++i)
    os << i << ',' << csv::format_number(traj[i].f) << ','
       << csv::format_number(traj[i].grad_norm) << '\n';
}

void do_demo(const Command& cmd, std::ostream& os) {
  if (cmd.demo == "mlp") {
    const auto result = optim::mlp_train(cmd.demo_seed, cmd.eta, cmd.iters);
    os << "epoch,loss\n";
    for (std::size_t e = 0; e < result.loss.size(); ++e)
      os << e << ',' << csv::format_number(result.loss[e]) << '\n';
    return;
  }

  const Builtin b = make_builtin(cmd);
  auto f = [&b](auto x) { return eval_builtin(b, x); };
  const std::span<const double> w0(cmd.at);
  if (cmd.demo == "gd") {
    optim::GDConfig cfg;
    cfg.eta = cmd.eta;
    cfg.max_iters = cmd.iters;
    cfg.mode = mode_from_name(cmd.mode);
    write_trajectory_csv(os, optim::gradient_descent(f, w0, cfg));
  } else {
    write_trajectory_csv(os, optim::newton(f, w0, cmd.eta, cmd.iters));
  }
}

}  // namespace

Command parse_args(const std::vector<std::string>& args) {
  Command cmd;

  // The default instance seed (42) can come from the environment; an explicit
  // --seed always wins.
  if (const char* env = std::getenv("ADKIT_SEED")) {
    try {
      std::size_t used = 0;
      const std::string text(env);
      cmd.seed = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw UsageError("ADKIT_SEED must be an unsigned integer");
    }
  }

  CLI::App app{"Scalar automatic differentiation kit: dual-number forward mode, "
               "tape-based reverse mode, nested derivatives, finite-difference "
               "baselines, and benchmark/optimizer demos.",
               "adkit"};
  app.require_subcommand(1);

  std::string at_str, v_str, nlist_str;

  const std::string fn_help =
      "Built-in function: example (2-D), logistic (1-D), helmholtz (any n), "
      "rosenbrock (2-D), quadratic (3-D); default example";
  const std::string mode_help = "Derivative mode (default reverse)";
  const std::string seed_help =
      "Helmholtz instance seed (default 42; ADKIT_SEED env overrides the default)";
  const auto fn_values =
      CLI::IsMember({"example", "logistic", "helmholtz", "rosenbrock", "quadratic"});
  const auto mode_values = CLI::IsMember({"forward", "reverse", "numeric"});
  const auto scheme_values = CLI::IsMember({"forward", "center"});

  auto* grad = app.add_subcommand("grad", "Gradient of a built-in function");
  grad->add_option("--fn", cmd.fn, fn_help)->transform(fn_values);
  grad->add_option("--mode", cmd.mode, mode_help)->transform(mode_values);
  grad->add_option("--at", at_str, "Evaluation point, comma-separated")->required();
  grad->add_option("--step", cmd.h,
                   "Numeric-mode step (default: per-coordinate scaled step)");
  grad->add_option("--scheme", cmd.scheme,
                   "Numeric-mode stencil: forward or center (default center)")
      ->transform(scheme_values);
  grad->add_option("--iters", cmd.logistic_iters,
                   "Logistic-map iterations, 1..4 (default 4)");
  grad->add_option("--seed", cmd.seed, seed_help);
  grad->add_option("--out", cmd.out, "Write output to this file instead of stdout");

  auto* jac = app.add_subcommand("jacobian", "Jacobian of a built-in function");
  jac->add_option("--fn", cmd.fn, fn_help)->transform(fn_values);
  jac->add_option("--mode", cmd.mode, mode_help)->transform(mode_values);
  jac->add_option("--at", at_str, "Evaluation point, comma-separated")->required();
  jac->add_option("--step", cmd.h,
                  "Numeric-mode step (default: per-coordinate scaled step)");
  jac->add_option("--scheme", cmd.scheme,
                  "Numeric-mode stencil: forward or center (default center)")
      ->transform(scheme_values);
  jac->add_option("--iters", cmd.logistic_iters,
                  "Logistic-map iterations, 1..4 (default 4)");
  jac->add_option("--seed", cmd.seed, seed_help);
  jac->add_option("--out", cmd.out, "Write output to this file instead of stdout");

  auto* hvp = app.add_subcommand(
      "hvp", "Hessian-vector product (forward-over-reverse) of a built-in function");
  hvp->add_option("--fn", cmd.fn, fn_help)->transform(fn_values);
  hvp->add_option("--at", at_str, "Evaluation point, comma-separated")->required();
  hvp->add_option("--v", v_str, "Direction vector, comma-separated")->required();
  hvp->add_option("--iters", cmd.logistic_iters,
                  "Logistic-map iterations, 1..4 (default 4)");
  hvp->add_option("--seed", cmd.seed, seed_help);
  hvp->add_option("--out", cmd.out, "Write output to this file instead of stdout");

  auto* err = app.add_subcommand(
      "errcurve", "Finite-difference error vs step size (CSV h,e_forward,e_center)");
  err->add_option("--x0", cmd.x0, "Expansion point (default 0.2)");
  err->add_option("--hmin", cmd.hmin, "Smallest step (default 1e-14)");
  err->add_option("--hmax", cmd.hmax, "Largest step (default 1e-1)");
  err->add_option("--points", cmd.points, "Grid size, log-spaced (default 100)");
  err->add_option("--out", cmd.out, "Write CSV to this file instead of stdout");

  auto* helm = app.add_subcommand(
      "helmholtz", "Relative-timing benchmark of the Helmholtz gradient (CSV)");
  helm->add_option("--n-list", nlist_str,
                   "Dimensions, comma-separated (default 1,8,15,22,29,36,43,50)");
  helm->add_option("--seed", cmd.seed, seed_help);
  helm->add_option("--reps", cmd.reps, "Timing repetitions (default 1000)");
  helm->add_flag("--no-time", cmd.no_time,
                 "Skip timing; zero all time-derived columns (golden-test mode)");
  helm->add_option("--out", cmd.out, "Write CSV to this file instead of stdout");

  auto* demo = app.add_subcommand("demo", "Optimizer demos (CSV trajectories)");
  demo->require_subcommand(1);
  auto* gd = demo->add_subcommand(
      "gd", "Gradient descent (defaults: rosenbrock from -1.2,1, eta 1e-3, "
            "100000 iters, reverse mode)");
  gd->add_option("--fn", cmd.fn, fn_help)->transform(fn_values);
  gd->add_option("--at", at_str, "Start point (default -1.2,1)");
  gd->add_option("--mode", cmd.mode, mode_help)->transform(mode_values);
  gd->add_option("--eta", cmd.eta, "Step size (default 1e-3)");
  gd->add_option("--iters", cmd.iters, "Maximum iterations (default 100000)");
  gd->add_option("--seed", cmd.seed, seed_help);
  gd->add_option("--out", cmd.out, "Write CSV to this file instead of stdout");
  auto* newt = demo->add_subcommand(
      "newton", "Newton's method (defaults: rosenbrock from -1.2,1, eta 1, 50 iters)");
  newt->add_option("--fn", cmd.fn, fn_help)->transform(fn_values);
  newt->add_option("--at", at_str, "Start point (default -1.2,1)");
  newt->add_option("--eta", cmd.eta, "Step scale (default 1)");
  newt->add_option("--iters", cmd.iters, "Iterations (default 50)");
  newt->add_option("--seed", cmd.seed, seed_help);
  newt->add_option("--out", cmd.out, "Write CSV to this file instead of stdout");
  auto* mlp = demo->add_subcommand(
      "mlp", "Train the 2-2-1 XOR MLP by reverse-mode AD (defaults: seed 7, "
             "eta 0.5, 5000 epochs)");
  mlp->add_option("--seed", cmd.demo_seed, "Weight-init seed (default 7)");
  mlp->add_option("--eta", cmd.eta, "Learning rate (default 0.5)");
  mlp->add_option("--epochs", cmd.iters, "Training epochs (default 5000)");
  mlp->add_option("--out", cmd.out, "Write CSV to this file instead of stdout");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("adkit");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    throw HelpRequested{};
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    throw HelpRequested{};
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    throw UsageError(e.what());
  }

  if (grad->parsed()) cmd.subcommand = "grad";
  if (jac->parsed()) cmd.subcommand = "jacobian";
  if (hvp->parsed()) cmd.subcommand = "hvp";
  if (err->parsed()) cmd.subcommand = "errcurve";
  if (helm->parsed()) cmd.subcommand = "helmholtz";
  if (demo->parsed()) {
    cmd.subcommand = "demo";
    if (gd->parsed()) {
      cmd.demo = "gd";
      if (gd->count("--fn") == 0) cmd.fn = "rosenbrock";
      if (gd->count("--eta") == 0) cmd.eta = 1e-3;
      if (gd->count("--iters") == 0) cmd.iters = 100000;
      if (gd->count("--at") == 0) at_str = "-1.2,1";
    } else if (newt->parsed()) {
      cmd.demo = "newton";
      if (newt->count("--fn") == 0) cmd.fn = "rosenbrock";
      if (newt->count("--eta") == 0) cmd.eta = 1.0;
      if (newt->count("--iters") == 0) cmd.iters = 50;
      if (newt->count("--at") == 0) at_str = "-1.2,1";
    } else {
      cmd.demo = "mlp";
      if (mlp->count("--eta") == 0) cmd.eta = 0.5;
      if (mlp->count("--epochs") == 0) cmd.iters = 5000;
    }
  }

  if (!at_str.empty()) cmd.at = parse_doubles(at_str, "--at");
  if (!v_str.empty()) cmd.v = parse_doubles(v_str, "--v");
  if (!nlist_str.empty()) cmd.n_list = parse_sizes(nlist_str, "--n-list");

  // Cross-field validation: the Command invariant is that the point arity
  // matches the selected function before dispatch ever runs.
  const bool needs_fn = cmd.subcommand == "grad" || cmd.subcommand == "jacobian" ||
                        cmd.subcommand == "hvp" ||
                        (cmd.subcommand == "demo" && cmd.demo != "mlp");
  if (needs_fn) {
    check_arity(fn_from_name(cmd.fn), cmd.at);
    if (cmd.logistic_iters < 1 || cmd.logistic_iters > 4)
      throw UsageError("--iters: logistic iterations must be in 1..4");
  }
  if (cmd.subcommand == "hvp" && cmd.v.size() != cmd.at.size())
    throw UsageError("--v: direction arity must match --at");
  if (cmd.subcommand == "grad" || cmd.subcommand == "jacobian") {
    if (cmd.h < 0.0 || !std::isfinite(cmd.h))
      throw UsageError("--step: must be finite and >= 0");
  }
  if (cmd.subcommand == "errcurve") {
    if (!(cmd.hmin > 0.0) || !(cmd.hmax > cmd.hmin))
      throw UsageError("errcurve: need 0 < hmin < hmax");
    if (cmd.points < 2) throw UsageError("--points: need at least 2");
  }
  if (cmd.subcommand == "helmholtz") {
    if (cmd.reps < 1) throw UsageError("--reps: must be >= 1");
    if (cmd.n_list.empty()) throw UsageError("--n-list: must be nonempty");
  }
  if (cmd.subcommand == "demo") {
    if (cmd.demo != "mlp" && !(cmd.eta > 0.0))
      throw UsageError("--eta: must be > 0");
    if (cmd.demo == "mlp" && cmd.eta < 0.0)
      throw UsageError("--eta: must be >= 0");
    if (cmd.demo != "mlp" && cmd.iters < 1)
      throw UsageError("--iters: must be >= 1");
  }
  return cmd;
}

int dispatch(const Command& cmd) {
  std::ofstream file;
  std::ostream* osp = &std::cout;
  if (!cmd.out.empty()) {
    file.open(cmd.out, std::ios::binary);  // LF line endings on all platforms
    if (!file) throw Error("cannot open output file: " + cmd.out);
    osp = &file;
  }
  std::ostream& os = *osp;

  if (cmd.subcommand == "grad") {
    do_grad(cmd, os);
  } else if (cmd.subcommand == "jacobian") {
    do_jacobian(cmd, os);
  } else if (cmd.subcommand == "hvp") {
    do_hvp(cmd, os);
  } else if (cmd.subcommand == "errcurve") {
    do_errcurve(cmd, os);
  } else if (cmd.subcommand == "helmholtz") {
    do_helmholtz(cmd, os);
  } else if (cmd.subcommand == "demo") {
    do_demo(cmd, os);
  } else {
    throw UsageError("no subcommand selected");
  }
  os.flush();
  if (!os) throw Error("failed writing output");
  return 0;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  Command cmd;
  try {
    cmd = parse_args(args);
  } catch (const HelpRequested&) {
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    return dispatch(cmd);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace adkit::cli
