#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// Exercises the installed binary end to end through a shell, the same way a
// user or a golden-file harness would.

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run_cli(const std::string& args, const std::string& env = "") {
  const char* bin = std::getenv("ADKIT_CLI_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "ADKIT_CLI_BIN must point at the binary");
  static int serial = 0;
  const std::string tag = std::to_string(++serial);
  const std::string out_path = "/tmp/adkit_cli_out." + tag;
  const std::string err_path = "/tmp/adkit_cli_err." + tag;
  std::string cmd = env.empty() ? std::string() : env + " ";
  cmd += '"';
  cmd += bin;
  cmd += "\" " + args + " >" + out_path + " 2>" + err_path;
  const int rc = std::system(cmd.c_str());
  Run r;
  if (rc != -1 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

}  // namespace

TEST_CASE("grad: the worked example is printed to 12 significant digits") {
  const std::string want = "y=11.6520714552\ngrad=5.5,1.71633781454\n";
  for (const char* mode : {"forward", "reverse"}) {
    Run r = run_cli(std::string("grad --fn example --mode ") + mode +
                    " --at 2,5");
    CHECK(r.code == 0);
    CHECK(r.out == want);
    CHECK(r.err.empty());
  }
  // Reverse is the default mode.
  CHECK(run_cli("grad --fn example --at 2,5").out == want);

  Run rn = run_cli("grad --fn example --mode numeric --at 2,5");
  CHECK(rn.code == 0);
  CHECK(rn.out == "y=11.6520714552\ngrad=5.49999999998,1.71633781457\n");
}

TEST_CASE("grad: the other built-ins and their flags") {
  Run rl = run_cli("grad --fn logistic --iters 4 --at 0.2 --mode forward");
  CHECK(rl.code == 0);
  CHECK(rl.out == "y=0.28901376\ngrad=9.0660864\n");

  Run rq = run_cli("grad --fn quadratic --at 1,1,1");
  CHECK(rq.code == 0);
  CHECK(rq.out == "y=0.25\ngrad=4.5,2.25,-0.25\n");

  // The numeric path honors an explicit step and scheme.
  Run rs = run_cli(
      "grad --fn example --mode numeric --at 2,5 --step 1e-7 --scheme center");
  CHECK(rs.code == 0);
  CHECK(rs.out.substr(0, 2) == "y=");
}

TEST_CASE("grad: the seed reaches the helmholtz instance, env or flag") {
  Run s42 = run_cli("grad --fn helmholtz --at 0.1,0.1 --seed 42");
  Run s99 = run_cli("grad --fn helmholtz --at 0.1,0.1 --seed 99");
  CHECK(s42.code == 0);
  CHECK(s42.out != s99.out);

  Run env99 = run_cli("grad --fn helmholtz --at 0.1,0.1", "ADKIT_SEED=99");
  CHECK(env99.out == s99.out);

  // An explicit flag outranks the environment.
  Run both = run_cli("grad --fn helmholtz --at 0.1,0.1 --seed 42",
                     "ADKIT_SEED=99");
  CHECK(both.out == s42.out);

  Run badenv = run_cli("helmholtz --no-time --n-list 1", "ADKIT_SEED=abc");
  CHECK(badenv.code == 2);
  CHECK(badenv.err.find("usage error") != std::string::npos);
}

TEST_CASE("jacobian and hvp print rows the same way") {
  const std::string wantj = "y=11.6520714552\njacobian=5.5,1.71633781454\n";
  CHECK(run_cli("jacobian --fn example --mode forward --at 2,5").out == wantj);
  CHECK(run_cli("jacobian --fn example --mode reverse --at 2,5").out == wantj);

  Run rh = run_cli("hvp --fn rosenbrock --at -1.2,1 --v 1,0");
  CHECK(rh.code == 0);
  CHECK(rh.out == "y=24.2\nhvp=1330,480\n");

  Run re = run_cli("hvp --fn example --at 2,5 --v 1,0");
  CHECK(re.out == "y=11.6520714552\nhvp=-0.25,1\n");
}

TEST_CASE("errcurve: header, row count, and determinism") {
  const std::string args =
      "errcurve --x0 0.2 --hmin 1e-3 --hmax 1e-1 --points 5";
  Run r1 = run_cli(args);
  Run r2 = run_cli(args);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  std::istringstream is(r1.out);
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "h,e_forward,e_center");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("helmholtz: --no-time output is byte-identical and frozen") {
  const std::string args = "helmholtz --no-time --n-list 1,2 --seed 42";
  Run r1 = run_cli(args);
  Run r2 = run_cli(args);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(r1.out ==
        "n,t_f,t_num,t_fwd,t_rev,rel_n1_num,rel_n1_fwd,rel_n1_rev,"
        "rel_col_num,rel_col_fwd,rel_col_rev,op_ratio_rev\n"
        "1,0,0,0,0,0,0,0,0,0,0,4.38888888889\n"
        "2,0,0,0,0,0,0,0,0,0,0,4.48484848485\n");

  Run rf = run_cli("helmholtz --no-time --n-list 1,2 --out /tmp/adkit_ht.csv");
  CHECK(rf.code == 0);
  CHECK(rf.out.empty());
  CHECK(slurp("/tmp/adkit_ht.csv") == r1.out);
  std::remove("/tmp/adkit_ht.csv");
}

TEST_CASE("demo: trajectory and loss-curve CSV") {
  Run gd = run_cli("demo gd --fn quadratic --at 0,0,0 --eta 0.1 --iters 3");
  CHECK(gd.code == 0);
  std::istringstream is(gd.out);
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "iter,f,grad_norm");
  REQUIRE(std::getline(is, line));
  CHECK(line == "0,0,3");  // f(0) = 0, max-norm of -b is 3
  std::size_t rows = 1;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 4);

  Run nt = run_cli("demo newton --fn quadratic --at 0,0,0 --iters 1");
  std::istringstream ns(nt.out);
  std::getline(ns, line);
  CHECK(line == "iter,f,grad_norm");
  std::getline(ns, line);
  std::getline(ns, line);  // one Newton step lands on the minimizer
  const auto last_comma = line.rfind(',');
  CHECK(std::stod(line.substr(last_comma + 1)) <= 1e-10);

  Run mlp = run_cli("demo mlp --seed 7 --eta 0.5 --epochs 2");
  std::istringstream ms(mlp.out);
  std::getline(ms, line);
  CHECK(line == "epoch,loss");
  std::getline(ms, line);
  CHECK(line == "0,0.593122601638");
  std::size_t mrows = 1;
  while (std::getline(ms, line)) ++mrows;
  CHECK(mrows == 3);
}

TEST_CASE("usage errors exit 2 and explain themselves on stderr") {
  for (const std::string& args : {
           std::string("grad --fn example"),            // missing --at
           std::string("grad --fn example --at 2"),     // arity
           std::string("grad --fn example --at 2,5 --mode sideways"),
           std::string("grad --bogus"),                 // unknown flag
           std::string("frobnicate"),                   // unknown subcommand
           std::string(""),                             // no subcommand
           std::string("grad --fn logistic --iters 7 --at 0.5"),
           std::string("hvp --fn example --at 2,5 --v 1"),
           std::string("errcurve --x0 0.2 --hmin 1 --hmax 0.5"),
           std::string("helmholtz --reps 0"),
           std::string("demo gd --fn quadratic --at 0,0,0 --eta 0"),
       }) {
    Run r = run_cli(args);
    CHECK_MESSAGE(r.code == 2, "args: " << args);
    CHECK_MESSAGE(r.err.find("usage error") != std::string::npos,
                  "args: " << args);
  }
}

TEST_CASE("domain errors exit 1 with the offending operation named") {
  Run r = run_cli("grad --fn example --at -1,5");
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("error: ln") != std::string::npos);
}

TEST_CASE("--help succeeds at both levels") {
  CHECK(run_cli("--help").code == 0);
  for (const char* sub :
       {"grad", "jacobian", "hvp", "errcurve", "helmholtz", "demo"}) {
    Run r = run_cli(std::string(sub) + " --help");
    CHECK(r.code == 0);
    CHECK(!r.out.empty());
  }
}
