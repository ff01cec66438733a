// Acceptance gate: one line per criterion, exit code = number of failures.
// Tolerances and runtime budgets are pinned here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "adkit/bench.hpp"
#include "adkit/dual.hpp"
#include "adkit/functions.hpp"
#include "adkit/nest.hpp"
#include "adkit/numdiff.hpp"
#include "adkit/optim.hpp"
#include "adkit/rng.hpp"
#include "adkit/tape.hpp"

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", idx,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool close_rel(double a, double b, double tol) {
  return std::fabs(a - b) <=
         tol * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// --- criterion 1: worked-trace reproduction ---------------------------------

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();

  using D = adkit::dual::Dual<double>;
  D yf = adkit::bench::example_f(D{2.0, 1.0}, D{5.0, 0.0});

  adkit::tape::Tape tape;
  adkit::tape::Var x1 = tape.variable(2.0);
  adkit::tape::Var x2 = tape.variable(5.0);
  adkit::tape::Var yr = adkit::bench::example_f(x1, x2);
  std::vector<double> bar = tape.reverse_sweep(yr);

  const double dt = seconds_since(t0);
  const bool pass = std::fabs(yf.primal - 11.652) < 5e-4 &&
                    std::fabs(yf.tangent - 5.5) < 5e-4 &&
                    tape.sweep_count() == 1 &&
                    std::fabs(bar[0] - 5.5) < 5e-4 &&
                    std::fabs(bar[1] - 1.716) < 5e-4 && dt < 1e-3;
  report(1, pass,
         "worked trace: forward dy/dx1=" + fmt("%.6f", yf.tangent) +
             ", reverse (" + fmt("%.6f", bar[0]) + ", " + fmt("%.6f", bar[1]) +
             ") in one sweep, " + fmt("%.3f", dt * 1e3) + " ms (budget 1 ms)");
}

// --- criterion 2: expression-swell oracle ------------------------------------

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  using D = adkit::dual::Dual<double>;
  bool ok = true;
  double worst = 0.0;
  for (int n = 1; n <= 4 && ok; ++n) {
    for (int j = 0; j < 1000; ++j) {
      const double x = static_cast<double>(j) / 999.0;
      const double ad = adkit::bench::logistic_l(n, D{x, 1.0}).tangent;
      const double closed = adkit::bench::logistic_dl_closed(n, x);
      const double rel =
          std::fabs(ad - closed) / std::max(1.0, std::fabs(closed));
      worst = std::max(worst, rel);
      if (rel > 1e-9) {
        ok = false;
        break;
      }
    }
  }
  const double dt = seconds_since(t0);
  report(2, ok && dt < 1.0,
         "logistic derivative vs optimized polynomials, n=1..4 x 1000 points, "
         "worst rel " +
             fmt("%.2e", worst) + " (tol 1e-9), " + fmt("%.3f", dt) +
             " s (budget 1 s)");
}

// --- criterion 3: error-regime properties ------------------------------------

void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows =
      adkit::numdiff::error_curve(0.2, adkit::numdiff::default_h_grid());

  std::vector<double> hs, efs, ecs;
  for (const auto& r : rows)
    if (r.h >= 1e-3 && r.h <= 1e-1 && r.e_forward > 0.0 && r.e_center > 0.0) {
      hs.push_back(std::log10(r.h));
      efs.push_back(std::log10(r.e_forward));
      ecs.push_back(std::log10(r.e_center));
    }
  auto slope = [&hs](const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
      sx += hs[i];
      sy += ys[i];
      sxx += hs[i] * hs[i];
      sxy += hs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  const double sf = slope(efs);
  const double sc = slope(ecs);

  std::size_t at12 = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (std::fabs(std::log10(rows[i].h) + 12.0) <
        std::fabs(std::log10(rows[at12].h) + 12.0))
      at12 = i;
  const bool upturn = rows.front().e_forward > rows[at12].e_forward &&
                      rows.front().e_center > rows[at12].e_center;

  double min_f = rows[0].e_forward, min_c = rows[0].e_center;
  for (const auto& r : rows) {
    min_f = std::min(min_f, r.e_forward);
    min_c = std::min(min_c, r.e_center);
  }

  const double dt = seconds_since(t0);
  const bool pass = sf > 0.8 && sf < 1.2 && sc > 1.8 && sc < 2.2 && upturn &&
                    min_c <= min_f && dt < 1.0;
  report(3, pass,
         "error regimes at x0=0.2: slope E_f " + fmt("%.3f", sf) +
             " (in [0.8,1.2]), slope E_c " + fmt("%.3f", sc) +
             " (in [1.8,2.2]), round-off upturn " +
             (upturn ? "present" : "ABSENT") + ", min E_c <= min E_f " +
             (min_c <= min_f ? "holds" : "VIOLATED"));
}

// --- criterion 4: relative-timing trends --------------------------------------

void criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  adkit::bench::BenchmarkOptions opts;  // n in {1,...,50}, reps=1000
  const auto recs = adkit::bench::benchmark_helmholtz(opts);
  const double dt = seconds_since(t0);

  bool num_increasing = true;
  for (std::size_t i = 1; i < recs.size(); ++i)
    if (!(recs[i].rel_col_num > recs[i - 1].rel_col_num))
      num_increasing = false;

  bool rev_bounded = true, rev_band = true;
  double rev_max = 0.0;
  for (const auto& r : recs) {
    rev_max = std::max(rev_max, r.rel_col_rev);
    if (!(r.rel_col_rev <= 6.0)) rev_bounded = false;
    if (r.n >= 15 && !(r.rel_col_rev >= 1.5 && r.rel_col_rev <= 6.0))
      rev_band = false;
  }

  double op_lo = recs[0].op_ratio_rev, op_hi = recs[0].op_ratio_rev;
  for (const auto& r : recs) {
    op_lo = std::min(op_lo, r.op_ratio_rev);
    op_hi = std::max(op_hi, r.op_ratio_rev);
  }
  const double op_mid = 0.5 * (op_lo + op_hi);
  const bool op_flat = (op_hi - op_mid) <= 0.3 * op_mid;

  const bool pass = num_increasing && rev_bounded && rev_band && op_flat &&
                    dt < 120.0;
  report(4, pass,
         std::string("timing trends: rel_col_num ") +
             (num_increasing ? "strictly increasing" : "NOT increasing") +
             ", rel_col_rev max " + fmt("%.2f", rev_max) +
             (rev_bounded ? " within" : " EXCEEDS") +
             " bound 6, op_ratio_rev in [" + fmt("%.2f", op_lo) + ", " +
             fmt("%.2f", op_hi) + "] (flat +-30%), " + fmt("%.1f", dt) +
             " s (budget 120 s)");
}

// --- criterion 5: mode-agreement suite ----------------------------------------

void criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  adkit::SplitMix64 rng(20260814);
  bool ok = true;
  double worst = 0.0;
  std::string culprit = "none";

  auto check_fn = [&](const std::string& name, auto&& f, auto&& sample) {
    for (int k = 0; k < 100 && ok; ++k) {
      const std::vector<double> x = sample();
      auto gf = adkit::dual::grad_forward(f, std::span<const double>(x));
      auto gr = adkit::tape::grad_reverse(f, std::span<const double>(x));
      auto gn = adkit::numdiff::grad_numeric(f, std::span<const double>(x),
                                             adkit::numdiff::FdKind::center);
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double scale = std::max(
            1.0, std::max(std::fabs(gf.grad[i]), std::fabs(gr.grad[i])));
        const double d1 = std::fabs(gf.grad[i] - gr.grad[i]) / scale;
        const double d2 = std::fabs(gf.grad[i] - gn.grad[i]) / scale;
        const double d = std::max(d1, d2);
        if (d > worst) {
          worst = d;
          culprit = name;
        }
        if (d > 1e-6) ok = false;
      }
    }
  };

  check_fn("example_f",
           [](auto xs) { return adkit::bench::example_f(xs[0], xs[1]); },
           [&rng] {
             return std::vector<double>{rng.uniform(0.5, 3.0),
                                        rng.uniform(-3.0, 3.0)};
           });
  check_fn("logistic_l(4)",
           [](auto xs) { return adkit::bench::logistic_l(4, xs[0]); },
           [&rng] { return std::vector<double>{rng.uniform(0.01, 0.99)}; });
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{5},
                        std::size_t{10}}) {
    const auto spec = adkit::bench::helmholtz_make(n, 42);
    check_fn("helmholtz n=" + std::to_string(n),
             [&spec](auto xs) {
               return adkit::bench::helmholtz_eval(spec, xs);
             },
             [&rng, n] {
               std::vector<double> x(n);
               const double mid = 1.0 / (2.0 * static_cast<double>(n));
               for (double& xi : x) xi = mid * rng.uniform(0.5, 1.5);
               return x;
             });
  }
  check_fn("rosenbrock",
           [](auto xs) { return adkit::bench::rosenbrock(xs); },
           [&rng] {
             return std::vector<double>{rng.uniform(-2.0, 2.0),
                                        rng.uniform(-2.0, 2.0)};
           });
  check_fn("quadratic",
           [](auto xs) { return adkit::bench::quadratic(xs); },
           [&rng] {
             return std::vector<double>{rng.uniform(-3.0, 3.0),
                                        rng.uniform(-3.0, 3.0),
                                        rng.uniform(-3.0, 3.0)};
           });

  const double dt = seconds_since(t0);
  report(5, ok && dt < 10.0,
         "forward/reverse/center gradients on 7 functions x 100 points, worst "
         "rel " +
             fmt("%.2e", worst) + " at " + culprit + " (tol 1e-6), " +
             fmt("%.2f", dt) + " s (budget 10 s)");
}

// --- criterion 6: HVP correctness ----------------------------------------------

void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  adkit::SplitMix64 rng(6);
  bool ok = true;
  double worst_fd = 0.0, worst_mat = 0.0, worst_sym = 0.0;

  auto check_fn = [&](auto&& f, const std::vector<double>& x) {
    const std::size_t n = x.size();
    adkit::Matrix h = adkit::nest::hessian(f, std::span<const double>(x));

    double hmax = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        hmax = std::max(hmax, std::fabs(h(i, j)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double asym =
            std::fabs(h(i, j) - h(j, i)) / std::max(1.0, hmax);
        worst_sym = std::max(worst_sym, asym);
        if (asym > 1e-8) ok = false;
      }

    for (int rep = 0; rep < 3; ++rep) {
      std::vector<double> v(n);
      for (double& vi : v) vi = rng.uniform(-1.0, 1.0);
      const auto hv = adkit::nest::hvp(f, std::span<const double>(x),
                                       std::span<const double>(v));

      // Independent oracle: central difference of the forward-mode gradient.
      const double step = 1e-5;
      std::vector<double> xp(x), xm(x);
      for (std::size_t i = 0; i < n; ++i) {
        xp[i] += step * v[i];
        xm[i] -= step * v[i];
      }
      const auto gp =
          adkit::dual::grad_forward(f, std::span<const double>(xp)).grad;
      const auto gm =
          adkit::dual::grad_forward(f, std::span<const double>(xm)).grad;

      for (std::size_t i = 0; i < n; ++i) {
        double want_mat = 0.0;
        for (std::size_t j = 0; j < n; ++j) want_mat += h(i, j) * v[j];
        const double fd = (gp[i] - gm[i]) / (2.0 * step);
        const double dmat = std::fabs(hv[i] - want_mat) /
                            std::max(1.0, std::fabs(want_mat));
        const double dfd =
            std::fabs(hv[i] - fd) / std::max(1.0, std::fabs(fd));
        worst_mat = std::max(worst_mat, dmat);
        worst_fd = std::max(worst_fd, dfd);
        if (dmat > 1e-10 || dfd > 1e-4) ok = false;
      }
    }
  };

  check_fn([](auto xs) { return adkit::bench::example_f(xs[0], xs[1]); },
           {2.0, 5.0});
  check_fn([](auto xs) { return adkit::bench::logistic_l(4, xs[0]); }, {0.3});
  check_fn([](auto xs) { return adkit::bench::rosenbrock(xs); }, {-1.2, 1.0});
  check_fn([](auto xs) { return adkit::bench::quadratic(xs); },
           {0.3, -0.2, 0.7});
  for (std::size_t n : {std::size_t{2}, std::size_t{5}, std::size_t{10}}) {
    const auto spec = adkit::bench::helmholtz_make(n, 42);
    check_fn(
        [&spec](auto xs) { return adkit::bench::helmholtz_eval(spec, xs); },
        std::vector<double>(n, 1.0 / (2.0 * static_cast<double>(n))));
  }

  const double dt = seconds_since(t0);
  report(6, ok && dt < 5.0,
         "hvp vs differences " + fmt("%.2e", worst_fd) +
             " (tol 1e-4), vs assembled Hessian " + fmt("%.2e", worst_mat) +
             " (tol 1e-10), asymmetry " + fmt("%.2e", worst_sym) +
             " (tol 1e-8), " + fmt("%.2f", dt) + " s (budget 5 s)");
}

// --- criterion 7: perturbation-confusion regression ------------------------------

void criterion7() {
  using adkit::nest::Scalar;
  Scalar r = adkit::nest::derivative(
      [](const Scalar& x) {
        Scalar inner = adkit::nest::derivative(
            [&x](const Scalar& y) { return x + y; }, Scalar(1.0));
        return x * inner;
      },
      Scalar(1.0));
  const double got = r.as_plain();
  report(7, got == 1.0,
         "nested d/dx[x * d/dy(x+y)] at 1 returned " + fmt("%.17g", got) +
             " (must be exactly 1; a confused implementation returns 2)");
}

// --- criterion 8: optimizer demos -------------------------------------------------

void criterion8() {
  auto fq = [](auto w) { return adkit::bench::quadratic(w); };
  const auto traj =
      adkit::optim::newton(fq, std::vector<double>{0.0, 0.0, 0.0}, 1.0, 1);
  const bool newton_ok = traj.back().grad_norm <= 1e-10;

  const auto mlp = adkit::optim::mlp_train(7, 0.5, 5000);
  const bool mlp_ok = mlp.loss.back() < 0.05;

  auto fl = [](auto ws) { return adkit::optim::mlp_loss(ws); };
  const auto w0 = adkit::optim::mlp_init(7);
  const auto gr =
      adkit::tape::grad_reverse(fl, std::span<const double>(w0)).grad;
  const auto gn =
      adkit::numdiff::grad_numeric(
          fl, std::span<const double>(w0),
          adkit::numdiff::DiffScheme{adkit::numdiff::FdKind::center, 1e-6})
          .grad;
  bool grad_ok = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < gr.size(); ++i) {
    const double d = std::fabs(gr[i] - gn[i]) /
                     std::max(1.0, std::max(std::fabs(gr[i]), std::fabs(gn[i])));
    worst = std::max(worst, d);
    if (d > 1e-5) grad_ok = false;
  }

  report(8, newton_ok && mlp_ok && grad_ok,
         "newton one-step grad norm " + fmt("%.2e", traj.back().grad_norm) +
             " (tol 1e-10), XOR loss after 5000 epochs at seed 7 " +
             fmt("%.4f", mlp.loss.back()) +
             " (bound 0.05), mlp gradient check worst rel " +
             fmt("%.2e", worst) + " (tol 1e-5)");
}

// --- criterion 9: CSV determinism ---------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion9() {
  const char* bin = std::getenv("ADKIT_CLI_BIN");
  if (!bin) {
    report(9, false, "ADKIT_CLI_BIN not set; cannot drive the binary");
    return;
  }
  const std::string base = std::string("\"") + bin +
                           "\" helmholtz --no-time --seed 42 --out ";
  const std::string p1 = "/tmp/adkit_acc_1.csv";
  const std::string p2 = "/tmp/adkit_acc_2.csv";
  const bool ran = std::system((base + p1).c_str()) == 0 &&
                   std::system((base + p2).c_str()) == 0;
  const std::string a = slurp(p1);
  const std::string b = slurp(p2);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
  const bool pass = ran && !a.empty() && a == b;
  report(9, pass,
         std::string("repeated `helmholtz --no-time --seed 42` runs ") +
             (pass ? "produced byte-identical CSV"
                   : "DIFFERED or failed to run") +
             " (" + std::to_string(a.size()) + " bytes)");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  try {
    criterion4();
  } catch (const std::exception& e) {
    report(4, false, std::string("exception: ") + e.what());
  }
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures > 0)
    std::printf("%d of 9 criteria failed\n", g_failures);
  else
    std::printf("all 9 criteria passed\n");
  return g_failures;
}
