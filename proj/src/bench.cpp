#include "adkit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include "adkit/csv.hpp"
#include "adkit/dual.hpp"
#include "adkit/numdiff.hpp"
#include "adkit/tape.hpp"

namespace adkit::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Median time of one invocation of work().  Each sample batches enough
// invocations to outlast timer granularity; a few warmup samples are
// discarded so code and data are hot before measurement.
template <class Work>
double time_median(std::size_t reps, Work&& work) {
  constexpr double kMinSampleSeconds = 2e-6;
  constexpr std::size_t kWarmupSamples = 3;

  work();  // touch everything once before the pilot
  std::size_t batch = 1;
  for (;;) {
    const auto start = Clock::now();
    for (std::size_t i = 0; i < batch; ++i) work();
    const double elapsed = seconds_since(start);
    if (elapsed >= kMinSampleSeconds || batch >= (std::size_t{1} << 20)) break;
    const double target = kMinSampleSeconds * 1.5;
    std::size_t next = elapsed > 0.0
                           ? static_cast<std::size_t>(target / (elapsed / batch))
                           : batch * 4;
    batch = std::max(batch * 2, std::min(next, std::size_t{1} << 20));
  }

  std::vector<double> samples;
  samples.reserve(reps);
  for (std::size_t s = 0; s < reps + kWarmupSamples; ++s) {
    const auto start = Clock::now();
    for (std::size_t i = 0; i < batch; ++i) work();
    const double elapsed = seconds_since(start);
    if (s >= kWarmupSamples)
      samples.push_back(elapsed / static_cast<double>(batch));
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t m = samples.size() / 2;
  return samples.size() % 2 == 1 ? samples[m]
                                 : 0.5 * (samples[m - 1] + samples[m]);
}

}  // namespace

std::vector<BenchmarkRecord> benchmark_helmholtz(const BenchmarkOptions& opts) {
  if (opts.reps < 1)
    throw std::invalid_argument("benchmark_helmholtz: reps must be >= 1");
  if (opts.n_list.empty())
    throw std::invalid_argument("benchmark_helmholtz: n_list must be nonempty");

  std::vector<BenchmarkRecord> records;
  records.reserve(opts.n_list.size());
  double t_f_first = 0.0;

  for (std::size_t n : opts.n_list) {
    const HelmholtzSpec spec = helmholtz_make(n, opts.seed);
    const std::vector<double> x(n, 1.0 / (2.0 * static_cast<double>(n)));
    const std::span<const double> xs(x);

    auto f = [&spec](auto pt) { return helmholtz_eval(spec, pt); };

    BenchmarkRecord rec;
    rec.n = n;

    // Machine-independent cost ratio: scalar ops spent recording the tape
    // and sweeping it once, over the plain evaluation's op count.
    tape::Tape tape;
    (void)tape::grad_reverse(f, xs, tape);
    const OpCounter ops_f = count_ops(f, xs);
    rec.op_ratio_rev =
        static_cast<double>(tape.record_ops() + tape.sweep_ops()) /
        static_cast<double>(ops_f.total());

    if (!opts.no_time) {
      volatile double sink = 0.0;
      rec.t_f = time_median(opts.reps, [&] { sink = f(xs); });
      rec.t_num = time_median(opts.reps, [&] {
        sink = numdiff::grad_numeric(f, xs, numdiff::FdKind::center).grad[0];
      });
      rec.t_fwd = time_median(opts.reps, [&] {
        sink = dual::grad_forward(f, xs).grad[0];
      });
      tape::Gradient g;
      rec.t_rev = time_median(opts.reps, [&] {
        sink = tape::grad_reverse(f, xs, tape, g).grad[0];
      });
      (void)sink;

      if (records.empty()) t_f_first = rec.t_f;
      rec.rel_n1_num = rec.t_num / t_f_first;
      rec.rel_n1_fwd = rec.t_fwd / t_f_first;
      rec.rel_n1_rev = rec.t_rev / t_f_first;
      rec.rel_col_num = rec.t_num / rec.t_f;
      rec.rel_col_fwd = rec.t_fwd / rec.t_f;
      rec.rel_col_rev = rec.t_rev / rec.t_f;
    }
    records.push_back(rec);
  }
  return records;
}

void write_benchmark_csv(std::ostream& os,
                         std::span<const BenchmarkRecord> records) {
  os << "n,t_f,t_num,t_fwd,t_rev,rel_n1_num,rel_n1_fwd,rel_n1_rev,"
        "rel_col_num,rel_col_fwd,rel_col_rev,op_ratio_rev\n";
  for (const BenchmarkRecord& r : records) {
    os << r.n << ',' << csv::format_number(r.t_f) << ','
       << csv::format_number(r.t_num) << ',' << csv::format_number(r.t_fwd)
       << ',' << csv::format_number(r.t_rev) << ','
       << csv::format_number(r.rel_n1_num) << ','
       << csv::format_number(r.rel_n1_fwd) << ','
       << csv::format_number(r.rel_n1_rev) << ','
       << csv::format_number(r.rel_col_num) << ','
       << csv::format_number(r.rel_col_fwd) << ','
       << csv::format_number(r.rel_col_rev) << ','
       << csv::format_number(r.op_ratio_rev) << '\n';
  }
}

}  // namespace adkit::bench
