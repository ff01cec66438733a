#ifndef ADKIT_BENCH_HPP
#define ADKIT_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "adkit/functions.hpp"
#include "adkit/opcount.hpp"

namespace adkit::bench {

struct BenchmarkOptions {
  std::vector<std::size_t> n_list{1, 8, 15, 22, 29, 36, 43, 50};
  std::uint64_t seed = 42;
  std::size_t reps = 1000;
  bool no_time = false;  // skip timing; all time-derived columns become 0
};

// One row of the relative-timing study.  Times are seconds per evaluation;
// rel_n1 is time over t_f at the first (smallest) n; rel_col is time over
// t_f at the same n; op_ratio_rev is the machine-independent cost ratio
// (recording + sweep scalar ops over the plain evaluation's op count).
struct BenchmarkRecord {
  std::size_t n = 0;
  double t_f = 0.0;
  double t_num = 0.0;
  double t_fwd = 0.0;
  double t_rev = 0.0;
  double rel_n1_num = 0.0;
  double rel_n1_fwd = 0.0;
  double rel_n1_rev = 0.0;
  double rel_col_num = 0.0;
  double rel_col_fwd = 0.0;
  double rel_col_rev = 0.0;
  double op_ratio_rev = 0.0;
};

// Times helmholtz_eval and its gradient by all three methods at the standard
// point x_i = 1/(2n) for each n; median of reps samples after warmup.
std::vector<BenchmarkRecord> benchmark_helmholtz(const BenchmarkOptions& opts = {});

// Header plus one line per record, 12-significant-digit fields.
void write_benchmark_csv(std::ostream& os, std::span<const BenchmarkRecord> records);

}  // namespace adkit::bench

#endif
