#include "adkit/tape.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <ostream>

namespace adkit::tape {

void Tape::grow() {
  const std::size_t want = std::max<std::size_t>(1024, nodes_.size() * 2);
  nodes_.resize(want);
  kinds_.resize(want);
  node_head_ = nodes_.data() + cnt_;
  node_cap_ = nodes_.data() + want;
  kind_head_ = kinds_.data() + cnt_;
}

void Tape::dump(std::ostream& os) const {
  char line[256];
  for (std::size_t i = 0; i < cnt_; ++i) {
    const Node& nd = nodes_[i];
    const std::int64_t in0 = nd.in0 == kNoInput ? -1 : static_cast<std::int64_t>(nd.in0);
    const std::int64_t in1 = nd.in1 == kNoInput ? -1 : static_cast<std::int64_t>(nd.in1);
    std::snprintf(line, sizeof line,
                  "%zu %s %" PRId64 " %" PRId64 " %.17g %.17g %.17g", i,
                  op_name(kinds_[i]).data(), in0, in1, nd.value, nd.p0, nd.p1);
    os << line << '\n';
  }
}

namespace detail {

void throw_tape_mismatch() {
  throw TapeError("variables belong to different tapes");
}

}  // namespace detail

}  // namespace adkit::tape
