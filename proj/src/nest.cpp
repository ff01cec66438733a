#include "adkit/nest.hpp"

#include <atomic>

namespace adkit::nest {

EpsilonTag fresh_tag() {
  static std::atomic<EpsilonTag> counter{kPlainTag};
  return counter.fetch_add(1, std::memory_order_relaxed) + 1;
}

}  // namespace adkit::nest
