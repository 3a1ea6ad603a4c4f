#include "freqband/parallel.hpp"

#include <algorithm>

namespace freqband {

unsigned effective_threads(unsigned hint) {
  if (hint != 0) return hint;
  const unsigned hw = std::thread::hardware_concurrency();
  return std::max(1u, hw);
}

}  // namespace freqband
