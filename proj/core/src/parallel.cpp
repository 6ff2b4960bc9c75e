#include "pvzeta/parallel.hpp"

namespace pvzeta {

int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace pvzeta
