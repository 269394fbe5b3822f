#include "netlocal/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace netlocal {

int configure_threads_from_env() {
  if (const char* v = std::getenv("NETLOCAL_THREADS")) {
    char* end = nullptr;
    const long t = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && t > 0) omp_set_num_threads(static_cast<int>(t));
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace netlocal
