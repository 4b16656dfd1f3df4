#include "qroof/parallel.hpp"

#include <cstdlib>

#include <omp.h>

namespace qroof {

void configure_threads_from_env() {
  if (const char* env = std::getenv("QROOF_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace qroof
