#include "gspline/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace gspline {

int configure_threads(int requested) {
  if (const char* env = std::getenv("GSPLINE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) requested = n;
    } catch (const std::exception&) {
    }
  }
  if (requested <= 0) requested = omp_get_num_procs();
  omp_set_num_threads(requested);
  return requested;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace gspline
