#include "mup/parallel.hpp"

#include <omp.h>

namespace mup {

int hardware_threads() { return omp_get_max_threads(); }

}  // namespace mup
