#include "kerramp/execution.hpp"

#include "kerramp/error.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kerramp {

int configure_threads(std::optional<int> requested) {
    int n = 0;
    if (requested) {
        n = *requested;
    } else if (const char* env = std::getenv("KERRAMP_THREADS"); env != nullptr && *env != '\0') {
        try {
            n = std::stoi(env);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ValidationError,
                        std::string("KERRAMP_THREADS is not an integer: ") + env);
        }
    }
    if (n < 0) {
        throw Error(ErrorKind::ValidationError, "thread count must be >= 0");
    }
#ifdef _OPENMP
    if (n == 0) {
        n = omp_get_num_procs();
    }
    omp_set_num_threads(n);
    return n;
#else
    return 1;
#endif
}

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace kerramp
