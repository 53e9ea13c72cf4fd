#include "goss/parallel.hpp"

#include <cstdlib>
#include <string>

namespace goss {

unsigned thread_count() {
    const char* env = std::getenv("GOSS_THREADS");
    if (!env || !*env) return 1;
    try {
        const long n = std::stol(env);
        return static_cast<unsigned>(std::clamp(n, 1L, 64L));
    } catch (...) {
        return 1;
    }
}

}  // namespace goss
