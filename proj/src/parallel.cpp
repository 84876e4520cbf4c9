#include "melnikov/parallel.hpp"

#include <cstdlib>
#include <string>

namespace melnikov {

namespace {
ExecMode g_mode = ExecMode::OpenMP;
}

int thread_limit() {
    static const int limit = [] {
        const char* env = std::getenv("MELNIKOV_THREADS");
        if (!env) return 0;
        try {
            int v = std::stoi(env);
            return v > 0 ? v : 0;
        } catch (...) {
            return 0;
        }
    }();
    return limit;
}

ExecMode default_exec_mode() { return g_mode; }
void set_default_exec_mode(ExecMode m) { g_mode = m; }

}  // namespace melnikov
