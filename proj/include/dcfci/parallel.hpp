#pragma once

#include <exception>
#include <vector>

namespace dcfci {

enum class Execution { Serial, Parallel };

// Runs fn(i) for i in [0, n). Under Parallel the iterations are spread over
// OpenMP threads; an exception from any iteration is rethrown after the
// loop, lowest index first, so failures do not depend on scheduling.
template <class Fn>
void parallel_for(int n, Execution ex, Fn&& fn) {
    if (ex == Execution::Serial || n < 2) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace dcfci
