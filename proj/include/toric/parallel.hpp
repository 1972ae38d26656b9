#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toric {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Sets the OpenMP team size for the lifetime of the guard.
class ThreadCountGuard {
public:
    explicit ThreadCountGuard(int threads) : saved_(max_threads()) {
#ifdef _OPENMP
        omp_set_num_threads(threads > 0 ? threads : 1);
#else
        (void)threads;
#endif
    }
    ~ThreadCountGuard() {
#ifdef _OPENMP
        omp_set_num_threads(saved_);
#endif
    }
    ThreadCountGuard(const ThreadCountGuard&) = delete;
    ThreadCountGuard& operator=(const ThreadCountGuard&) = delete;

private:
    int saved_;
};

/// body(i) for i in [0, count), dynamically scheduled. The first exception
/// thrown by any iteration is rethrown on the calling thread.
template <typename F>
void parallel_for(std::size_t count, F&& body) {
    std::exception_ptr error;
    std::mutex error_mutex;
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace toric
