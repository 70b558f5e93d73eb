#ifndef GENPR_PARALLEL_HPP
#define GENPR_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace genpr {

namespace detail {
inline std::atomic<std::size_t>& worker_override() {
    static std::atomic<std::size_t> value{0};
    return value;
}
} // namespace detail

/**
 * Number of worker threads used by data-parallel loops. Resolution order:
 * a programmatic override (set_worker_count), then the GENPR_THREADS
 * environment variable, then std::thread::hardware_concurrency(). Zero at
 * either of the first two levels means "auto".
 */
inline std::size_t worker_count() {
    if (auto w = detail::worker_override().load(); w > 0) {
        return w;
    }
    if (const char* env = std::getenv("GENPR_THREADS"); env != nullptr && *env != '\0') {
        try {
            if (const auto w = std::stoul(env); w > 0) {
                return w;
            }
        } catch (const std::exception&) {
            // unparsable values fall back to auto
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

inline void set_worker_count(std::size_t workers) { detail::worker_override().store(workers); }

/// Sets the worker override for the lifetime of the object.
class ScopedWorkerCount {
public:
    explicit ScopedWorkerCount(std::size_t workers) : saved_(detail::worker_override().load()) {
        set_worker_count(workers);
    }
    ~ScopedWorkerCount() { set_worker_count(saved_); }
    ScopedWorkerCount(const ScopedWorkerCount&) = delete;
    ScopedWorkerCount& operator=(const ScopedWorkerCount&) = delete;

private:
    std::size_t saved_;
};

/**
 * Calls fn(begin, end) over consecutive chunks of [0, total) of at most
 * `chunk` items, distributing chunks dynamically over worker threads.
 * Callers must write only to per-index outputs so the result does not depend
 * on scheduling. The first exception thrown by any chunk is rethrown.
 */
template <class Fn>
void parallel_for_chunks(std::size_t total, std::size_t chunk, Fn&& fn) {
    if (total == 0) {
        return;
    }
    chunk = std::max<std::size_t>(chunk, 1);
    const std::size_t n_chunks = (total + chunk - 1) / chunk;
    const std::size_t workers = std::min(worker_count(), n_chunks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < total; b += chunk) {
            fn(b, std::min(total, b + chunk));
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) {
                return;
            }
            try {
                const std::size_t b = c * chunk;
                fn(b, std::min(total, b + chunk));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(n_chunks);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace genpr

#endif
