#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zonoid
{

namespace detail
{
inline std::atomic<unsigned>& worker_count_storage()
{
    static std::atomic<unsigned> count{0};
    return count;
}
}  // namespace detail

/// Number of workers used by parallel_for; 0 means hardware concurrency.
inline void set_worker_count(unsigned n) { detail::worker_count_storage() = n; }

inline unsigned worker_count()
{
    unsigned n = detail::worker_count_storage();
    if (n == 0)
        n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

/*!
 * Run body(i) for i in [0, n). Work items must write to disjoint outputs and
 * draw randomness only from streams keyed by i; the result is then
 * independent of the worker count.
 */
template<class Body>
void parallel_for(std::size_t n, Body&& body)
{
    unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;)
        {
            std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(run);
    run();
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace zonoid
