/// engage/parallel.hpp

#ifndef ENGAGE_PARALLEL_HPP_
#define ENGAGE_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace engage
{
    /// Calls fn(i) for i in [0, n) on up to `jobs` threads. Work items must
    /// write only to their own slot; results are therefore independent of
    /// the thread count. The first exception thrown is rethrown.
    template<typename Fn>
    void parallel_for(std::size_t n, unsigned jobs, Fn &&fn)
    {
        jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
        if(jobs == 1)
        {
            for(std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for(unsigned w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for(std::size_t i = next++; i < n; i = next++)
                {
                    try
                    {
                        fn(i);
                    }
                    catch(...)
                    {
                        std::lock_guard lock(error_mutex);
                        if(!error)
                            error = std::current_exception();
                    }
                }
            });
        for(auto &t : pool)
            t.join();
        if(error)
            std::rethrow_exception(error);
    }
}

#endif
