#include "gradss/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace gradss {

std::size_t thread_cap()
{
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("GRADSS_THREADS");
    if (env == nullptr || *env == '\0')
        return hw;
    try {
        long v = std::stol(env);
        return v < 1 ? 1 : static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        return hw;
    }
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
    std::size_t workers = std::min(thread_cap(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(run);
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace gradss
