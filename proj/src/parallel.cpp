#include "rsiegel/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace rsiegel {

namespace {

std::atomic<int> configured{0};

} // namespace

int thread_count()
{
    int t = configured.load();
    if (t > 0) return t;
    if (const char* env = std::getenv("RSIEGEL_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(int threads) { configured.store(std::max(0, threads)); }

void parallel_for(std::size_t total, const std::function<void(std::size_t, std::size_t, int)>& body)
{
    const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(thread_count()), std::max<std::size_t>(total, 1)));
    if (workers <= 1) {
        body(0, total, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    const std::size_t chunk = (total + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers);
    for (int w = 0; w < workers; ++w) {
        std::size_t begin = std::min(total, chunk * static_cast<std::size_t>(w));
        std::size_t end = std::min(total, begin + chunk);
        pool.emplace_back([&, begin, end, w] {
            try {
                body(begin, end, w);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace rsiegel
