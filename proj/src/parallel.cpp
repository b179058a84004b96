#include "maglap/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace maglap {

namespace {

std::atomic<unsigned> g_default_threads{0};

}  // namespace

unsigned default_thread_count() {
    const unsigned configured = g_default_threads.load();
    if (configured > 0) return configured;
    if (const char* env = std::getenv("MAGLAP_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void set_default_thread_count(unsigned threads) { g_default_threads.store(threads); }

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = default_thread_count();
    if (threads > n) threads = static_cast<unsigned>(n);
    if (n == 0) return;
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace maglap
