#include "gsp4lfun/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gsp4lfun {

namespace {
std::atomic<int> g_thread_cap{0};
}

void set_thread_cap(int n) { g_thread_cap.store(n < 0 ? 0 : n); }

int thread_cap() {
    int cap = g_thread_cap.load();
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (cap == 0 || cap > static_cast<int>(hw)) cap = static_cast<int>(hw);
    return cap;
}

void parallel_for(long begin, long end, const std::function<void(long)>& f) {
    long n = end - begin;
    if (n <= 0) return;
    int workers = thread_cap();
    if (workers <= 1 || n == 1) {
        for (long i = begin; i < end; ++i) f(i);
        return;
    }
    if (workers > n) workers = static_cast<int>(n);
    long block = (n + workers - 1) / workers;
    std::mutex error_mu;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        long lo = begin + w * block;
        long hi = std::min(end, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f, &error_mu, &error] {
            try {
                for (long i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}
