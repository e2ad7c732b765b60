#include "nsf/util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

namespace nsf {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

int initial_thread_count() {
    const char* env = std::getenv("NSFMIX_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

std::atomic<int> g_threads{0};

}  // namespace

int thread_count() {
    int n = g_threads.load(std::memory_order_relaxed);
    if (n == 0) {
        n = initial_thread_count();
        g_threads.store(n, std::memory_order_relaxed);
    }
    return n;
}

void set_thread_count(int n) {
    g_threads.store(n >= 1 ? n : 1, std::memory_order_relaxed);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int workers = thread_count();
    if (workers <= 1 || n < 2 * static_cast<std::size_t>(workers)) {
        fn(0, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    std::size_t begin = chunk;  // chunk 0 runs on this thread
    for (int w = 1; w < workers && begin < n; ++w) {
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back(fn, begin, end);
        begin = end;
    }
    fn(0, std::min(chunk, n));
    for (auto& t : pool) t.join();
}

}  // namespace nsf
