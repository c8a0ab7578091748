#include "geoprandtl/core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace geoprandtl {

namespace {

int initial_workers() {
    const int hw = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("GEOPRANDTL_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return std::min(n, hw);
    }
    return hw;
}

std::atomic<int>& workers() {
    static std::atomic<int> n{initial_workers()};
    return n;
}

}  // namespace

int worker_count() { return workers().load(); }

void set_worker_count(int n) { workers().store(std::max(1, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (w <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(w - 1);
    const std::size_t chunk = (n + w - 1) / w;
    for (std::size_t p = 1; p < w; ++p) {
        const std::size_t b = p * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b < e) pool.emplace_back([&body, b, e] { body(b, e); });
    }
    body(0, std::min(n, chunk));
}

}  // namespace geoprandtl
