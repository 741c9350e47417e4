#include "nilfix/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace nilfix {

int effective_threads() {
    const char* env = std::getenv("NILFIX_THREADS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    int n = 0;
    try {
        n = std::stoi(env);
    } catch (...) {
        return 1;
    }
    if (n < 1) return 1;
    if (n > 64) return 64;
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const int threads = effective_threads();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    pool.reserve(k);
    for (std::size_t t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace nilfix
