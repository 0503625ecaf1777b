#include "resnet/threads.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace resnet {

namespace {

int default_budget() {
    if (const char* env = std::getenv("RESNET_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int> g_budget{0};  // 0: not set, use default

}  // namespace

int thread_budget() {
    int b = g_budget.load(std::memory_order_relaxed);
    return b >= 1 ? b : default_budget();
}

void set_thread_budget(int n) {
    g_budget.store(n >= 1 ? n : 0, std::memory_order_relaxed);
}

namespace detail {

void parallel_blocks(std::int64_t count, std::int64_t block_size,
                     const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (count <= 0) return;
    const std::int64_t blocks = (count + block_size - 1) / block_size;
    const int workers = std::min<std::int64_t>(thread_budget(), blocks);
    if (workers <= 1) {
        for (std::int64_t b = 0; b < blocks; ++b)
            fn(b * block_size, std::min(count, (b + 1) * block_size));
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::int64_t b = next.fetch_add(1, std::memory_order_relaxed);
                if (b >= blocks) return;
                fn(b * block_size, std::min(count, (b + 1) * block_size));
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail
}  // namespace resnet
