#include "einf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

#include "einf/common.hpp"

namespace einf {

namespace {
std::atomic<int> forced{0};
}

int thread_count()
{
    if (forced > 0)
        return forced;
    if (const char* e = std::getenv("EINF_THREADS")) {
        int n = std::atoi(e);
        if (n > 0)
            return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(int n)
{
    if (n < 0)
        throw Error(ErrorKind::Usage, "thread count must be positive");
    forced = n;
}

void parallel_chunks(long n, const std::function<void(long, long, int)>& body)
{
    int t = int(std::min<long>(thread_count(), std::max<long>(1, n / 64)));
    if (t <= 1) {
        body(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(t);
    long step = (n + t - 1) / t;
    for (int w = 0; w < t; ++w) {
        long b = w * step, e = std::min(n, b + step);
        pool.emplace_back([&, b, e, w] {
            try {
                if (b < e)
                    body(b, e, w);
            }
            catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errs)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace einf
