#include "loewy/parallel.hpp"

#include <algorithm>

namespace loewy {

namespace {
int g_jobs = 0; // 0 = auto
}

int job_count() {
    if (g_jobs > 0) return g_jobs;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

void set_job_count(int n) { g_jobs = n; }

void parallel_for(size_t begin, size_t end, size_t chunk,
                  const std::function<void(size_t, size_t)>& body) {
    if (begin >= end) return;
    const size_t n = end - begin;
    const int jobs = job_count();
    if (jobs <= 1 || n <= chunk) {
        for (size_t c = begin; c < end; c += chunk)
            body(c, std::min(end, c + chunk));
        return;
    }
    const size_t nchunks = (n + chunk - 1) / chunk;
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            const size_t lo = begin + c * chunk;
            body(lo, std::min(end, lo + chunk));
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = static_cast<int>(std::min<size_t>(jobs, nchunks));
    pool.reserve(nthreads - 1);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

} // namespace loewy
