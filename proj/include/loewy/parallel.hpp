#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace loewy {

// Process-wide worker count; set once from the CLI (--jobs).
int job_count();
void set_job_count(int n);

// Static-chunked parallel for. Chunk boundaries depend only on (begin, end,
// chunk), never on the worker count, and chunks write disjoint outputs, so
// results are identical for any job count.
void parallel_for(size_t begin, size_t end, size_t chunk,
                  const std::function<void(size_t, size_t)>& body);

} // namespace loewy
