#include "lsa/parallel.hpp"

#include <atomic>

namespace lsa {

namespace {
std::atomic<int> g_jobs{1};
}

void set_jobs(int j) { g_jobs = std::max(1, j); }
int jobs() { return g_jobs; }

}  // namespace lsa
