#include "qgibbs/sysmem.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "qgibbs/errors.hpp"

namespace qgibbs {

namespace {

std::size_t read_meminfo_available() {
  std::ifstream in("/proc/meminfo");
  std::string key;
  std::size_t kb = 0;
  while (in >> key >> kb) {
    if (key == "MemAvailable:") return kb * 1024;
    in.ignore(256, '\n');
  }
  return 0;
}

std::size_t read_cgroup_headroom() {
  // cgroup v2: memory.max may be "max" (unlimited)
  std::ifstream maxf("/sys/fs/cgroup/memory.max");
  if (!maxf) return 0;
  std::string s;
  maxf >> s;
  if (s == "max") return 0;
  std::size_t limit = std::stoull(s);
  std::ifstream curf("/sys/fs/cgroup/memory.current");
  std::size_t current = 0;
  if (curf) curf >> current;
  return limit > current ? limit - current : 1;
}

}  // namespace

std::size_t available_memory_bytes() {
  const std::size_t mem = read_meminfo_available();
  const std::size_t cg = read_cgroup_headroom();
  if (mem == 0) return cg;
  if (cg == 0) return mem;
  return std::min(mem, cg);
}

void check_memory_budget(std::size_t bytes, const std::string& what) {
  const std::size_t avail = available_memory_bytes();
  if (avail == 0) return;  // unknown; let the allocator decide
  const std::size_t budget = avail - avail / 10;
  if (bytes > budget) {
    std::ostringstream os;
    os << what << " needs ~" << (bytes >> 20) << " MiB but only "
       << (budget >> 20) << " MiB of memory is available";
    throw ResourceError(os.str());
  }
}

}  // namespace qgibbs
