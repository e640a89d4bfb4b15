#pragma once

#include <cstddef>
#include <string>

namespace qgibbs {

/// Physical memory currently available to this process, honoring cgroup
/// limits when present. 0 if it cannot be determined.
std::size_t available_memory_bytes();

/// Throws ResourceError when a planned allocation of `bytes` would not fit
/// in available memory. An allocation beyond physical memory would be
/// OOM-killed rather than reported, so it is refused up front.
void check_memory_budget(std::size_t bytes, const std::string& what);

}  // namespace qgibbs
