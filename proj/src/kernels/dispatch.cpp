#include <atomic>
#include <cstdlib>
#include <cstring>

#include "qgibbs/errors.hpp"
#include "qgibbs/kernels.hpp"

namespace qgibbs::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa resolve_initial() {
  if (const char* env = std::getenv("QGIBBS_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::avx2;
    if (std::strcmp(env, "avx2") == 0) return Isa::scalar;  // requested but unavailable
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{resolve_initial()};
  return isa;
}

}  // namespace

bool avx2_supported() { return cpu_has_avx2(); }

Isa active() { return current().load(std::memory_order_relaxed); }

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void force(Isa isa) {
  if (isa == Isa::avx2 && !cpu_has_avx2())
    throw ValidationError("avx2 kernels not supported on this CPU");
  current().store(isa, std::memory_order_relaxed);
}

const Ops& ops_for(Isa isa) {
  return isa == Isa::avx2 ? detail::avx2_ops : detail::scalar_ops;
}

const Ops& ops() { return ops_for(active()); }

}  // namespace qgibbs::kernels
