#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel inner loops used by the dense operator code. Each primitive
// has a scalar reference implementation and an AVX2/FMA variant; the active
// one is selected at runtime from CPUID (override with QGIBBS_KERNELS=scalar
// or =avx2). The two variants are equivalence-tested against each other.
namespace qgibbs::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// Variant currently in use.
Isa active();
std::string isa_name(Isa);
/// Force a variant (tests); throws ValidationError if unsupported on this CPU.
void force(Isa);
/// True when the CPU can run the AVX2/FMA variant.
bool avx2_supported();

struct Ops {
  // y[i] += a * x[i]
  void (*axpy_d)(double a, const double* x, double* y, std::size_t n);
  void (*axpy_z)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // x[i] *= a
  void (*scale_d)(double a, double* x, std::size_t n);
  void (*scale_z)(cplx a, cplx* x, std::size_t n);
  // sum_i x[i] * y[i]
  double (*dot_d)(const double* x, const double* y, std::size_t n);
  // sum_i conj(x[i]) * y[i]
  cplx (*dotc_z)(const cplx* x, const cplx* y, std::size_t n);
  // y[i*stride] += a
  void (*add_const_stride_d)(double a, double* y, std::size_t stride, std::size_t n);
  void (*add_const_stride_z)(cplx a, cplx* y, std::size_t stride, std::size_t n);
  // sum_i x[i*stride]
  double (*sum_stride_d)(const double* x, std::size_t stride, std::size_t n);
  cplx (*sum_stride_z)(const cplx* x, std::size_t stride, std::size_t n);
  // y[i] = x[i*stride]
  void (*gather_d)(const double* x, std::size_t stride, double* y, std::size_t n);
  void (*gather_z)(const cplx* x, std::size_t stride, cplx* y, std::size_t n);
};

/// Dispatch table for the active variant.
const Ops& ops();
/// Dispatch table for a specific variant (equivalence tests).
const Ops& ops_for(Isa);

// Convenience wrappers over the active table.
inline void axpy(double a, const double* x, double* y, std::size_t n) { ops().axpy_d(a, x, y, n); }
inline void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) { ops().axpy_z(a, x, y, n); }
inline void scale(double a, double* x, std::size_t n) { ops().scale_d(a, x, n); }
inline void scale(cplx a, cplx* x, std::size_t n) { ops().scale_z(a, x, n); }
inline double dot(const double* x, const double* y, std::size_t n) { return ops().dot_d(x, y, n); }
inline cplx dotc(const cplx* x, const cplx* y, std::size_t n) { return ops().dotc_z(x, y, n); }
inline void add_const_stride(double a, double* y, std::size_t s, std::size_t n) { ops().add_const_stride_d(a, y, s, n); }
inline void add_const_stride(cplx a, cplx* y, std::size_t s, std::size_t n) { ops().add_const_stride_z(a, y, s, n); }
inline double sum_stride(const double* x, std::size_t s, std::size_t n) { return ops().sum_stride_d(x, s, n); }
inline cplx sum_stride(const cplx* x, std::size_t s, std::size_t n) { return ops().sum_stride_z(x, s, n); }
inline void gather(const double* x, std::size_t s, double* y, std::size_t n) { ops().gather_d(x, s, y, n); }
inline void gather(const cplx* x, std::size_t s, cplx* y, std::size_t n) { ops().gather_z(x, s, y, n); }

namespace detail {
extern const Ops scalar_ops;
extern const Ops avx2_ops;
}

}  // namespace qgibbs::kernels
