#include "qgibbs/kernels.hpp"

// Reference kernels. Kept branch-free and order-deterministic: the AVX2
// variants must produce the same results up to FMA rounding.
namespace qgibbs::kernels {
namespace {

void axpy_d(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_z(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_d(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void scale_z(cplx a, cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double dot_d(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

cplx dotc_z(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void add_const_stride_d(double a, double* y, std::size_t stride, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i * stride] += a;
}

void add_const_stride_z(cplx a, cplx* y, std::size_t stride, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i * stride] += a;
}

double sum_stride_d(const double* x, std::size_t stride, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i * stride];
  return s;
}

cplx sum_stride_z(const cplx* x, std::size_t stride, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i * stride].real();
    im += x[i * stride].imag();
  }
  return {re, im};
}

void gather_d(const double* x, std::size_t stride, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i * stride];
}

void gather_z(const cplx* x, std::size_t stride, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i * stride];
}

}  // namespace

namespace detail {
const Ops scalar_ops = {
    axpy_d, axpy_z, scale_d, scale_z, dot_d, dotc_z,
    add_const_stride_d, add_const_stride_z, sum_stride_d, sum_stride_z,
    gather_d, gather_z,
};
}

}  // namespace qgibbs::kernels
