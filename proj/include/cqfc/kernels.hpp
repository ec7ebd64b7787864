#pragma once

#include <complex>
#include <cstddef>

// Data-parallel complex primitives behind matrix arithmetic: a scalar reference
// implementation plus SIMD variants (AVX2 on x86-64, NEON on aarch64) chosen once
// at runtime. Every variant computes the same mathematical result; tests compare
// them on random data. There is no alignment requirement on any pointer.
namespace cqfc::kernels {

using cd = std::complex<double>;

// y[i] += a * x[i]
using axpy_fn = void (*)(cd a, const cd* x, cd* y, std::size_t n);
// y[i] = a * x[i]
using scale_fn = void (*)(cd a, const cd* x, cd* y, std::size_t n);
// Unitary two-row mix, in place:
//   u'[i] = c*u[i] + s*v[i]
//   v'[i] = -conj(s)*u[i] + conj(c)*v[i]
using rotate_fn = void (*)(cd c, cd s, cd* u, cd* v, std::size_t n);
// sum_i |x[i]|^2
using norm_sq_fn = double (*)(const cd* x, std::size_t n);
// sum_i conj(x[i]) * y[i]
using dot_conj_fn = cd (*)(const cd* x, const cd* y, std::size_t n);

struct KernelTable {
  axpy_fn axpy;
  scale_fn scale;
  rotate_fn rotate_pair;
  norm_sq_fn norm_sq;
  dot_conj_fn dot_conj;
  const char* name;
};

namespace scalar {
extern const KernelTable table;
}

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool supported();
extern const KernelTable table;
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
extern const KernelTable table;
}
#endif

// Runtime-selected table. Honors force_scalar() and the CQFC_FORCE_SCALAR
// environment variable (checked once, at first use).
const KernelTable& active();
void force_scalar(bool on);

}  // namespace cqfc::kernels
