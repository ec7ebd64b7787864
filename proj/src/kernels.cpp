#include "cqfc/kernels.hpp"

#include <atomic>
#include <cstdlib>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#endif
#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace cqfc::kernels {

namespace scalar {

static void axpy(cd a, const cd* x, cd* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

static void scale(cd a, const cd* x, cd* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i];
}

static void rotate_pair(cd c, cd s, cd* u, cd* v, std::size_t n) {
  const cd cs = std::conj(s);
  const cd cc = std::conj(c);
  for (std::size_t i = 0; i < n; ++i) {
    const cd ui = u[i];
    const cd vi = v[i];
    u[i] = c * ui + s * vi;
    v[i] = -cs * ui + cc * vi;
  }
}

static double norm_sq(const cd* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

static cd dot_conj(const cd* x, const cd* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

const KernelTable table = {axpy, scale, rotate_pair, norm_sq, dot_conj, "scalar"};

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {

bool supported() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }

// Lane layout: one __m256d holds two complex doubles [re0, im0, re1, im1].
// a*x per lane: re(a)*x + im(a)*swap(x)*[-1,+1,-1,+1].

__attribute__((target("avx2,fma"))) static void axpy(cd a, const cd* x, cd* y, std::size_t n) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_setr_pd(-a.imag(), a.imag(), -a.imag(), a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
    __m256d acc = _mm256_loadu_pd(ys + 2 * i);
    acc = _mm256_fmadd_pd(xv, ar, acc);
    const __m256d xsw = _mm256_permute_pd(xv, 0b0101);
    acc = _mm256_fmadd_pd(xsw, ai, acc);
    _mm256_storeu_pd(ys + 2 * i, acc);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2,fma"))) static void scale(cd a, const cd* x, cd* y, std::size_t n) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_setr_pd(-a.imag(), a.imag(), -a.imag(), a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
    const __m256d xsw = _mm256_permute_pd(xv, 0b0101);
    const __m256d out = _mm256_fmadd_pd(xsw, ai, _mm256_mul_pd(xv, ar));
    _mm256_storeu_pd(ys + 2 * i, out);
  }
  for (; i < n; ++i) y[i] = a * x[i];
}

__attribute__((target("avx2,fma"))) static void rotate_pair(cd c, cd s, cd* u, cd* v,
                                                            std::size_t n) {
  double* us = reinterpret_cast<double*>(u);
  double* vs = reinterpret_cast<double*>(v);
  const __m256d cr = _mm256_set1_pd(c.real());
  const __m256d ci = _mm256_setr_pd(-c.imag(), c.imag(), -c.imag(), c.imag());
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_setr_pd(-s.imag(), s.imag(), -s.imag(), s.imag());
  // -conj(s) and conj(c) expressed with the same splat scheme.
  const __m256d nsr = _mm256_set1_pd(-s.real());
  const __m256d nsi = _mm256_setr_pd(-s.imag(), s.imag(), -s.imag(), s.imag());
  const __m256d ccr = _mm256_set1_pd(c.real());
  const __m256d cci = _mm256_setr_pd(c.imag(), -c.imag(), c.imag(), -c.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d uv = _mm256_loadu_pd(us + 2 * i);
    const __m256d vv = _mm256_loadu_pd(vs + 2 * i);
    const __m256d usw = _mm256_permute_pd(uv, 0b0101);
    const __m256d vsw = _mm256_permute_pd(vv, 0b0101);
    __m256d nu = _mm256_mul_pd(uv, cr);
    nu = _mm256_fmadd_pd(usw, ci, nu);
    nu = _mm256_fmadd_pd(vv, sr, nu);
    nu = _mm256_fmadd_pd(vsw, si, nu);
    __m256d nv = _mm256_mul_pd(uv, nsr);
    nv = _mm256_fmadd_pd(usw, nsi, nv);
    nv = _mm256_fmadd_pd(vv, ccr, nv);
    nv = _mm256_fmadd_pd(vsw, cci, nv);
    _mm256_storeu_pd(us + 2 * i, nu);
    _mm256_storeu_pd(vs + 2 * i, nv);
  }
  if (i < n) scalar::table.rotate_pair(c, s, u + i, v + i, n - i);
}

__attribute__((target("avx2,fma"))) static double norm_sq(const cd* x, std::size_t n) {
  const double* xs = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) {
    total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return total;
}

__attribute__((target("avx2,fma"))) static cd dot_conj(const cd* x, const cd* y, std::size_t n) {
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
    const __m256d yv = _mm256_loadu_pd(ys + 2 * i);
    const __m256d ysw = _mm256_permute_pd(yv, 0b0101);
    // [xr*yr, xi*yi, ...] -> pairwise sums give the real part.
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    // [xr*yi, xi*yr, ...] with alternating sign -> pairwise sums give imag.
    acc_im = _mm256_fmadd_pd(_mm256_mul_pd(xv, ysw), sign, acc_im);
  }
  double lre[4], lim[4];
  _mm256_storeu_pd(lre, acc_re);
  _mm256_storeu_pd(lim, acc_im);
  double re = lre[0] + lre[1] + lre[2] + lre[3];
  double im = lim[0] + lim[1] + lim[2] + lim[3];
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

const KernelTable table = {axpy, scale, rotate_pair, norm_sq, dot_conj, "avx2"};

}  // namespace avx2
#endif  // x86-64

#if defined(__aarch64__)
namespace neon {

// One float64x2_t holds a single complex double [re, im].

static void axpy(cd a, const cd* x, cd* y, std::size_t n) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const float64x2_t ar = vdupq_n_f64(a.real());
  const float64x2_t ai = {-a.imag(), a.imag()};
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xs + 2 * i);
    float64x2_t acc = vld1q_f64(ys + 2 * i);
    acc = vfmaq_f64(acc, xv, ar);
    acc = vfmaq_f64(acc, vextq_f64(xv, xv, 1), ai);
    vst1q_f64(ys + 2 * i, acc);
  }
}

static void scale(cd a, const cd* x, cd* y, std::size_t n) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const float64x2_t ar = vdupq_n_f64(a.real());
  const float64x2_t ai = {-a.imag(), a.imag()};
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xs + 2 * i);
    float64x2_t out = vmulq_f64(xv, ar);
    out = vfmaq_f64(out, vextq_f64(xv, xv, 1), ai);
    vst1q_f64(ys + 2 * i, out);
  }
}

static void rotate_pair(cd c, cd s, cd* u, cd* v, std::size_t n) {
  scalar::table.rotate_pair(c, s, u, v, n);
}

static double norm_sq(const cd* x, std::size_t n) {
  const double* xs = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xs + 2 * i);
    acc = vfmaq_f64(acc, xv, xv);
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

static cd dot_conj(const cd* x, const cd* y, std::size_t n) {
  return scalar::table.dot_conj(x, y, n);
}

const KernelTable table = {axpy, scale, rotate_pair, norm_sq, dot_conj, "neon"};

}  // namespace neon
#endif  // aarch64

namespace {

std::atomic<bool> g_force_scalar{false};

const KernelTable* pick() {
  if (g_force_scalar.load(std::memory_order_relaxed)) return &scalar::table;
  static const bool env_force = [] {
    const char* env = std::getenv("CQFC_FORCE_SCALAR");
    return env != nullptr && env[0] == '1';
  }();
  if (env_force) return &scalar::table;
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2::supported()) return &avx2::table;
#endif
#if defined(__aarch64__)
  return &neon::table;
#endif
  return &scalar::table;
}

}  // namespace

const KernelTable& active() { return *pick(); }

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

}  // namespace cqfc::kernels
