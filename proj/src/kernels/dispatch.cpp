#include "gdop/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "gdop/errors.hpp"

namespace gdop::kernels {

namespace detail {
void horner_many_scalar(const double*, const double*, std::size_t, const double*, const double*,
                        std::size_t, double*, double*);
double max_abs_scalar(const double*, const double*, std::size_t);
#if GDOP_HAVE_AVX2
void horner_many_avx2(const double*, const double*, std::size_t, const double*, const double*,
                      std::size_t, double*, double*);
double max_abs_avx2(const double*, const double*, std::size_t);
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if GDOP_HAVE_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect_backend() {
    if (const char* env = std::getenv("GDOP_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (!cpu_has_avx2()) throw Error("GDOP_KERNEL=avx2 but CPU lacks AVX2/FMA");
            return Backend::avx2;
        }
        throw Error(std::string("unknown GDOP_KERNEL value: ") + env);
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<int> g_forced{-1};

Backend current() {
    const int forced = g_forced.load(std::memory_order_relaxed);
    if (forced >= 0) return static_cast<Backend>(forced);
    static const Backend detected = detect_backend();
    return detected;
}

}  // namespace

Backend active_backend() { return current(); }

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

void force_backend(Backend b) {
    if (!backend_available(b))
        throw Error(std::string("backend unavailable on this CPU: ") + backend_name(b));
    g_forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_backend() { g_forced.store(-1, std::memory_order_relaxed); }

void horner_many(const double* cre, const double* cim, std::size_t m, const double* zre,
                 const double* zim, std::size_t npts, double* wre, double* wim) {
#if GDOP_HAVE_AVX2
    if (current() == Backend::avx2) {
        detail::horner_many_avx2(cre, cim, m, zre, zim, npts, wre, wim);
        return;
    }
#endif
    detail::horner_many_scalar(cre, cim, m, zre, zim, npts, wre, wim);
}

double max_abs(const double* re, const double* im, std::size_t n) {
#if GDOP_HAVE_AVX2
    if (current() == Backend::avx2) return detail::max_abs_avx2(re, im, n);
#endif
    return detail::max_abs_scalar(re, im, n);
}

PointBlock circle_points(double r, int count) {
    PointBlock pts;
    pts.re.resize(static_cast<std::size_t>(count));
    pts.im.resize(static_cast<std::size_t>(count));
    const double step = 2.0 * M_PI / count;
    for (int i = 0; i < count; ++i) {
        pts.re[static_cast<std::size_t>(i)] = r * std::cos(step * i);
        pts.im[static_cast<std::size_t>(i)] = r * std::sin(step * i);
    }
    return pts;
}

PointBlock eval_poly(const CPoly& p, const PointBlock& pts) {
    const std::size_t n = pts.size();
    PointBlock out;
    out.re.resize(n);
    out.im.resize(n);
    std::vector<double> cre, cim;
    cre.reserve(p.coeffs().size());
    cim.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        cre.push_back(c.real());
        cim.push_back(c.imag());
    }
    horner_many(cre.data(), cim.data(), cre.size(), pts.re.data(), pts.im.data(), n, out.re.data(),
                out.im.data());
    return out;
}

double max_abs(const PointBlock& values) {
    return max_abs(values.re.data(), values.im.data(), values.size());
}

}  // namespace gdop::kernels
