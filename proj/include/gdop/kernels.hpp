#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "gdop/polynomial.hpp"

namespace gdop::kernels {

enum class Backend { scalar, avx2 };

// Backend picked at startup: AVX2+FMA when the CPU has it, scalar otherwise.
// GDOP_KERNEL=scalar|avx2 overrides the detection.
Backend active_backend();
const char* backend_name(Backend b);
bool backend_available(Backend b);

// Testing hook; throws if the requested backend is unavailable on this CPU.
void force_backend(Backend b);
void reset_backend();

// w[i] = sum_j (cre[j] + i cim[j]) z_i^j for z_i = zre[i] + i zim[i].
// Coefficient arrays have length m (m = 0 means the zero polynomial).
void horner_many(const double* cre, const double* cim, std::size_t m, const double* zre,
                 const double* zim, std::size_t npts, double* wre, double* wim);

// max_i sqrt(re[i]^2 + im[i]^2)
double max_abs(const double* re, const double* im, std::size_t n);

// Split-array view of complex points; the layout the kernels consume.
struct PointBlock {
    std::vector<double> re, im;
    std::size_t size() const { return re.size(); }
    std::complex<double> at(std::size_t i) const { return {re[i], im[i]}; }
};

PointBlock circle_points(double r, int count);

// Convenience wrappers over horner_many for polynomial types.
PointBlock eval_poly(const CPoly& p, const PointBlock& pts);
double max_abs(const PointBlock& values);

}  // namespace gdop::kernels
