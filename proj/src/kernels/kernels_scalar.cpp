#include <cmath>
#include <cstddef>

namespace gdop::kernels::detail {

// Reference implementations. The vector backends are equivalence-tested
// against these.

void horner_many_scalar(const double* cre, const double* cim, std::size_t m, const double* zre,
                        const double* zim, std::size_t npts, double* wre, double* wim) {
    if (m == 0) {
        for (std::size_t i = 0; i < npts; ++i) {
            wre[i] = 0.0;
            wim[i] = 0.0;
        }
        return;
    }
    for (std::size_t i = 0; i < npts; ++i) {
        const double zr = zre[i], zi = zim[i];
        double ar = cre[m - 1], ai = cim[m - 1];
        for (std::size_t j = m - 1; j-- > 0;) {
            const double nr = ar * zr - ai * zi + cre[j];
            const double ni = ar * zi + ai * zr + cim[j];
            ar = nr;
            ai = ni;
        }
        wre[i] = ar;
        wim[i] = ai;
    }
}

double max_abs_scalar(const double* re, const double* im, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m2 = re[i] * re[i] + im[i] * im[i];
        if (m2 > best) best = m2;
    }
    return std::sqrt(best);
}

}  // namespace gdop::kernels::detail
