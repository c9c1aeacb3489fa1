#include <qdiff/series.hpp>

#include <algorithm>
#include <cstddef>

namespace qdiff::kernels
{

namespace
{

inline void cauchy_entry(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out, std::span<double> mag,
                         std::size_t k)
{
    const std::size_t jlo = k + 1 > b.size() ? k + 1 - b.size() : 0;
    const std::size_t jhi = std::min(k, a.size() - 1);
    cplx s = 0.0;
    double m = 0.0;
    for (std::size_t j = jlo; j <= jhi; ++j) {
        const cplx t = a[j] * b[k - j];
        s += t;
        m += std::abs(a[j]) * std::abs(b[k - j]);
    }
    out[k] = s;
    mag[k] = m;
}

} // namespace

void cauchy_product_serial(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out,
                           std::span<double> mag)
{
    if (a.empty() || b.empty()) {
        std::fill(out.begin(), out.end(), cplx(0.0));
        std::fill(mag.begin(), mag.end(), 0.0);
        return;
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        cauchy_entry(a, b, out, mag, k);
    }
}

void cauchy_product(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out, std::span<double> mag)
{
    if (a.empty() || b.empty()) {
        std::fill(out.begin(), out.end(), cplx(0.0));
        std::fill(mag.begin(), mag.end(), 0.0);
        return;
    }
    const long long n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(dynamic, 16) if (n > 256)
    for (long long k = 0; k < n; ++k) {
        cauchy_entry(a, b, out, mag, static_cast<std::size_t>(k));
    }
}

} // namespace qdiff::kernels
