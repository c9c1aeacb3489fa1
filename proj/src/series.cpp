#include <qdiff/error.hpp>
#include <qdiff/series.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace qdiff
{

namespace
{

void require_same(const LaurentSeries &a, const LaurentSeries &b)
{
    if (!a.context() || !b.context()) {
        throw Error(ErrorKind::InvalidContext, "series without context");
    }
    if (a.context() != b.context() && (a.context()->q != b.context()->q ||
                                       a.context()->trunc_order != b.context()->trunc_order)) {
        throw Error(ErrorKind::InvalidContext, "series built on different contexts");
    }
}

} // namespace

LaurentSeries::LaurentSeries(ContextPtr ctx) : m_ctx(std::move(ctx))
{
    m_known_to = m_ctx->trunc_order;
    m_v0 = m_known_to + 1;
}

LaurentSeries LaurentSeries::with_scales(ContextPtr ctx, int v0, std::vector<cplx> coeffs, int known_to,
                                         const std::vector<double> *scales)
{
    LaurentSeries s;
    s.m_ctx = std::move(ctx);
    s.m_known_to = known_to;
    const long long want = static_cast<long long>(known_to) - v0 + 1;
    if (want <= 0) {
        s.m_v0 = known_to + 1;
        return s;
    }
    coeffs.resize(static_cast<std::size_t>(want), cplx(0.0));
    const double tol = s.m_ctx->tol_zero;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const double thr = scales != nullptr && k < scales->size() ? tol * (*scales)[k] : 0.0;
        if (std::abs(coeffs[k]) <= thr) {
            coeffs[k] = 0.0;
        }
    }
    std::size_t first = 0;
    while (first < coeffs.size() && coeffs[first] == 0.0) {
        ++first;
    }
    if (first == coeffs.size()) {
        s.m_v0 = known_to + 1;
        return s;
    }
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(first));
    s.m_v0 = v0 + static_cast<int>(first);
    s.m_coeffs = std::move(coeffs);
    return s;
}

LaurentSeries LaurentSeries::from_coeffs(ContextPtr ctx, int v0, std::vector<cplx> coeffs)
{
    const int last = v0 + static_cast<int>(coeffs.size()) - 1;
    const int kt = std::max(last, ctx->trunc_order);
    return with_scales(std::move(ctx), v0, std::move(coeffs), kt, nullptr);
}

LaurentSeries LaurentSeries::from_coeffs(ContextPtr ctx, int v0, std::vector<cplx> coeffs, int known_to)
{
    if (known_to < v0 - 1) {
        throw Error(ErrorKind::InvalidArgument, "known_to below v0 - 1");
    }
    return with_scales(std::move(ctx), v0, std::move(coeffs), known_to, nullptr);
}

LaurentSeries LaurentSeries::zero(ContextPtr ctx, int known_to)
{
    LaurentSeries s(std::move(ctx));
    s.m_known_to = known_to;
    s.m_v0 = known_to + 1;
    return s;
}

LaurentSeries LaurentSeries::constant(ContextPtr ctx, cplx c)
{
    return from_coeffs(std::move(ctx), 0, {c});
}

LaurentSeries LaurentSeries::monomial(ContextPtr ctx, cplx c, int k)
{
    return from_coeffs(std::move(ctx), k, {c});
}

cplx LaurentSeries::operator[](int k) const
{
    if (k > m_known_to) {
        throw Error(ErrorKind::PrecisionExhausted,
                    "coefficient z^" + std::to_string(k) + " beyond known_to " + std::to_string(m_known_to));
    }
    return coeff_or_zero(k);
}

cplx LaurentSeries::coeff_or_zero(int k) const
{
    if (k < m_v0 || k > m_known_to) {
        return 0.0;
    }
    return m_coeffs[static_cast<std::size_t>(k - m_v0)];
}

cplx LaurentSeries::leading() const
{
    if (is_zero()) {
        throw Error(ErrorKind::ZeroSeries, "leading coefficient of the zero series");
    }
    return m_coeffs.front();
}

double LaurentSeries::max_abs() const
{
    double m = 0.0;
    for (const cplx &c : m_coeffs) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

LaurentSeries LaurentSeries::truncated(int known_to) const
{
    if (known_to >= m_known_to) {
        return *this;
    }
    std::vector<cplx> c = m_coeffs;
    return with_scales(m_ctx, m_v0, std::move(c), known_to, nullptr);
}

cplx LaurentSeries::eval(cplx z) const
{
    if (is_zero()) {
        return 0.0;
    }
    cplx acc = 0.0;
    for (auto it = m_coeffs.rbegin(); it != m_coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc * std::pow(z, m_v0);
}

LaurentSeries add(const LaurentSeries &a, const LaurentSeries &b)
{
    require_same(a, b);
    const int kt = std::min(a.known_to(), b.known_to());
    if (a.is_zero()) {
        return b.truncated(kt);
    }
    if (b.is_zero()) {
        return a.truncated(kt);
    }
    const int v0 = std::min(a.v0(), b.v0());
    if (kt < v0) {
        return LaurentSeries::zero(a.context(), kt);
    }
    const std::size_t n = static_cast<std::size_t>(kt - v0 + 1);
    std::vector<cplx> c(n);
    std::vector<double> mag(n);
    for (std::size_t k = 0; k < n; ++k) {
        const int e = v0 + static_cast<int>(k);
        const cplx x = a.coeff_or_zero(e);
        const cplx y = b.coeff_or_zero(e);
        c[k] = x + y;
        mag[k] = std::max(std::abs(x), std::abs(y));
    }
    return LaurentSeries::with_scales(a.context(), v0, std::move(c), kt, &mag);
}

LaurentSeries sub(const LaurentSeries &a, const LaurentSeries &b)
{
    return add(a, neg(b));
}

LaurentSeries neg(const LaurentSeries &a)
{
    return scale(a, -1.0);
}

LaurentSeries scale(const LaurentSeries &a, cplx c)
{
    if (c == 0.0 || a.is_zero()) {
        return LaurentSeries::zero(a.context(), a.known_to());
    }
    std::vector<cplx> out = a.coeffs();
    for (cplx &x : out) {
        x *= c;
    }
    return LaurentSeries::from_coeffs(a.context(), a.v0(), std::move(out), a.known_to());
}

LaurentSeries mul(const LaurentSeries &a, const LaurentSeries &b)
{
    require_same(a, b);
    const int cap = a.context()->trunc_order;
    if (a.is_zero() || b.is_zero()) {
        const int va = a.is_zero() ? a.known_to() + 1 : a.v0();
        const int vb = b.is_zero() ? b.known_to() + 1 : b.v0();
        return LaurentSeries::zero(a.context(), std::min({a.known_to() + vb, b.known_to() + va, cap}));
    }
    const int v0 = a.v0() + b.v0();
    const int kt = std::min({a.known_to() + b.v0(), b.known_to() + a.v0(), cap});
    if (kt < v0) {
        return LaurentSeries::zero(a.context(), kt);
    }
    const std::size_t n = static_cast<std::size_t>(kt - v0 + 1);
    std::vector<cplx> c(n);
    std::vector<double> mag(n);
    kernels::cauchy_product(a.coeffs(), b.coeffs(), c, mag);
    return LaurentSeries::with_scales(a.context(), v0, std::move(c), kt, &mag);
}

LaurentSeries invert(const LaurentSeries &a)
{
    if (a.is_zero()) {
        throw Error(ErrorKind::ZeroSeries, "cannot invert the zero series");
    }
    const int v = a.v0();
    const int kt = std::min(a.known_to() - 2 * v, a.context()->trunc_order);
    if (kt < -v) {
        throw Error(ErrorKind::PrecisionExhausted, "no coefficient of the inverse is known");
    }
    const std::size_t n = static_cast<std::size_t>(kt + v + 1);
    const std::vector<cplx> &ac = a.coeffs();
    std::vector<cplx> bc(n);
    const cplx inv0 = 1.0 / ac[0];
    bc[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        cplx s = 0.0;
        const std::size_t jmax = std::min(k, ac.size() - 1);
        for (std::size_t j = 1; j <= jmax; ++j) {
            s += ac[j] * bc[k - j];
        }
        bc[k] = -s * inv0;
    }
    return LaurentSeries::from_coeffs(a.context(), -v, std::move(bc), kt);
}

LaurentSeries shift(const LaurentSeries &a, int k)
{
    if (a.is_zero()) {
        return LaurentSeries::zero(a.context(), a.known_to() + k);
    }
    return LaurentSeries::from_coeffs(a.context(), a.v0() + k, a.coeffs(), a.known_to() + k);
}

LaurentSeries sigma_pow(const LaurentSeries &a, long long k)
{
    if (k == 0 || a.is_zero()) {
        return a;
    }
    std::vector<cplx> out = a.coeffs();
    const QContext &ctx = *a.context();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] *= q_pow(ctx, k * (a.v0() + static_cast<long long>(i)));
    }
    return LaurentSeries::from_coeffs(a.context(), a.v0(), std::move(out), a.known_to());
}

cplx pi0(const LaurentSeries &a)
{
    return a.coeff_or_zero(0);
}

LaurentSeries i_q(const LaurentSeries &a)
{
    const cplx c0 = pi0(a);
    if (std::abs(c0) > a.context()->tol_zero * std::max(1.0, a.max_abs())) {
        throw Error(ErrorKind::NonzeroConstantTerm, "i_q needs a series without constant term");
    }
    if (a.is_zero()) {
        return a;
    }
    std::vector<cplx> out = a.coeffs();
    const QContext &ctx = *a.context();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int e = a.v0() + static_cast<int>(i);
        out[i] = e == 0 ? cplx(0.0) : out[i] / (q_pow(ctx, e) - 1.0);
    }
    return LaurentSeries::from_coeffs(a.context(), a.v0(), std::move(out), a.known_to());
}

double max_abs_diff(const LaurentSeries &a, const LaurentSeries &b, int upto)
{
    const int hi = std::min({a.known_to(), b.known_to(), upto});
    int lo = std::min(a.is_zero() ? hi + 1 : a.v0(), b.is_zero() ? hi + 1 : b.v0());
    double m = 0.0;
    for (int k = lo; k <= hi; ++k) {
        m = std::max(m, std::abs(a.coeff_or_zero(k) - b.coeff_or_zero(k)));
    }
    return m;
}

} // namespace qdiff
