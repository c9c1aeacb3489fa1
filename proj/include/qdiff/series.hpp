#ifndef QDIFF_SERIES_HPP
#define QDIFF_SERIES_HPP

#include <qdiff/context.hpp>

#include <span>
#include <vector>

namespace qdiff
{

// Truncated Laurent series  sum_{k >= v0} c_k z^k  with coefficients trusted up to z^known_to.
//
// The zero series stores no coefficients and uses v0 = known_to + 1.
class LaurentSeries
{
public:
    LaurentSeries() = default;

    // Zero series known to the context truncation order.
    explicit LaurentSeries(ContextPtr ctx);

    // Coefficients of z^v0, z^(v0+1), ...; known_to defaults to max(v0 + size - 1, trunc_order).
    static LaurentSeries from_coeffs(ContextPtr ctx, int v0, std::vector<cplx> coeffs);
    static LaurentSeries from_coeffs(ContextPtr ctx, int v0, std::vector<cplx> coeffs, int known_to);

    static LaurentSeries zero(ContextPtr ctx, int known_to);
    static LaurentSeries constant(ContextPtr ctx, cplx c);
    // c z^k, known to max(k, trunc_order).
    static LaurentSeries monomial(ContextPtr ctx, cplx c, int k);

    const ContextPtr &context() const
    {
        return m_ctx;
    }
    bool is_zero() const
    {
        return m_coeffs.empty();
    }
    int v0() const
    {
        return m_v0;
    }
    int known_to() const
    {
        return m_known_to;
    }
    const std::vector<cplx> &coeffs() const
    {
        return m_coeffs;
    }
    // Coefficient of z^k; zero below v0. Throws PrecisionExhausted above known_to.
    cplx operator[](int k) const;
    // Same, but returns 0 above known_to.
    cplx coeff_or_zero(int k) const;
    cplx leading() const;
    double max_abs() const;

    // Lowers known_to (never raises it).
    LaurentSeries truncated(int known_to) const;

    // Partial sum at z over the known coefficients.
    cplx eval(cplx z) const;

    // Coefficient k is flushed to zero when |c_k| <= tol_zero * scales[k]; null scales flush exact zeros only.
    static LaurentSeries with_scales(ContextPtr ctx, int v0, std::vector<cplx> coeffs, int known_to,
                                     const std::vector<double> *scales);

private:
    ContextPtr m_ctx;
    int m_v0 = 1;
    int m_known_to = 0;
    std::vector<cplx> m_coeffs;
};

LaurentSeries add(const LaurentSeries &a, const LaurentSeries &b);
LaurentSeries sub(const LaurentSeries &a, const LaurentSeries &b);
LaurentSeries mul(const LaurentSeries &a, const LaurentSeries &b);
LaurentSeries scale(const LaurentSeries &a, cplx c);
LaurentSeries neg(const LaurentSeries &a);
LaurentSeries invert(const LaurentSeries &a);
// Multiplication by z^k (exact, known_to shifts with it).
LaurentSeries shift(const LaurentSeries &a, int k);
// f(z) -> f(q^k z).
LaurentSeries sigma_pow(const LaurentSeries &a, long long k);
cplx pi0(const LaurentSeries &a);
// Inverse of sigma_q - 1 on series without constant term.
LaurentSeries i_q(const LaurentSeries &a);

// Largest |a_k - b_k| over exponents up to min(known_to, upto).
double max_abs_diff(const LaurentSeries &a, const LaurentSeries &b, int upto);

inline LaurentSeries operator+(const LaurentSeries &a, const LaurentSeries &b)
{
    return add(a, b);
}
inline LaurentSeries operator-(const LaurentSeries &a, const LaurentSeries &b)
{
    return sub(a, b);
}
inline LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b)
{
    return mul(a, b);
}
inline LaurentSeries operator*(cplx c, const LaurentSeries &a)
{
    return scale(a, c);
}
inline LaurentSeries operator-(const LaurentSeries &a)
{
    return neg(a);
}

namespace kernels
{

// out[k] = sum_j a[j] b[k-j] for k < out.size(); mag[k] = sum_j |a[j]| |b[k-j]|.
void cauchy_product_serial(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out,
                           std::span<double> mag);
void cauchy_product(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out, std::span<double> mag);

} // namespace kernels

} // namespace qdiff

#endif
