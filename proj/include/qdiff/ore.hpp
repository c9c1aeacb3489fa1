#ifndef QDIFF_ORE_HPP
#define QDIFF_ORE_HPP

#include <qdiff/series.hpp>

#include <map>

namespace qdiff
{

// Finite sum  sum_i a_i sigma^i  with Laurent series coefficients and sigma x = sigma_q(x) sigma.
class OreOperator
{
public:
    OreOperator() = default;
    explicit OreOperator(ContextPtr ctx);

    // Zero coefficients are dropped.
    static OreOperator from_terms(ContextPtr ctx, const std::map<int, LaurentSeries> &terms);
    static OreOperator scalar(const LaurentSeries &a);
    // c sigma^k
    static OreOperator sigma(ContextPtr ctx, int k = 1, cplx c = 1.0);

    const ContextPtr &context() const
    {
        return m_ctx;
    }
    const std::map<int, LaurentSeries> &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    // Lowest and highest sigma-degree; ZeroOperator on the zero operator.
    int min_deg() const;
    int max_deg() const;
    int deg_abs() const;
    // Coefficient of sigma^i (zero series when absent).
    LaurentSeries coeff(int i) const;
    // min_i v0(a_i).
    int v0() const;
    // min_i known_to(a_i).
    int known_to() const;
    double max_abs() const;

    OreOperator truncated(int known_to) const;

private:
    ContextPtr m_ctx;
    std::map<int, LaurentSeries> m_terms;
};

OreOperator ore_add(const OreOperator &P, const OreOperator &Q);
OreOperator ore_sub(const OreOperator &P, const OreOperator &Q);
OreOperator ore_mul(const OreOperator &P, const OreOperator &Q);
OreOperator ore_scale(const OreOperator &P, cplx c);
// a * P
OreOperator ore_lmul(const LaurentSeries &a, const OreOperator &P);
// P * a  (multiplication on the right by the operator "multiply by a")
OreOperator ore_rmul(const OreOperator &P, const LaurentSeries &a);
// z^k * P
OreOperator ore_shift(const OreOperator &P, int k);

// P.f = sum_i a_i sigma_q^i(f)
LaurentSeries apply(const OreOperator &P, const LaurentSeries &f);

struct Division {
    OreOperator quotient;
    OreOperator remainder;
};

// A = Q B + R with R supported on [min_deg A, min_deg A + deg_abs B - 1].
Division right_divide(const OreOperator &A, const OreOperator &B);

// P^[u] = u^{-1} P u where sigma_q u = alpha u:  b_i = a_i prod_{j<i} sigma_q^j(alpha).
OreOperator gauge(const OreOperator &P, const LaurentSeries &alpha);
// Exact gauge by alpha = c z^k:  b_i = a_i c^i q^{k i(i-1)/2} z^{k i}.
OreOperator gauge_monomial(const OreOperator &P, cplx c, int k);

struct UnitFactor {
    cplx c;
    int mu;
    // prod_{k>=1} beta(q^{-k} z) with alpha = c z^mu beta, beta(0) = 1
    LaurentSeries v;
};

// Data of u = e_{q,c} Theta_q^mu v with sigma_q u = alpha u.
UnitFactor unit_from_alpha(const LaurentSeries &alpha);

// Largest coefficient difference over all sigma-degrees, exponents up to `upto`.
double max_abs_diff(const OreOperator &P, const OreOperator &Q, int upto);

inline OreOperator operator+(const OreOperator &P, const OreOperator &Q)
{
    return ore_add(P, Q);
}
inline OreOperator operator-(const OreOperator &P, const OreOperator &Q)
{
    return ore_sub(P, Q);
}
inline OreOperator operator*(const OreOperator &P, const OreOperator &Q)
{
    return ore_mul(P, Q);
}

} // namespace qdiff

#endif
