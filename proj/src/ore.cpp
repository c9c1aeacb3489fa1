#include <qdiff/error.hpp>
#include <qdiff/ore.hpp>

#include <algorithm>
#include <cmath>

namespace qdiff
{

namespace
{

void put(std::map<int, LaurentSeries> &terms, int i, const LaurentSeries &a)
{
    if (a.is_zero()) {
        terms.erase(i);
    } else {
        terms[i] = a;
    }
}

void accumulate(std::map<int, LaurentSeries> &terms, int i, const LaurentSeries &a)
{
    auto it = terms.find(i);
    if (it == terms.end()) {
        put(terms, i, a);
    } else {
        put(terms, i, add(it->second, a));
    }
}

} // namespace

OreOperator::OreOperator(ContextPtr ctx) : m_ctx(std::move(ctx)) {}

OreOperator OreOperator::from_terms(ContextPtr ctx, const std::map<int, LaurentSeries> &terms)
{
    OreOperator P(std::move(ctx));
    for (const auto &[i, a] : terms) {
        put(P.m_terms, i, a);
    }
    return P;
}

OreOperator OreOperator::scalar(const LaurentSeries &a)
{
    OreOperator P(a.context());
    put(P.m_terms, 0, a);
    return P;
}

OreOperator OreOperator::sigma(ContextPtr ctx, int k, cplx c)
{
    OreOperator P(ctx);
    put(P.m_terms, k, LaurentSeries::constant(ctx, c));
    return P;
}

int OreOperator::min_deg() const
{
    if (is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "degree of the zero operator");
    }
    return m_terms.begin()->first;
}

int OreOperator::max_deg() const
{
    if (is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "degree of the zero operator");
    }
    return m_terms.rbegin()->first;
}

int OreOperator::deg_abs() const
{
    return max_deg() - min_deg();
}

LaurentSeries OreOperator::coeff(int i) const
{
    auto it = m_terms.find(i);
    if (it == m_terms.end()) {
        return LaurentSeries::zero(m_ctx, known_to());
    }
    return it->second;
}

int OreOperator::v0() const
{
    if (is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "valuation of the zero operator");
    }
    int v = m_terms.begin()->second.v0();
    for (const auto &[i, a] : m_terms) {
        v = std::min(v, a.v0());
    }
    return v;
}

int OreOperator::known_to() const
{
    int kt = m_ctx->trunc_order;
    for (const auto &[i, a] : m_terms) {
        kt = std::min(kt, a.known_to());
    }
    return kt;
}

double OreOperator::max_abs() const
{
    double m = 0.0;
    for (const auto &[i, a] : m_terms) {
        m = std::max(m, a.max_abs());
    }
    return m;
}

OreOperator OreOperator::truncated(int known_to) const
{
    OreOperator P(m_ctx);
    for (const auto &[i, a] : m_terms) {
        put(P.m_terms, i, a.truncated(known_to));
    }
    return P;
}

OreOperator ore_add(const OreOperator &P, const OreOperator &Q)
{
    std::map<int, LaurentSeries> terms = P.terms();
    for (const auto &[i, a] : Q.terms()) {
        accumulate(terms, i, a);
    }
    return OreOperator::from_terms(P.context() ? P.context() : Q.context(), terms);
}

OreOperator ore_sub(const OreOperator &P, const OreOperator &Q)
{
    return ore_add(P, ore_scale(Q, -1.0));
}

OreOperator ore_scale(const OreOperator &P, cplx c)
{
    std::map<int, LaurentSeries> terms;
    for (const auto &[i, a] : P.terms()) {
        put(terms, i, scale(a, c));
    }
    return OreOperator::from_terms(P.context(), terms);
}

OreOperator ore_mul(const OreOperator &P, const OreOperator &Q)
{
    std::map<int, LaurentSeries> terms;
    for (const auto &[i, a] : P.terms()) {
        for (const auto &[j, b] : Q.terms()) {
            accumulate(terms, i + j, mul(a, sigma_pow(b, i)));
        }
    }
    return OreOperator::from_terms(P.context(), terms);
}

OreOperator ore_lmul(const LaurentSeries &a, const OreOperator &P)
{
    std::map<int, LaurentSeries> terms;
    for (const auto &[i, b] : P.terms()) {
        put(terms, i, mul(a, b));
    }
    return OreOperator::from_terms(P.context(), terms);
}

OreOperator ore_rmul(const OreOperator &P, const LaurentSeries &a)
{
    std::map<int, LaurentSeries> terms;
    for (const auto &[i, b] : P.terms()) {
        put(terms, i, mul(b, sigma_pow(a, i)));
    }
    return OreOperator::from_terms(P.context(), terms);
}

OreOperator ore_shift(const OreOperator &P, int k)
{
    std::map<int, LaurentSeries> terms;
    for (const auto &[i, b] : P.terms()) {
        put(terms, i, shift(b, k));
    }
    return OreOperator::from_terms(P.context(), terms);
}

LaurentSeries apply(const OreOperator &P, const LaurentSeries &f)
{
    LaurentSeries out = LaurentSeries::zero(f.context(), f.known_to() + (P.is_zero() ? 0 : P.v0()));
    bool first = true;
    for (const auto &[i, a] : P.terms()) {
        LaurentSeries t = mul(a, sigma_pow(f, i));
        out = first ? t : add(out, t);
        first = false;
    }
    return out;
}

Division right_divide(const OreOperator &A, const OreOperator &B)
{
    if (B.is_zero()) {
        throw Error(ErrorKind::ZeroDivisor, "division by the zero operator");
    }
    const ContextPtr &ctx = B.context();
    if (A.is_zero()) {
        return {OreOperator(ctx), OreOperator(ctx)};
    }
    const int b1 = B.max_deg();
    const int d = B.deg_abs();
    const LaurentSeries &lead = B.terms().rbegin()->second;
    const int a0 = A.min_deg();
    std::map<int, LaurentSeries> rem = A.terms();
    std::map<int, LaurentSeries> quot;
    for (int k = A.max_deg(); k >= a0 + d; --k) {
        auto it = rem.find(k);
        if (it == rem.end()) {
            continue;
        }
        const int s = k - b1;
        const LaurentSeries t = mul(it->second, invert(sigma_pow(lead, s)));
        put(quot, s, t);
        for (const auto &[j, bj] : B.terms()) {
            if (j == b1) {
                continue;
            }
            accumulate(rem, s + j, neg(mul(t, sigma_pow(bj, s))));
        }
        rem.erase(k);
    }
    return {OreOperator::from_terms(ctx, quot), OreOperator::from_terms(ctx, rem)};
}

OreOperator gauge_monomial(const OreOperator &P, cplx c, int k)
{
    if (c == 0.0) {
        throw Error(ErrorKind::ZeroSeries, "gauge by the zero series");
    }
    const QContext &ctx = *P.context();
    std::map<int, LaurentSeries> terms;
    for (const auto &[i, a] : P.terms()) {
        const long long ii = i;
        const cplx f = ipow(c, i) * q_pow(ctx, static_cast<long long>(k) * (ii * (ii - 1) / 2));
        put(terms, i, shift(scale(a, f), k * i));
    }
    return OreOperator::from_terms(P.context(), terms);
}

OreOperator gauge(const OreOperator &P, const LaurentSeries &alpha)
{
    if (alpha.is_zero()) {
        throw Error(ErrorKind::ZeroSeries, "gauge by the zero series");
    }
    if (alpha.coeffs().size() == 1 && alpha.known_to() >= alpha.context()->trunc_order) {
        return gauge_monomial(P, alpha.leading(), alpha.v0());
    }
    if (P.is_zero()) {
        return P;
    }
    const ContextPtr &ctx = P.context();
    std::map<int, LaurentSeries> terms;
    LaurentSeries up = LaurentSeries::constant(ctx, 1.0);
    LaurentSeries down = up;
    int iu = 0;
    int id = 0;
    for (const auto &[i, a] : P.terms()) {
        if (i >= 0) {
            while (iu < i) {
                up = mul(up, sigma_pow(alpha, iu));
                ++iu;
            }
            put(terms, i, mul(a, up));
        }
    }
    for (auto it = P.terms().rbegin(); it != P.terms().rend(); ++it) {
        const int i = it->first;
        if (i < 0) {
            while (id > i) {
                --id;
                down = mul(down, invert(sigma_pow(alpha, id)));
            }
            put(terms, i, mul(it->second, down));
        }
    }
    return OreOperator::from_terms(ctx, terms);
}

UnitFactor unit_from_alpha(const LaurentSeries &alpha)
{
    if (alpha.is_zero()) {
        throw Error(ErrorKind::ZeroSeries, "unit of the zero series");
    }
    const ContextPtr &ctx = alpha.context();
    const cplx c = alpha.leading();
    const int mu = alpha.v0();
    const std::vector<cplx> &a = alpha.coeffs();
    const int rel = alpha.known_to() - mu;
    std::vector<cplx> beta(static_cast<std::size_t>(rel + 1), cplx(0.0));
    for (std::size_t j = 0; j < beta.size() && j < a.size(); ++j) {
        beta[j] = a[j] / c;
    }
    // sigma_q v = beta v:  (q^n - 1) v_n = sum_{j>=1} beta_j v_{n-j}
    std::vector<cplx> v(beta.size(), cplx(0.0));
    v[0] = 1.0;
    for (std::size_t n = 1; n < v.size(); ++n) {
        cplx s = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            s += beta[j] * v[n - j];
        }
        v[n] = s / (q_pow(*ctx, static_cast<long long>(n)) - 1.0);
    }
    return {c, mu, LaurentSeries::from_coeffs(ctx, 0, std::move(v), rel)};
}

double max_abs_diff(const OreOperator &P, const OreOperator &Q, int upto)
{
    double m = 0.0;
    const ContextPtr &ctx = P.context() ? P.context() : Q.context();
    for (const auto &[i, a] : P.terms()) {
        const LaurentSeries b = Q.terms().count(i) ? Q.terms().at(i) : LaurentSeries::zero(ctx, a.known_to());
        m = std::max(m, max_abs_diff(a, b, upto));
    }
    for (const auto &[i, b] : Q.terms()) {
        if (!P.terms().count(i)) {
            m = std::max(m, max_abs_diff(LaurentSeries::zero(ctx, b.known_to()), b, upto));
        }
    }
    return m;
}

} // namespace qdiff
