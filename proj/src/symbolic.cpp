#include <qdiff/error.hpp>
#include <qdiff/special.hpp>
#include <qdiff/symbolic.hpp>

#include <algorithm>
#include <climits>
#include <cmath>

namespace qdiff
{

namespace
{

double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

LaurentSeries zero_like(const LaurentSeries &a)
{
    return LaurentSeries::zero(a.context(), a.known_to());
}

// Partial sum with a check that the last known terms are negligible.
cplx eval_checked(const LaurentSeries &f, cplx z, double tol)
{
    if (f.is_zero()) {
        return 0.0;
    }
    const std::vector<cplx> &c = f.coeffs();
    const double r = std::abs(z);
    double total = 0.0;
    double tail = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double t = std::abs(c[k]) * std::pow(r, f.v0() + static_cast<int>(k));
        total += t;
        if (k + 3 >= c.size()) {
            tail = std::max(tail, t);
        }
    }
    if (!std::isfinite(total) || tail > tol * total) {
        throw Error(ErrorKind::TruncationDominates, "series tail not negligible at this |z|");
    }
    return f.eval(z);
}

} // namespace

double binomial(long long i, int j)
{
    if (j < 0) {
        return 0.0;
    }
    double r = 1.0;
    for (int t = 0; t < j; ++t) {
        r *= static_cast<double>(i - t) / static_cast<double>(t + 1);
    }
    return r;
}

LogPolynomial LogPolynomial::constant(const LaurentSeries &a)
{
    LogPolynomial f;
    if (!a.is_zero()) {
        f.comps.push_back(a);
    }
    return f;
}

LaurentSeries LogPolynomial::comp(int k, const ContextPtr &ctx) const
{
    if (k >= 0 && k < static_cast<int>(comps.size())) {
        return comps[static_cast<std::size_t>(k)];
    }
    return LaurentSeries::zero(ctx, known_to() == INT_MAX ? ctx->trunc_order : known_to());
}

int LogPolynomial::known_to() const
{
    int kt = INT_MAX;
    for (const LaurentSeries &c : comps) {
        kt = std::min(kt, c.known_to());
    }
    return kt;
}

double LogPolynomial::max_abs() const
{
    double m = 0.0;
    for (const LaurentSeries &c : comps) {
        m = std::max(m, c.max_abs());
    }
    return m;
}

LogPolynomial trim(LogPolynomial f)
{
    while (!f.comps.empty() && f.comps.back().is_zero()) {
        f.comps.pop_back();
    }
    return f;
}

LogPolynomial log_add(const LogPolynomial &a, const LogPolynomial &b)
{
    LogPolynomial out;
    const std::size_t n = std::max(a.comps.size(), b.comps.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (k >= a.comps.size()) {
            out.comps.push_back(b.comps[k]);
        } else if (k >= b.comps.size()) {
            out.comps.push_back(a.comps[k]);
        } else {
            out.comps.push_back(add(a.comps[k], b.comps[k]));
        }
    }
    return trim(out);
}

LogPolynomial log_scale(const LogPolynomial &a, cplx c)
{
    LogPolynomial out;
    for (const LaurentSeries &s : a.comps) {
        out.comps.push_back(scale(s, c));
    }
    return trim(out);
}

LogPolynomial log_mul_series(const LaurentSeries &u, const LogPolynomial &a)
{
    LogPolynomial out;
    for (const LaurentSeries &s : a.comps) {
        out.comps.push_back(mul(u, s));
    }
    return trim(out);
}

LogPolynomial log_shift(const LogPolynomial &a, int k)
{
    LogPolynomial out;
    for (const LaurentSeries &s : a.comps) {
        out.comps.push_back(shift(s, k));
    }
    return out;
}

LogPolynomial log_sigma_pow(const LogPolynomial &a, long long i)
{
    if (i == 0 || a.is_zero()) {
        return a;
    }
    std::vector<LaurentSeries> sig;
    for (const LaurentSeries &s : a.comps) {
        sig.push_back(sigma_pow(s, i));
    }
    LogPolynomial out;
    const int n = a.degree();
    for (int m = 0; m <= n; ++m) {
        LaurentSeries acc = zero_like(sig[static_cast<std::size_t>(m)]);
        for (int k = m; k <= n; ++k) {
            const double b = binomial(i, k - m);
            if (b != 0.0) {
                acc = add(acc, scale(sig[static_cast<std::size_t>(k)], b));
            }
        }
        out.comps.push_back(acc);
    }
    return trim(out);
}

LogPolynomial log_mul(const LogPolynomial &a, const LogPolynomial &b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    const int da = a.degree();
    const int db = b.degree();
    std::vector<LaurentSeries> acc(static_cast<std::size_t>(da + db + 1));
    std::vector<bool> set(acc.size(), false);
    for (int m = 0; m <= da; ++m) {
        for (int n = 0; n <= db; ++n) {
            const LaurentSeries p = mul(a.comps[static_cast<std::size_t>(m)], b.comps[static_cast<std::size_t>(n)]);
            for (int k = 0; k <= std::min(m, n); ++k) {
                const double w = factorial(m + n - k) / (factorial(k) * factorial(m - k) * factorial(n - k));
                const std::size_t idx = static_cast<std::size_t>(m + n - k);
                const LaurentSeries t = scale(p, w);
                acc[idx] = set[idx] ? add(acc[idx], t) : t;
                set[idx] = true;
            }
        }
    }
    LogPolynomial out;
    out.comps = acc;
    return trim(out);
}

LogPolynomial apply_log(const OreOperator &P, const LogPolynomial &F)
{
    LogPolynomial out;
    for (const auto &[i, b] : P.terms()) {
        out = log_add(out, log_mul_series(b, log_sigma_pow(F, i)));
    }
    return out;
}

double max_abs_diff(const LogPolynomial &a, const LogPolynomial &b, int upto)
{
    double m = 0.0;
    const std::size_t n = std::max(a.comps.size(), b.comps.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (k >= a.comps.size()) {
            m = std::max(m, max_abs_diff(zero_like(b.comps[k]), b.comps[k], upto));
        } else if (k >= b.comps.size()) {
            m = std::max(m, max_abs_diff(a.comps[k], zero_like(a.comps[k]), upto));
        } else {
            m = std::max(m, max_abs_diff(a.comps[k], b.comps[k], upto));
        }
    }
    return m;
}

SymbolicSolution SymbolicSolution::term(ContextPtr ctx, cplx c, int mu, const LogPolynomial &poly)
{
    SymbolicSolution s(std::move(ctx));
    s.add_term(c, mu, poly);
    return s;
}

SymbolicSolution SymbolicSolution::series(const LaurentSeries &f)
{
    return term(f.context(), 1.0, 0, LogPolynomial::constant(f));
}

void SymbolicSolution::add_term(cplx c, int mu, const LogPolynomial &poly)
{
    const LogPolynomial p0 = trim(poly);
    if (p0.is_zero()) {
        return;
    }
    const QDecomposition dec = decompose(*m_ctx, c);
    const LogPolynomial p = dec.eps == 0 ? p0 : log_shift(p0, dec.eps);
    for (auto it = m_terms.begin(); it != m_terms.end(); ++it) {
        if (it->mu == mu && std::abs(it->c - dec.cbar) <= m_ctx->tol_match * std::abs(dec.cbar)) {
            it->poly = log_add(it->poly, p);
            if (it->poly.is_zero()) {
                m_terms.erase(it);
            }
            return;
        }
    }
    m_terms.push_back({dec.cbar, mu, p});
}

int SymbolicSolution::known_to() const
{
    int kt = INT_MAX;
    for (const SymbolicTerm &t : m_terms) {
        kt = std::min(kt, t.poly.known_to());
    }
    return kt;
}

double SymbolicSolution::max_abs() const
{
    double m = 0.0;
    for (const SymbolicTerm &t : m_terms) {
        m = std::max(m, t.poly.max_abs());
    }
    return m;
}

int SymbolicSolution::log_degree() const
{
    int d = -1;
    for (const SymbolicTerm &t : m_terms) {
        d = std::max(d, t.poly.degree());
    }
    return d;
}

SymbolicSolution sym_add(const SymbolicSolution &a, const SymbolicSolution &b)
{
    SymbolicSolution out = a.context() ? a : SymbolicSolution(b.context());
    for (const SymbolicTerm &t : b.terms()) {
        out.add_term(t.c, t.mu, t.poly);
    }
    return out;
}

SymbolicSolution sym_scale(const SymbolicSolution &a, cplx c)
{
    SymbolicSolution out(a.context());
    for (const SymbolicTerm &t : a.terms()) {
        out.add_term(t.c, t.mu, log_scale(t.poly, c));
    }
    return out;
}

SymbolicSolution sym_mul_series(const LaurentSeries &u, const SymbolicSolution &a)
{
    SymbolicSolution out(a.context());
    for (const SymbolicTerm &t : a.terms()) {
        out.add_term(t.c, t.mu, log_mul_series(u, t.poly));
    }
    return out;
}

SymbolicSolution sym_mul(const SymbolicSolution &a, const SymbolicSolution &b)
{
    SymbolicSolution out(a.context());
    for (const SymbolicTerm &s : a.terms()) {
        for (const SymbolicTerm &t : b.terms()) {
            out.add_term(s.c * t.c, s.mu + t.mu, log_mul(s.poly, t.poly));
        }
    }
    return out;
}

SymbolicSolution sym_sigma_pow(const SymbolicSolution &a, long long i)
{
    SymbolicSolution out(a.context());
    const QContext &ctx = *a.context();
    for (const SymbolicTerm &t : a.terms()) {
        // sigma^i (e_c Theta^{-mu}) = c^i q^{-mu i(i-1)/2} z^{-mu i} e_c Theta^{-mu}
        const cplx f = ipow(t.c, i) * q_pow(ctx, -static_cast<long long>(t.mu) * (i * (i - 1) / 2));
        const LogPolynomial p = log_shift(log_scale(log_sigma_pow(t.poly, i), f), -t.mu * static_cast<int>(i));
        out.add_term(t.c, t.mu, p);
    }
    return out;
}

double sym_max_abs(const SymbolicSolution &a, int upto)
{
    double m = 0.0;
    for (const SymbolicTerm &t : a.terms()) {
        for (const LaurentSeries &s : t.poly.comps) {
            for (int k = s.v0(); k <= std::min(upto, s.known_to()); ++k) {
                m = std::max(m, std::abs(s.coeff_or_zero(k)));
            }
        }
    }
    return m;
}

SymbolicSolution apply_symbolic(const OreOperator &P, const SymbolicSolution &s)
{
    SymbolicSolution out(s.context());
    for (const SymbolicTerm &t : s.terms()) {
        const OreOperator G = gauge_monomial(P, t.c, -t.mu);
        out.add_term(t.c, t.mu, apply_log(G, t.poly));
    }
    return out;
}

cplx evaluate(const SymbolicSolution &s, cplx z)
{
    if (z == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "evaluation at z = 0");
    }
    const QContext &ctx = *s.context();
    const double tol = ctx.tol_match;
    bool need_log = false;
    bool need_theta = false;
    for (const SymbolicTerm &t : s.terms()) {
        need_log = need_log || t.poly.degree() > 0;
        need_theta = need_theta || t.mu != 0;
    }
    const cplx lq = need_log ? l_q_eval(ctx, z) : cplx(0.0);
    cplx th = 1.0;
    if (need_theta) {
        if (spiral_distance(ctx, -1.0, z) <= 1e-3 * std::abs(z)) {
            throw Error(ErrorKind::NearPole, "evaluation point too close to the zeros of Theta");
        }
        th = big_theta(ctx, z);
    }
    cplx total = 0.0;
    for (const SymbolicTerm &t : s.terms()) {
        cplx poly = 0.0;
        cplx binom = 1.0;
        for (int k = 0; k <= t.poly.degree(); ++k) {
            if (k > 0) {
                binom *= (lq - static_cast<double>(k - 1)) / static_cast<double>(k);
            }
            poly += eval_checked(t.poly.comps[static_cast<std::size_t>(k)], z, tol) * binom;
        }
        const cplx e = t.c == 1.0 ? cplx(1.0) : e_qc_eval(ctx, t.c, z);
        total += e * ipow(th, -t.mu) * poly;
    }
    return total;
}

} // namespace qdiff
