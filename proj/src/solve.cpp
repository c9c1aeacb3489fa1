#include <qdiff/error.hpp>
#include <qdiff/index.hpp>
#include <qdiff/solve.hpp>

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <optional>

namespace qdiff
{

namespace
{

LaurentSeries drop_constant(const LaurentSeries &a)
{
    if (a.is_zero() || a.v0() > 0 || a.known_to() < 0) {
        return a;
    }
    std::vector<cplx> c = a.coeffs();
    c[static_cast<std::size_t>(-a.v0())] = 0.0;
    return LaurentSeries::from_coeffs(a.context(), a.v0(), std::move(c), a.known_to());
}

bool finite(cplx v)
{
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// (C z^m sigma - 1) F = H on Laurent series.
LaurentSeries scalar_solve(const QContext &ctxr, const ContextPtr &ctx, cplx C, int m, const LaurentSeries &H)
{
    if (m == 0) {
        if (H.is_zero()) {
            return H;
        }
        std::vector<cplx> f = H.coeffs();
        for (std::size_t k = 0; k < f.size(); ++k) {
            const long long e = H.v0() + static_cast<long long>(k);
            f[k] /= C * q_pow(ctxr, e) - 1.0;
        }
        return LaurentSeries::from_coeffs(ctx, H.v0(), std::move(f), H.known_to());
    }
    const int M = std::abs(m);
    const cplx Q = q_pow(ctxr, M);
    const int v = H.is_zero() ? H.known_to() + 1 : H.v0();
    const int kt = H.known_to();
    auto floordiv = [](long long a, long long b) {
        long long r = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) {
            --r;
        }
        return r;
    };
    std::vector<cplx> out;
    const long long lo = static_cast<long long>(v) - M;
    long long known = LLONG_MAX;
    std::vector<std::pair<long long, cplx>> entries;
    for (int i = 0; i < M; ++i) {
        const cplx Cp = C * q_pow(ctxr, i);
        const long long kmin = floordiv(v - i + M - 1, M);
        const long long kmax = floordiv(kt - i, M);
        long long kf = kmax;
        if (m > 0) {
            // F_k = C' Q^{k-1} F_{k-1} - H_k
            cplx prev = 0.0;
            for (long long k = kmin; k <= kmax; ++k) {
                const cplx h = H.coeff_or_zero(static_cast<int>(i + M * k));
                const cplx f = Cp * ipow(Q, k - 1) * prev - h;
                if (!finite(f)) {
                    kf = k - 1;
                    break;
                }
                entries.emplace_back(i + M * k, f);
                prev = f;
            }
        } else {
            // F_{k+1} = (H_k + F_k) / (C' Q^{k+1}),  F_k = 0 for k <= kmin
            cplx prev = 0.0;
            kf = kmax + 1;
            for (long long k = kmin; k <= kmax; ++k) {
                const cplx h = H.coeff_or_zero(static_cast<int>(i + M * k));
                const cplx f = (h + prev) / (Cp * ipow(Q, k + 1));
                if (!finite(f)) {
                    kf = k;
                    break;
                }
                entries.emplace_back(i + M * (k + 1), f);
                prev = f;
            }
        }
        known = std::min(known, static_cast<long long>(i) + static_cast<long long>(M) * (kf + 1) - 1);
    }
    const int kto = static_cast<int>(std::max(known, lo));
    if (kto < lo) {
        return LaurentSeries::zero(ctx, kto);
    }
    out.assign(static_cast<std::size_t>(kto - lo + 1), cplx(0.0));
    for (const auto &[e, f] : entries) {
        if (e >= lo && e <= kto) {
            out[static_cast<std::size_t>(e - lo)] = f;
        }
    }
    return LaurentSeries::from_coeffs(ctx, static_cast<int>(lo), std::move(out), kto);
}

SymbolicSolution solve_first_order_mode(cplx d, int nu, const SymbolicSolution &target, Mode mode)
{
    const ContextPtr &ctx = target.context();
    SymbolicSolution out(ctx);
    for (const SymbolicTerm &t : target.terms()) {
        const cplx C = t.c * d;
        const int m = nu - t.mu;
        if (mode == Mode::Convergent && m > 0) {
            const LaurentSeries top = scale(t.poly.comps.back(), 1.0 / C);
            throw ObstructionError("no convergent solution guaranteed when nu > mu",
                                   borel_obstruction(top, m, 1.0 / C));
        }
        out.add_term(t.c, t.mu, solve_phi(*ctx, C, m, t.poly));
    }
    return out;
}

SymbolicSolution solve_factor(const FirstOrderFactor &f, const SymbolicSolution &h, Mode mode)
{
    // (z^mu sigma - c) u^{-1} g = h  <=>  (c^{-1} z^mu sigma - 1) y = h / c,  g = u y
    const SymbolicSolution y = solve_first_order_mode(1.0 / f.c, f.mu, sym_scale(h, 1.0 / f.c), mode);
    return sym_mul_series(f.u, y);
}

// For a simple non-resonant exponent of the whole operator the solution is e_c Theta^{-mu} u with u
// the unit solution of the gauged operator.  Going through the chain instead multiplies by the
// units of the factors on the right, which can be huge while the product stays small.
std::optional<SymbolicSolution> direct_solution(const OreOperator &R, const FirstOrderFactor &f)
{
    const QContext &ctx = *R.context();
    const std::vector<ExponentDatum> exps = exponents(R, f.mu);
    const auto it = std::find_if(exps.begin(), exps.end(), [&](const ExponentDatum &e) {
        return std::abs(e.c - f.c) <= std::max(ctx.tol_match, 1e-6) * std::abs(f.c);
    });
    if (it == exps.end() || it->multiplicity != 1 || !is_non_resonant(ctx, f.c, exps)) {
        return std::nullopt;
    }
    try {
        const LaurentSeries u = unit_solution(gauge_monomial(R, f.c, -f.mu));
        return SymbolicSolution::term(R.context(), f.c, f.mu, LogPolynomial::constant(u));
    } catch (const Error &) {
        return std::nullopt;
    }
}

std::vector<SymbolicSolution> solve_chain(const Factorization &F, std::size_t first, Mode mode)
{
    const ContextPtr &ctx = F.ramified_input.context();
    std::vector<SymbolicSolution> sols;
    const std::size_t n = F.factors.size();
    for (std::size_t jj = n; jj-- > first;) {
        const FirstOrderFactor &fj = F.factors[jj];
        SymbolicSolution h = SymbolicSolution::term(ctx, fj.c, fj.mu, LogPolynomial::constant(fj.u));
        for (std::size_t k = jj + 1; k < n; ++k) {
            h = solve_factor(F.factors[k], h, mode);
        }
        if (jj + 1 < n) {
            if (std::optional<SymbolicSolution> d = direct_solution(F.ramified_input, fj)) {
                h = std::move(*d);
            }
        }
        sols.push_back(h);
    }
    return sols;
}

} // namespace

LogPolynomial q_integrate(const LogPolynomial &g0)
{
    const LogPolynomial g = trim(g0);
    if (g.is_zero()) {
        return g;
    }
    const ContextPtr &ctx = g.comps.front().context();
    const int k = g.degree();
    std::vector<LaurentSeries> f(static_cast<std::size_t>(k + 2));
    auto pi0_flushed = [&](const LaurentSeries &s) {
        const cplx c = pi0(s);
        return std::abs(c) <= ctx->tol_zero * std::max(1.0, s.max_abs()) * 1e-3 ? cplx(0.0) : c;
    };
    const LaurentSeries &gk = g.comps[static_cast<std::size_t>(k)];
    f[static_cast<std::size_t>(k + 1)] = LaurentSeries::from_coeffs(ctx, 0, {pi0_flushed(gk)}, std::max(gk.known_to(), 0));
    for (int i = k; i >= 0; --i) {
        const LaurentSeries &gi = g.comps[static_cast<std::size_t>(i)];
        const LaurentSeries r = drop_constant(sub(gi, sigma_pow(f[static_cast<std::size_t>(i + 1)], 1)));
        LaurentSeries fi = i_q(r);
        if (i > 0) {
            const cplx c = pi0_flushed(g.comps[static_cast<std::size_t>(i - 1)]);
            fi = add(fi, LaurentSeries::from_coeffs(ctx, 0, {c}, std::max(fi.known_to(), 0)));
        }
        f[static_cast<std::size_t>(i)] = fi;
    }
    LogPolynomial out;
    out.comps = f;
    return trim(out);
}

LogPolynomial solve_phi(const QContext &ctxr, cplx C, int m, const LogPolynomial &G0)
{
    const LogPolynomial G = trim(G0);
    if (G.is_zero()) {
        return G;
    }
    const ContextPtr &ctx = G.comps.front().context();
    int l = 0;
    if (m == 0 && same_q_class(ctxr, C, 1.0, &l)) {
        // q^l sigma (z^{-l} H) = z^{-l} sigma H
        return log_shift(q_integrate(log_shift(G, l)), -l);
    }
    const int top = G.degree();
    std::vector<LaurentSeries> F(static_cast<std::size_t>(top + 1));
    for (int i = top; i >= 0; --i) {
        LaurentSeries H = G.comps[static_cast<std::size_t>(i)];
        if (i < top) {
            H = sub(H, shift(scale(sigma_pow(F[static_cast<std::size_t>(i + 1)], 1), C), m));
        }
        F[static_cast<std::size_t>(i)] = scalar_solve(ctxr, ctx, C, m, H);
    }
    LogPolynomial out;
    out.comps = F;
    return trim(out);
}

SymbolicSolution solve_first_order(cplx d, int nu, const SymbolicSolution &target)
{
    return solve_first_order_mode(d, nu, target, target.context()->mode);
}

SolutionBasis solve_all_formal(const OreOperator &P)
{
    SolutionBasis out;
    out.factorization = full_factorization(P);
    out.solutions = solve_chain(out.factorization, 0, Mode::Formal);
    return out;
}

std::vector<SymbolicSolution> solve_all_formal_list(const OreOperator &P)
{
    return solve_all_formal(P).solutions;
}

SolutionBasis adams_solutions(const OreOperator &P)
{
    SolutionBasis out;
    out.factorization = full_factorization(P);
    const std::vector<FirstOrderFactor> &fs = out.factorization.factors;
    if (fs.empty()) {
        return out;
    }
    int last = fs.front().mu;
    for (const FirstOrderFactor &f : fs) {
        last = std::max(last, f.mu);
    }
    std::size_t first = fs.size();
    while (first > 0 && fs[first - 1].mu == last) {
        --first;
    }
    out.solutions = solve_chain(out.factorization, first, P.context()->mode);
    return out;
}

SymbolicSolution q_wronskian(const std::vector<SymbolicSolution> &fs)
{
    if (fs.empty()) {
        throw Error(ErrorKind::InvalidArgument, "Wronskian of an empty family");
    }
    const std::size_t n = fs.size();
    const ContextPtr &ctx = fs.front().context();
    std::vector<std::vector<SymbolicSolution>> M(n, std::vector<SymbolicSolution>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            M[i][j] = sym_sigma_pow(fs[j], static_cast<long long>(i));
        }
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    SymbolicSolution det(ctx);
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (perm[a] > perm[b]) {
                    ++inversions;
                }
            }
        }
        SymbolicSolution prod = M[0][perm[0]];
        for (std::size_t i = 1; i < n; ++i) {
            prod = sym_mul(prod, M[i][perm[i]]);
        }
        det = sym_add(det, inversions % 2 == 0 ? prod : sym_scale(prod, -1.0));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

std::vector<std::pair<cplx, cplx>> continue_meromorphic(const OreOperator &P,
                                                        const std::vector<std::pair<cplx, cplx>> &samples,
                                                        const std::vector<cplx> &targets)
{
    if (P.is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "continuation through the zero operator");
    }
    const QContext &ctx = *P.context();
    const int beta = P.max_deg();
    std::vector<std::pair<cplx, cplx>> pool = samples;
    auto lookup = [&](cplx z) -> const cplx * {
        for (const auto &[p, v] : pool) {
            if (std::abs(p - z) <= 1e-10 * std::abs(z)) {
                return &v;
            }
        }
        return nullptr;
    };
    std::vector<cplx> order = targets;
    std::stable_sort(order.begin(), order.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    std::vector<std::pair<cplx, cplx>> out;
    for (const cplx z : order) {
        const cplx w = z * q_pow(ctx, -beta);
        const cplx lead = P.terms().rbegin()->second.eval(w);
        double scale = std::abs(lead);
        cplx s = 0.0;
        for (const auto &[i, a] : P.terms()) {
            if (i == beta) {
                continue;
            }
            const cplx *fv = lookup(w * q_pow(ctx, i));
            if (fv == nullptr) {
                throw Error(ErrorKind::InsufficientData, "samples do not cover the points needed for continuation");
            }
            const cplx ai = a.eval(w);
            scale = std::max(scale, std::abs(ai));
            s += ai * *fv;
        }
        if (std::abs(lead) <= ctx.tol_zero * scale) {
            throw Error(ErrorKind::DivisionNearZero, "leading coefficient vanishes at the continuation point");
        }
        const cplx val = -s / lead;
        pool.emplace_back(z, val);
        out.emplace_back(z, val);
    }
    return out;
}

std::vector<std::pair<cplx, cplx>> continue_meromorphic(const OreOperator &P,
                                                        const std::vector<std::pair<cplx, cplx>> &samples)
{
    std::vector<cplx> targets;
    for (const auto &[z, v] : samples) {
        targets.push_back(z * P.context()->q);
    }
    return continue_meromorphic(P, samples, targets);
}

} // namespace qdiff
