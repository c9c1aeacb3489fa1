#ifndef QDIFF_TESTS_SUPPORT_HPP
#define QDIFF_TESTS_SUPPORT_HPP

// Random generators and small independent oracles shared by the test binaries.

#include <qdiff/ore.hpp>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace qdiff::testing
{

class Rng
{
public:
    explicit Rng(std::uint64_t seed) : m_gen(seed) {}

    double uniform(double a, double b)
    {
        return std::uniform_real_distribution<double>(a, b)(m_gen);
    }
    int integer(int a, int b)
    {
        return std::uniform_int_distribution<int>(a, b)(m_gen);
    }
    // Modulus uniform in [rmin, rmax], argument uniform.
    cplx complex(double rmin = 0.5, double rmax = 2.0)
    {
        return std::polar(uniform(rmin, rmax), uniform(-std::numbers::pi, std::numbers::pi));
    }
    cplx gaussian()
    {
        std::normal_distribution<double> n(0.0, 1.0);
        const double re = n(m_gen);
        return {re, n(m_gen)};
    }

private:
    std::mt19937_64 m_gen;
};

// Exact polynomial sum_{k<=deg} c_k z^{v0+k} with a nonzero leading term.
inline LaurentSeries random_poly(Rng &rng, const ContextPtr &ctx, int v0, int deg)
{
    std::vector<cplx> c(static_cast<std::size_t>(deg + 1));
    for (cplx &x : c) {
        x = rng.complex();
    }
    return LaurentSeries::from_coeffs(ctx, v0, std::move(c));
}

// Power series with coefficients of size ~ rho^-k (radius rho), known to the truncation order.
inline LaurentSeries random_convergent(Rng &rng, const ContextPtr &ctx, int v0 = 0, double rho = 1.0)
{
    std::vector<cplx> c;
    for (int k = v0; k <= ctx->trunc_order; ++k) {
        c.push_back(rng.complex(0.5, 1.5) * std::pow(rho, -(k - v0)));
    }
    return LaurentSeries::from_coeffs(ctx, v0, std::move(c), ctx->trunc_order);
}

// Operator of sigma-degrees 0..order with polynomial coefficients z^{v_i} p_i(z), v_i in [0, maxval].
inline OreOperator random_operator(Rng &rng, const ContextPtr &ctx, int order, int maxval, int deg = 2)
{
    std::map<int, LaurentSeries> t;
    for (int i = 0; i <= order; ++i) {
        const bool ends = i == 0 || i == order;
        if (!ends && rng.uniform(0.0, 1.0) < 0.25) {
            continue;
        }
        t[i] = random_poly(rng, ctx, rng.integer(0, maxval), deg);
    }
    return OreOperator::from_terms(ctx, t);
}

// Dense coefficients (full power series of radius ~1) on the extremal degrees.
inline OreOperator random_dense_operator(Rng &rng, const ContextPtr &ctx, int order, int maxval)
{
    std::map<int, LaurentSeries> t;
    for (int i = 0; i <= order; ++i) {
        t[i] = random_convergent(rng, ctx, rng.integer(0, maxval), 1.0);
    }
    return OreOperator::from_terms(ctx, t);
}

inline OreOperator poly_operator(const ContextPtr &ctx, const std::map<int, std::map<int, cplx>> &terms)
{
    std::map<int, LaurentSeries> t;
    for (const auto &[i, cs] : terms) {
        const int lo = cs.begin()->first;
        std::vector<cplx> c(static_cast<std::size_t>(cs.rbegin()->first - lo + 1), cplx(0.0));
        for (const auto &[e, v] : cs) {
            c[static_cast<std::size_t>(e - lo)] = v;
        }
        t[i] = LaurentSeries::from_coeffs(ctx, lo, std::move(c));
    }
    return OreOperator::from_terms(ctx, t);
}

inline double rel_err(cplx a, cplx b)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Oracle: direct coefficient formula sum_i a_i(z) f(q^i z) evaluated termwise (no ore_mul).
inline std::vector<cplx> apply_direct(const OreOperator &P, const LaurentSeries &f, int lo, int hi)
{
    const QContext &ctx = *P.context();
    std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1), cplx(0.0));
    for (const auto &[i, a] : P.terms()) {
        for (std::size_t j = 0; j < a.coeffs().size(); ++j) {
            for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
                const int ef = f.v0() + static_cast<int>(k);
                const int e = a.v0() + static_cast<int>(j) + ef;
                if (e < lo || e > hi) {
                    continue;
                }
                out[static_cast<std::size_t>(e - lo)] += a.coeffs()[j] * std::pow(ctx.q, static_cast<double>(i) * ef) * f.coeffs()[k];
            }
        }
    }
    return out;
}

} // namespace qdiff::testing

#endif
