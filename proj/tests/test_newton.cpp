#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <qdiff/error.hpp>
#include <qdiff/newton.hpp>

#include <algorithm>

using namespace qdiff;
using namespace qdiff::testing;

namespace
{

OreOperator running(const ContextPtr &ctx)
{
    return poly_operator(ctx, {{2, {{1, ctx->q}}}, {1, {{0, -1.0}, {1, -1.0}}}, {0, {{0, 1.0}}}});
}

// Oracle: lower hull by brute force. A point (i, v_i) is a vertex iff no chord between two
// other points passes strictly below it; slopes come from consecutive vertices.
std::vector<Segment> brute_hull(const OreOperator &P)
{
    std::vector<std::pair<int, int>> pts;
    for (const auto &[i, a] : P.terms()) {
        pts.emplace_back(i, a.v0());
    }
    std::vector<std::pair<int, int>> verts;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        bool below = false;
        for (std::size_t a = 0; a < pts.size() && !below; ++a) {
            for (std::size_t b = 0; b < pts.size() && !below; ++b) {
                const auto [xa, ya] = pts[a];
                const auto [xb, yb] = pts[b];
                const auto [x, y] = pts[k];
                if (xa < x && x < xb) {
                    // chord value at x times (xb - xa)
                    const long long chord = static_cast<long long>(ya) * (xb - x) + static_cast<long long>(yb) * (x - xa);
                    below = chord <= static_cast<long long>(y) * (xb - xa);
                }
            }
        }
        if (!below) {
            verts.push_back(pts[k]);
        }
    }
    std::vector<Segment> segs;
    for (std::size_t k = 1; k < verts.size(); ++k) {
        segs.push_back({Rational(verts[k].second - verts[k - 1].second, verts[k].first - verts[k - 1].first),
                        verts[k].first - verts[k - 1].first});
    }
    return segs;
}

bool same_segments(const std::vector<Segment> &a, const std::vector<Segment> &b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].slope != b[k].slope || a[k].length != b[k].length) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("polygons of the basic examples")
{
    const ContextPtr ctx = make_context(2.0);
    const OreOperator S1 = poly_operator(ctx, {{1, {{0, 1.0}}}, {0, {{0, -1.0}}}});
    const NewtonPolygon p1 = newton_polygon(S1);
    REQUIRE(p1.segments.size() == 1);
    CHECK(p1.segments[0].slope == Rational(0));
    CHECK(p1.segments[0].length == 1);

    const NewtonPolygon p2 = newton_polygon(running(ctx));
    REQUIRE(p2.segments.size() == 2);
    CHECK(p2.segments[0].slope == Rational(0));
    CHECK(p2.segments[1].slope == Rational(1));
    CHECK(p2.length_of(Rational(1)) == 1);
    CHECK(p2.length_of(Rational(5)) == 0);
    CHECK_THROWS_AS(newton_polygon(OreOperator(ctx)), Error);
}

TEST_CASE("polygon against a brute-force hull")
{
    Rng rng(41);
    const ContextPtr ctx = make_context(2.0);
    for (int t = 0; t < 100; ++t) {
        const OreOperator P = random_operator(rng, ctx, rng.integer(1, 5), 4);
        const NewtonPolygon poly = newton_polygon(P);
        CHECK(same_segments(poly.segments, brute_hull(P)));
        int total = 0;
        for (std::size_t k = 0; k < poly.segments.size(); ++k) {
            total += poly.segments[k].length;
            if (k > 0) {
                CHECK(poly.segments[k - 1].slope < poly.segments[k].slope);
            }
        }
        CHECK(total == P.deg_abs());
    }
}

TEST_CASE("polygon additivity")
{
    Rng rng(42);
    const ContextPtr ctx = make_context(cplx(3.0, 0.1));
    for (int t = 0; t < 50; ++t) {
        const OreOperator P = random_operator(rng, ctx, rng.integer(1, 3), 2);
        const OreOperator Q = random_operator(rng, ctx, rng.integer(1, 3), 2);
        CHECK(newton_polygon(P * Q) == merge_polygons(newton_polygon(P), newton_polygon(Q)));
    }
}

TEST_CASE("ramification")
{
    const ContextPtr ctx = make_context(2.0, 20);
    const OreOperator S1 = poly_operator(ctx, {{1, {{0, 1.0}}}, {0, {{0, -1.0}}}});
    const OreOperator R = ramify(S1, 2);
    CHECK(R.context()->ramification == 2);
    CHECK(rel_err(R.context()->q * R.context()->q, ctx->q) < 1e-15);
    CHECK(std::abs(R.coeff(1)[0] - 1.0) < 1e-15);
    CHECK(std::abs(R.coeff(0)[0] + 1.0) < 1e-15);

    const OreOperator half = poly_operator(ctx, {{2, {{0, 1.0}}}, {0, {{-1, -1.0}}}});
    const NewtonPolygon ph = newton_polygon(half);
    REQUIRE(ph.segments.size() == 1);
    CHECK(ph.segments[0].slope == Rational(1, 2));
    CHECK(ramification_index(ph) == 2);
    const NewtonPolygon pr = newton_polygon(ramify(half, 2));
    REQUIRE(pr.segments.size() == 1);
    CHECK(pr.segments[0].slope == Rational(1));

    Rng rng(43);
    for (int t = 0; t < 20; ++t) {
        const OreOperator P = random_operator(rng, ctx, rng.integer(1, 3), 3);
        CHECK(max_abs_diff(ramify(P, 1), P, 20) == 0.0);
        const int l = rng.integer(2, 4);
        const NewtonPolygon a = newton_polygon(P);
        const NewtonPolygon b = newton_polygon(ramify(P, l));
        REQUIRE(a.segments.size() == b.segments.size());
        for (std::size_t k = 0; k < a.segments.size(); ++k) {
            CHECK(b.segments[k].slope == a.segments[k].slope * Rational(l));
        }
        // a ramified series keeps its values: f(z) = f_l(z_l) with z = z_l^l
        const LaurentSeries f = random_poly(rng, ctx, 0, 4);
        const LaurentSeries fl = ramify(f, ramified_context(ctx, l));
        const cplx zl(0.4, 0.3);
        CHECK(rel_err(fl.eval(zl), f.eval(std::pow(zl, l))) < 1e-13);
    }
}

TEST_CASE("characteristic equation of the running example")
{
    const ContextPtr ctx = make_context(2.0);
    const OreOperator P = running(ctx);
    const CharPolynomial chi = characteristic_equation(P, 0);
    CHECK(chi.span() == 1);
    // proportional to 1 - s
    CHECK(std::abs(chi.eval(1.0)) < 1e-14);
    const std::vector<ExponentDatum> ex = exponents(P, 0);
    REQUIRE(ex.size() == 1);
    CHECK(std::abs(ex[0].c - 1.0) < 1e-12);
    CHECK(ex[0].multiplicity == 1);
    CHECK(ex[0].eps == 0);

    const CharPolynomial off = characteristic_equation(P, 3);
    CHECK(off.span() == 0);
    CHECK(std::abs(off.coeffs[0]) > 0.0);

    const CharPolynomial chi1 = characteristic_equation(P, 1);
    CHECK(chi1.span() == newton_polygon(P).length_of(Rational(1)));
}

TEST_CASE("exponents in one q-class")
{
    for (const cplx q : {cplx(2.0), cplx(3.0, 0.1)}) {
        const ContextPtr ctx = make_context(q);
        // sigma^2 - (1+q) sigma + q = (sigma - q)(sigma - 1) with constant coefficients
        const OreOperator P = poly_operator(ctx, {{2, {{0, 1.0}}}, {1, {{0, -(1.0 + q)}}}, {0, {{0, q}}}});
        std::vector<ExponentDatum> ex = exponents(P, 0);
        REQUIRE(ex.size() == 2);
        std::sort(ex.begin(), ex.end(), [](const auto &a, const auto &b) { return a.eps < b.eps; });
        CHECK(ex[0].eps == 0);
        CHECK(ex[1].eps == 1);
        CHECK(rel_err(ex[0].cbar, ex[1].cbar) < 1e-10);
        CHECK(is_non_resonant(*ctx, ex[1].c, ex));
        CHECK_FALSE(is_non_resonant(*ctx, ex[0].c, ex));
    }
}

TEST_CASE("decomposition carried by exponents")
{
    const ContextPtr ctx = make_context(2.0);
    const OreOperator P = poly_operator(ctx, {{1, {{0, 1.0}}}, {0, {{0, -5.0}}}});
    const std::vector<ExponentDatum> ex = exponents(P, 0);
    REQUIRE(ex.size() == 1);
    CHECK(std::abs(ex[0].c - 5.0) < 1e-13);
    CHECK(ex[0].eps == 2);
    CHECK(std::abs(ex[0].cbar - 1.25) < 1e-13);
}

TEST_CASE("multiple roots are clustered")
{
    const ContextPtr ctx = make_context(1.5);
    // (sigma - c)^3 with constant coefficients
    const cplx c(0.8, 0.6);
    const OreOperator P = poly_operator(ctx, {{3, {{0, 1.0}}}, {2, {{0, -3.0 * c}}}, {1, {{0, 3.0 * c * c}}}, {0, {{0, -c * c * c}}}});
    const std::vector<ExponentDatum> ex = exponents(P, 0);
    REQUIRE(ex.size() == 1);
    CHECK(ex[0].multiplicity == 3);
    CHECK(rel_err(ex[0].c, c) < 1e-10);
}

TEST_CASE("resonance examples")
{
    const ContextPtr ctx = make_context(2.0);
    const ExponentDatum one{1.0, 1, 0, 1.0};
    const ExponentDatum q{2.0, 1, 1, 1.0};
    CHECK(is_non_resonant(*ctx, 1.0, {one}));
    CHECK_FALSE(is_non_resonant(*ctx, 1.0, {one, q}));
    CHECK(is_non_resonant(*ctx, 2.0, {one, q}));
}

TEST_CASE("characteristic multiplicativity up to a unit")
{
    Rng rng(44);
    const ContextPtr ctx = make_context(1.5);
    for (int t = 0; t < 50; ++t) {
        const OreOperator P = random_operator(rng, ctx, rng.integer(1, 3), 2);
        const OreOperator Q = random_operator(rng, ctx, rng.integer(1, 3), 2);
        const OreOperator PQ = P * Q;
        const NewtonPolygon poly = newton_polygon(PQ);
        const int l = ramification_index(poly);
        const OreOperator Pr = ramify(P, l);
        const OreOperator Qr = ramify(Q, l);
        const OreOperator PQr = ramify(PQ, l);
        const cplx ql = Pr.context()->q;
        for (const Rational &s : poly.slopes()) {
            const int mu = static_cast<int>((s * Rational(l)).numerator());
            const int beta = gauge_monomial(Qr, 1.0, -mu).v0();
            const CharPolynomial a = characteristic_equation(PQr, mu);
            const CharPolynomial b = characteristic_equation(Pr, mu);
            const CharPolynomial c = characteristic_equation(Qr, mu);
            CHECK(a.span() == b.span() + c.span());
            // ratio R(s) = chi_PQ(s) / (chi_P(q^beta s) chi_Q(s)) must be c s^k: R(x) R(x t^2) = R(x t)^2
            const auto R = [&](cplx x) { return a.eval(x) / (b.eval(ipow(ql, beta) * x) * c.eval(x)); };
            const cplx x = rng.complex(0.5, 1.5);
            const cplx tt = rng.complex(0.9, 1.1);
            CHECK(rel_err(R(x) * R(x * tt * tt), R(x * tt) * R(x * tt)) < 1e-8);
        }
    }
}

TEST_CASE("constant gauge rescales the characteristic variable")
{
    Rng rng(45);
    const ContextPtr ctx = make_context(2.0);
    for (int t = 0; t < 30; ++t) {
        const OreOperator P = random_operator(rng, ctx, rng.integer(1, 3), 2);
        const cplx c = rng.complex();
        const OreOperator G = gauge(P, LaurentSeries::constant(ctx, c));
        for (const Rational &s : newton_polygon(P).slopes()) {
            if (s.denominator() != 1) {
                continue;
            }
            const int mu = static_cast<int>(s.numerator());
            const CharPolynomial a = characteristic_equation(G, mu);
            const CharPolynomial b = characteristic_equation(P, mu);
            const auto R = [&](cplx x) { return a.eval(x) / b.eval(c * x); };
            const cplx x = rng.complex(0.5, 1.5);
            const cplx tt = rng.complex(0.9, 1.1);
            CHECK(rel_err(R(x) * R(x * tt * tt), R(x * tt) * R(x * tt)) < 1e-9);
        }
    }
}

TEST_CASE("exponents are roots and multiplicities add up")
{
    Rng rng(46);
    const ContextPtr ctx = make_context(cplx(3.0, 0.1));
    for (int t = 0; t < 40; ++t) {
        const OreOperator P = random_operator(rng, ctx, rng.integer(1, 4), 0);
        const CharPolynomial chi = characteristic_equation(P, 0);
        const std::vector<ExponentDatum> ex = exponents(P, 0);
        int total = 0;
        for (const ExponentDatum &e : ex) {
            total += e.multiplicity;
            double mag = 0.0;
            for (std::size_t k = 0; k < chi.coeffs.size(); ++k) {
                mag += std::abs(chi.coeffs[k]) * std::pow(std::abs(e.c), static_cast<double>(chi.low) + static_cast<double>(k));
            }
            CHECK(std::abs(chi.eval(e.c)) < 1e-10 * mag);
            CHECK(rel_err(q_pow(*ctx, e.eps) * e.cbar, e.c) < 1e-12);
        }
        CHECK(total == chi.span());
    }
}
