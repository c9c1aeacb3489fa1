#include <qdiff/error.hpp>
#include <qdiff/newton.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qdiff
{

int NewtonPolygon::length_of(const Rational &mu) const
{
    for (const Segment &s : segments) {
        if (s.slope == mu) {
            return s.length;
        }
    }
    return 0;
}

std::vector<Rational> NewtonPolygon::slopes() const
{
    std::vector<Rational> out;
    for (const Segment &s : segments) {
        out.push_back(s.slope);
    }
    return out;
}

bool NewtonPolygon::operator==(const NewtonPolygon &o) const
{
    if (segments.size() != o.segments.size() || vertices != o.vertices) {
        return false;
    }
    for (std::size_t k = 0; k < segments.size(); ++k) {
        if (segments[k].slope != o.segments[k].slope || segments[k].length != o.segments[k].length) {
            return false;
        }
    }
    return true;
}

NewtonPolygon newton_polygon(const OreOperator &P)
{
    if (P.is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "Newton polygon of the zero operator");
    }
    std::vector<std::pair<long long, long long>> hull;
    for (const auto &[i, a] : P.terms()) {
        const std::pair<long long, long long> p{i, a.v0()};
        while (hull.size() >= 2) {
            const auto &o = hull[hull.size() - 2];
            const auto &m = hull.back();
            const long long cross = (m.first - o.first) * (p.second - o.second) - (m.second - o.second) * (p.first - o.first);
            if (cross <= 0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(p);
    }
    NewtonPolygon poly;
    for (const auto &v : hull) {
        poly.vertices.emplace_back(static_cast<int>(v.first), static_cast<int>(v.second));
    }
    for (std::size_t k = 1; k < hull.size(); ++k) {
        const long long dx = hull[k].first - hull[k - 1].first;
        const long long dy = hull[k].second - hull[k - 1].second;
        poly.segments.push_back({Rational(dy, dx), static_cast<int>(dx)});
    }
    return poly;
}

NewtonPolygon merge_polygons(const NewtonPolygon &a, const NewtonPolygon &b)
{
    NewtonPolygon out;
    std::vector<Segment> segs = a.segments;
    for (const Segment &s : b.segments) {
        auto it = std::find_if(segs.begin(), segs.end(), [&](const Segment &t) { return t.slope == s.slope; });
        if (it != segs.end()) {
            it->length += s.length;
        } else {
            segs.push_back(s);
        }
    }
    std::sort(segs.begin(), segs.end(), [](const Segment &x, const Segment &y) { return x.slope < y.slope; });
    out.segments = segs;
    if (a.vertices.empty() || b.vertices.empty()) {
        return out;
    }
    long long x = a.vertices.front().first + b.vertices.front().first;
    long long y = a.vertices.front().second + b.vertices.front().second;
    out.vertices.emplace_back(static_cast<int>(x), static_cast<int>(y));
    for (const Segment &s : segs) {
        x += s.length;
        const Rational dy = s.slope * static_cast<long long>(s.length);
        y += dy.numerator() / dy.denominator();
        out.vertices.emplace_back(static_cast<int>(x), static_cast<int>(y));
    }
    return out;
}

int ramification_index(const NewtonPolygon &poly)
{
    long long l = 1;
    for (const Segment &s : poly.segments) {
        l = std::lcm(l, s.slope.denominator());
    }
    return static_cast<int>(l);
}

LaurentSeries ramify(const LaurentSeries &f, const ContextPtr &ramified)
{
    const int l = ramified->ramification / f.context()->ramification;
    if (f.is_zero()) {
        return LaurentSeries::zero(ramified, f.known_to() * l);
    }
    std::vector<cplx> c(static_cast<std::size_t>((f.known_to() - f.v0()) * l + 1), cplx(0.0));
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        c[k * static_cast<std::size_t>(l)] = f.coeffs()[k];
    }
    return LaurentSeries::from_coeffs(ramified, f.v0() * l, std::move(c), f.known_to() * l);
}

OreOperator ramify(const OreOperator &P, int l)
{
    if (l == 1) {
        return P;
    }
    const ContextPtr rc = ramified_context(P.context(), l);
    std::map<int, LaurentSeries> terms;
    for (const auto &[i, a] : P.terms()) {
        terms[i] = ramify(a, rc);
    }
    return OreOperator::from_terms(rc, terms);
}

cplx CharPolynomial::eval(cplx s) const
{
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc * std::pow(s, low);
}

CharPolynomial characteristic_equation(const OreOperator &P, int mu)
{
    if (P.is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "characteristic equation of the zero operator");
    }
    const OreOperator G = gauge_monomial(P, 1.0, -mu);
    const int v = G.v0();
    std::vector<std::pair<int, cplx>> pts;
    for (const auto &[i, b] : G.terms()) {
        if (b.v0() == v) {
            pts.emplace_back(i, b.leading());
        }
    }
    CharPolynomial chi;
    chi.low = pts.front().first;
    chi.coeffs.assign(static_cast<std::size_t>(pts.back().first - chi.low + 1), cplx(0.0));
    const cplx lead = pts.front().second;
    for (const auto &[i, c] : pts) {
        chi.coeffs[static_cast<std::size_t>(i - chi.low)] = c / lead;
    }
    return chi;
}

std::vector<ExponentDatum> char_roots(const QContext &ctx, const CharPolynomial &chi)
{
    const int deg = chi.span();
    std::vector<ExponentDatum> out;
    if (deg <= 0) {
        return out;
    }
    const std::vector<cplx> &p = chi.coeffs;
    std::vector<cplx> roots;
    if (deg == 1) {
        roots.push_back(-p[0] / p[1]);
    } else {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
        for (int k = 1; k < deg; ++k) {
            comp(k, k - 1) = 1.0;
        }
        for (int k = 0; k < deg; ++k) {
            comp(k, deg - 1) = -p[static_cast<std::size_t>(k)] / p[static_cast<std::size_t>(deg)];
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        if (es.info() != Eigen::Success) {
            throw Error(ErrorKind::RootFindingFailure, "companion eigenproblem did not converge");
        }
        for (int k = 0; k < deg; ++k) {
            roots.push_back(es.eigenvalues()(k));
        }
    }
    const double radius = std::max(ctx.tol_match, 4.0 * std::pow(1e-13, 1.0 / deg));
    std::vector<std::vector<cplx>> clusters;
    for (const cplx &r : roots) {
        bool placed = false;
        for (auto &cl : clusters) {
            const cplx centre = std::accumulate(cl.begin(), cl.end(), cplx(0.0)) / static_cast<double>(cl.size());
            if (std::abs(r - centre) <= radius * std::max(std::abs(r), std::abs(centre))) {
                cl.push_back(r);
                placed = true;
                break;
            }
        }
        if (!placed) {
            clusters.push_back({r});
        }
    }
    for (const auto &cl : clusters) {
        const int m = static_cast<int>(cl.size());
        cplx r = std::accumulate(cl.begin(), cl.end(), cplx(0.0)) / static_cast<double>(m);
        // Newton polish on the (m-1)-th derivative, where the root is simple.
        std::vector<cplx> d = p;
        for (int t = 0; t < m - 1; ++t) {
            std::vector<cplx> e(d.size() - 1);
            for (std::size_t k = 1; k < d.size(); ++k) {
                e[k - 1] = static_cast<double>(k) * d[k];
            }
            d = e;
        }
        for (int it = 0; it < 3; ++it) {
            cplx f = 0.0;
            cplx fp = 0.0;
            for (auto k = d.rbegin(); k != d.rend(); ++k) {
                fp = fp * r + f;
                f = f * r + *k;
            }
            if (fp == 0.0) {
                break;
            }
            const cplx step = f / fp;
            if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-3 * std::abs(r)) {
                break;
            }
            r -= step;
        }
        const QDecomposition dec = decompose(ctx, r);
        out.push_back({r, m, dec.eps, dec.cbar});
    }
    std::sort(out.begin(), out.end(), [](const ExponentDatum &a, const ExponentDatum &b) {
        if (std::abs(a.c) != std::abs(b.c)) {
            return std::abs(a.c) < std::abs(b.c);
        }
        return std::arg(a.c) < std::arg(b.c);
    });
    return out;
}

std::vector<ExponentDatum> exponents(const OreOperator &P, int mu)
{
    return char_roots(*P.context(), characteristic_equation(P, mu));
}

bool is_non_resonant(const QContext &ctx, cplx c, const std::vector<ExponentDatum> &exps)
{
    const double lq = std::log(std::abs(ctx.q));
    for (const ExponentDatum &e : exps) {
        const cplx ratio = e.c / c;
        const long long l = std::llround(std::log(std::abs(ratio)) / lq);
        if (l < 1) {
            continue;
        }
        const cplx ql = q_pow(ctx, l);
        if (std::abs(ratio - ql) <= ctx.tol_match * std::abs(ql)) {
            return false;
        }
    }
    return true;
}

} // namespace qdiff
