#ifndef QDIFF_NEWTON_HPP
#define QDIFF_NEWTON_HPP

#include <qdiff/ore.hpp>

#include <boost/rational.hpp>

#include <utility>
#include <vector>

namespace qdiff
{

using Rational = boost::rational<long long>;

struct Segment {
    Rational slope;
    int length;
};

// Lower boundary of the convex hull of {(i, j) : j >= v0(a_i)}.  Slopes strictly increase.
struct NewtonPolygon {
    std::vector<Segment> segments;
    // Hull vertices (sigma-degree, valuation), left to right.
    std::vector<std::pair<int, int>> vertices;

    // r_P(mu): length of the segment of slope mu, 0 when absent.
    int length_of(const Rational &mu) const;
    std::vector<Rational> slopes() const;
    bool operator==(const NewtonPolygon &o) const;
};

NewtonPolygon newton_polygon(const OreOperator &P);

// Newton function of a product: multiset union of slopes with added lengths.
NewtonPolygon merge_polygons(const NewtonPolygon &a, const NewtonPolygon &b);

// lcm of the slope denominators.
int ramification_index(const NewtonPolygon &poly);

// Substitutes z = z_l^l over the context with q_l = exp(tau / l).
OreOperator ramify(const OreOperator &P, int l);
LaurentSeries ramify(const LaurentSeries &f, const ContextPtr &ramified);

// Laurent polynomial sum_{k} coeffs[k] s^{low + k}, lowest coefficient normalized to 1.
struct CharPolynomial {
    int low = 0;
    std::vector<cplx> coeffs;

    int span() const
    {
        return static_cast<int>(coeffs.size()) - 1;
    }
    cplx eval(cplx s) const;
};

CharPolynomial characteristic_equation(const OreOperator &P, int mu);

struct ExponentDatum {
    cplx c;
    int multiplicity;
    int eps;
    cplx cbar;
};

// Nonzero roots of a characteristic polynomial, clustered into multiple roots.
std::vector<ExponentDatum> char_roots(const QContext &ctx, const CharPolynomial &chi);
std::vector<ExponentDatum> exponents(const OreOperator &P, int mu);

// False iff some exponent equals c q^l with l >= 1.
bool is_non_resonant(const QContext &ctx, cplx c, const std::vector<ExponentDatum> &exps);

} // namespace qdiff

#endif
