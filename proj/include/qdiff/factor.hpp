#ifndef QDIFF_FACTOR_HPP
#define QDIFF_FACTOR_HPP

#include <qdiff/newton.hpp>

#include <limits>
#include <optional>
#include <vector>

namespace qdiff
{

// (z^mu sigma - c) u^{-1}
struct FirstOrderFactor {
    int mu;
    cplx c;
    LaurentSeries u;
    // Optional; computed from u when absent.
    LaurentSeries uinv = {};

    OreOperator as_operator() const;
};

struct PeelRecord {
    int mu;
    cplx c;
    int multiplicity;
    NewtonPolygon before;
    NewtonPolygon after;
    CharPolynomial chi_before;
    CharPolynomial chi_after;
};

// ramified input = unit_coeff sigma^unit_degree * factors[0] * ... * factors.back() * residual
struct Factorization {
    LaurentSeries unit_coeff;
    int unit_degree = 0;
    std::vector<FirstOrderFactor> factors;
    int ramification = 1;
    OreOperator residual;
    OreOperator ramified_input;
    std::vector<PeelRecord> trace;

    OreOperator unit() const;
    OreOperator product() const;
};

// Power series f, f(0) = 1, with P.f = 0 where 1 is a non-resonant exponent of slope 0.
LaurentSeries unit_solution(const OreOperator &P);

struct Peel {
    OreOperator Q;
    // u_1 first: P = Q (z^mu sigma - c) u_m^{-1} ... (z^mu sigma - c) u_1^{-1}
    std::vector<LaurentSeries> us;
    std::vector<LaurentSeries> uinvs;
};

Peel peel_exponent(const OreOperator &P, int mu, cplx c, int m);

struct SlopeFactorization {
    OreOperator Q;
    // leftmost first
    std::vector<FirstOrderFactor> factors;
    std::vector<PeelRecord> trace;
};

// Peels every exponent of the integer slope mu, largest modulus first (rightmost factors).
SlopeFactorization factor_slope(const OreOperator &P, int mu);

Factorization full_factorization(const OreOperator &P);

struct GrowthReport {
    // nullopt for polynomials
    std::optional<Rational> level;
    double radius = std::numeric_limits<double>::infinity();
    // Fit of log|f_n| ~ a + b n + c n^2.
    double linear = 0.0;
    double quadratic = 0.0;
    // level >= 0
    bool convergent_like = true;
};

GrowthReport growth_diagnostic(const LaurentSeries &f);

} // namespace qdiff

#endif
