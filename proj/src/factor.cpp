#include <qdiff/error.hpp>
#include <qdiff/factor.hpp>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cmath>

namespace qdiff
{

namespace
{

// |F_0(1)| below this fraction of sum |a_{i,0}| counts as a root.
constexpr double kRootTol = 1e-6;

// z^{-l} sigma^{-alpha} P, entire with the zero slope on the axis.
OreOperator calibrate(const OreOperator &P)
{
    const OreOperator Pe = ore_mul(OreOperator::sigma(P.context(), -P.min_deg()), P);
    return ore_shift(Pe, -Pe.v0());
}

using QuadC = boost::multiprecision::cpp_complex_quad;

struct PeelStep {
    OreOperator R;
    LaurentSeries u;
    LaurentSeries uinv;
};

struct UnitPair {
    LaurentSeries u;
    LaurentSeries uinv;
};

// u and 1/u from the calibrated operator.  Both recurrences run in quad precision: 1/u is
// usually much smaller than u, and inverting a rounded u loses about log|u_n/(1/u)_n| digits.
UnitPair unit_pair(const OreOperator &Ph);

// P~ = R (sigma - 1) u^{-1} for P~ with exponent 1 at slope 0.
PeelStep peel_one(const OreOperator &Pt)
{
    const ContextPtr &ctx = Pt.context();
    const int alpha = Pt.min_deg();
    const OreOperator Pe = ore_mul(OreOperator::sigma(ctx, -alpha), Pt);
    const int l = Pe.v0();
    const OreOperator Ph = ore_shift(Pe, -l);
    UnitPair up = unit_pair(Ph);
    const LaurentSeries &u = up.u;
    const int n = Ph.max_deg();
    std::map<int, LaurentSeries> terms;
    LaurentSeries acc = LaurentSeries::zero(ctx, u.known_to());
    for (int j = 0; j < n; ++j) {
        auto it = Ph.terms().find(j);
        if (it != Ph.terms().end()) {
            acc = add(acc, mul(it->second, sigma_pow(u, j)));
        }
        if (!acc.is_zero()) {
            terms[j] = neg(acc);
        }
    }
    const OreOperator P1 = OreOperator::from_terms(ctx, terms);
    const OreOperator R = ore_mul(OreOperator::sigma(ctx, alpha), ore_shift(P1, l));
    return {R, std::move(up.u), std::move(up.uinv)};
}

UnitPair unit_pair(const OreOperator &Ph)
{
    const ContextPtr &ctx = Ph.context();
    const int n = Ph.max_deg();
    const int K = Ph.known_to();
    if (K < 0) {
        throw Error(ErrorKind::PrecisionExhausted, "operator coefficients carry no precision at z^0");
    }
    const auto N = static_cast<std::size_t>(K + 1);
    // a[i][j]: coefficient of z^j in the i-th coefficient
    std::vector<std::vector<QuadC>> a(static_cast<std::size_t>(n + 1), std::vector<QuadC>(N));
    for (const auto &[i, s] : Ph.terms()) {
        for (int j = 0; j <= K; ++j) {
            const cplx v = s.coeff_or_zero(j);
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = QuadC(v.real(), v.imag());
        }
    }
    // qp[i][m] = q^{i m}
    const QuadC q(ctx->q.real(), ctx->q.imag());
    std::vector<std::vector<QuadC>> qp(static_cast<std::size_t>(n + 1), std::vector<QuadC>(N));
    for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
        QuadC qi = 1;
        for (std::size_t r = 0; r < i; ++r) {
            qi *= q;
        }
        qp[i][0] = 1;
        for (std::size_t m = 1; m < N; ++m) {
            qp[i][m] = qp[i][m - 1] * qi;
        }
    }
    auto F = [&](std::size_t j, std::size_t m, double *mag) {
        QuadC s = 0;
        double g = 0.0;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
            const QuadC t = a[i][j] * qp[i][m];
            s += t;
            if (mag != nullptr) {
                g += static_cast<double>(abs(t));
            }
        }
        if (mag != nullptr) {
            *mag = g;
        }
        return s;
    };
    double mag0 = 0.0;
    const QuadC f01 = F(0, 0, &mag0);
    if (static_cast<double>(abs(f01)) > kRootTol * mag0) {
        throw Error(ErrorKind::NotAnExponent, "1 is not an exponent of slope 0");
    }
    auto to_cplx = [](const QuadC &z) { return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag())); };
    auto ok = [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
    std::vector<QuadC> f(N);
    std::vector<QuadC> g(N);
    std::vector<cplx> fd(1, cplx(1.0));
    std::vector<cplx> gd(1, cplx(1.0));
    f[0] = 1;
    g[0] = 1;
    for (std::size_t m = 1; m < N; ++m) {
        double mag = 0.0;
        const QuadC den = F(0, m, &mag);
        if (static_cast<double>(abs(den)) <= ctx->tol_zero * mag) {
            throw Error(ErrorKind::ResonantExponent, "F_0(q^m) vanishes: resonant exponent");
        }
        QuadC s = 0;
        for (std::size_t mp = 0; mp < m; ++mp) {
            s += F(m - mp, mp, nullptr) * f[mp];
        }
        f[m] = -s / den;
        QuadC t = 0;
        for (std::size_t j = 1; j <= m; ++j) {
            t += f[j] * g[m - j];
        }
        g[m] = -t;
        const cplx fv = to_cplx(f[m]);
        const cplx gv = to_cplx(g[m]);
        if (!ok(fv) || !ok(gv)) {
            break;
        }
        fd.push_back(fv);
        gd.push_back(gv);
    }
    const int kt = static_cast<int>(fd.size()) - 1;
    return {LaurentSeries::from_coeffs(ctx, 0, std::move(fd), kt), LaurentSeries::from_coeffs(ctx, 0, std::move(gd), kt)};
}

} // namespace

OreOperator FirstOrderFactor::as_operator() const
{
    const LaurentSeries w = uinv.context() ? uinv : invert(u);
    std::map<int, LaurentSeries> terms;
    terms[1] = shift(sigma_pow(w, 1), mu);
    terms[0] = scale(w, -c);
    return OreOperator::from_terms(u.context(), terms);
}

OreOperator Factorization::unit() const
{
    std::map<int, LaurentSeries> terms;
    terms[unit_degree] = unit_coeff;
    return OreOperator::from_terms(unit_coeff.context(), terms);
}

OreOperator Factorization::product() const
{
    OreOperator out = unit();
    for (const FirstOrderFactor &f : factors) {
        out = ore_mul(out, f.as_operator());
    }
    return ore_mul(out, residual);
}

LaurentSeries unit_solution(const OreOperator &P)
{
    if (P.is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "unit solution of the zero operator");
    }
    if (newton_polygon(P).length_of(Rational(0)) == 0) {
        throw Error(ErrorKind::SlopeMissing, "0 is not a slope of the operator");
    }
    return unit_pair(calibrate(P)).u;
}

Peel peel_exponent(const OreOperator &P, int mu, cplx c, int m)
{
    if (c == 0.0) {
        throw Error(ErrorKind::NotAnExponent, "0 is never an exponent");
    }
    const QContext &ctx = *P.context();
    const std::vector<ExponentDatum> exps = exponents(P, mu);
    auto it = std::find_if(exps.begin(), exps.end(), [&](const ExponentDatum &e) {
        return std::abs(e.c - c) <= std::max(ctx.tol_match, 1e-6) * std::abs(c);
    });
    if (it == exps.end()) {
        throw Error(ErrorKind::NotAnExponent, "value is not an exponent of the slope");
    }
    if (it->multiplicity < m) {
        throw Error(ErrorKind::MultiplicityMismatch, "requested multiplicity exceeds the root multiplicity");
    }
    if (!is_non_resonant(ctx, c, exps)) {
        throw Error(ErrorKind::ResonantExponent, "exponent is resonant");
    }
    OreOperator R = gauge_monomial(P, c, -mu);
    Peel out;
    for (int k = 0; k < m; ++k) {
        try {
            PeelStep st = peel_one(R);
            R = st.R;
            out.us.push_back(st.u);
            out.uinvs.push_back(st.uinv);
        } catch (const Error &e) {
            if (e.kind() == ErrorKind::NotAnExponent) {
                throw Error(ErrorKind::MultiplicityMismatch, "peeling stalled before the requested multiplicity");
            }
            throw;
        }
    }
    out.Q = ore_scale(gauge_monomial(R, 1.0 / c, mu), ipow(c, -m));
    return out;
}

SlopeFactorization factor_slope(const OreOperator &P, int mu)
{
    SlopeFactorization out;
    out.Q = P;
    NewtonPolygon poly = newton_polygon(P);
    if (poly.length_of(Rational(mu)) == 0) {
        throw Error(ErrorKind::SlopeMissing, "slope not present in the Newton polygon");
    }
    while (poly.length_of(Rational(mu)) > 0) {
        const CharPolynomial chi = characteristic_equation(out.Q, mu);
        const std::vector<ExponentDatum> exps = char_roots(*P.context(), chi);
        if (exps.empty()) {
            throw Error(ErrorKind::RootFindingFailure, "no exponent found on a nonempty slope");
        }
        const ExponentDatum &top = exps.back();
        Peel pl = peel_exponent(out.Q, mu, top.c, top.multiplicity);
        std::vector<FirstOrderFactor> fs;
        for (std::size_t k = pl.us.size(); k-- > 0;) {
            fs.push_back({mu, top.c, pl.us[k], pl.uinvs[k]});
        }
        out.factors.insert(out.factors.begin(), fs.begin(), fs.end());
        PeelRecord rec;
        rec.mu = mu;
        rec.c = top.c;
        rec.multiplicity = top.multiplicity;
        rec.before = poly;
        rec.chi_before = chi;
        out.Q = pl.Q;
        poly = newton_polygon(out.Q);
        rec.after = poly;
        rec.chi_after = characteristic_equation(out.Q, mu);
        out.trace.push_back(rec);
    }
    return out;
}

Factorization full_factorization(const OreOperator &P)
{
    if (P.is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "factorization of the zero operator");
    }
    const int l = ramification_index(newton_polygon(P));
    Factorization out;
    out.ramification = l;
    out.ramified_input = ramify(P, l);
    const ContextPtr &ctx = out.ramified_input.context();
    OreOperator Q = out.ramified_input;
    std::vector<Rational> slopes = newton_polygon(Q).slopes();
    for (auto s = slopes.rbegin(); s != slopes.rend(); ++s) {
        const int mu = static_cast<int>(s->numerator());
        SlopeFactorization sf = factor_slope(Q, mu);
        out.factors.insert(out.factors.begin(), sf.factors.begin(), sf.factors.end());
        out.trace.insert(out.trace.end(), sf.trace.begin(), sf.trace.end());
        Q = sf.Q;
    }
    if (Q.deg_abs() == 0) {
        out.unit_degree = Q.min_deg();
        out.unit_coeff = Q.terms().begin()->second;
        out.residual = OreOperator::sigma(ctx, 0);
    } else {
        out.unit_degree = 0;
        out.unit_coeff = LaurentSeries::constant(ctx, 1.0);
        out.residual = Q;
    }
    return out;
}

GrowthReport growth_diagnostic(const LaurentSeries &f)
{
    if (f.is_zero() || f.known_to() - f.v0() + 1 < 10) {
        throw Error(ErrorKind::InsufficientData, "growth diagnostic needs at least 10 known coefficients");
    }
    std::vector<double> ns;
    std::vector<double> ls;
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        const double a = std::abs(f.coeffs()[k]);
        if (a > 0.0 && std::isfinite(a)) {
            ns.push_back(static_cast<double>(f.v0()) + static_cast<double>(k));
            ls.push_back(std::log(a));
        }
    }
    GrowthReport rep;
    if (ns.size() < 3) {
        return rep;
    }
    const double scale = std::max(1.0, std::max(std::abs(ns.front()), std::abs(ns.back())));
    Eigen::MatrixXd A(static_cast<Eigen::Index>(ns.size()), 3);
    Eigen::VectorXd y(static_cast<Eigen::Index>(ns.size()));
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const double t = ns[k] / scale;
        A(static_cast<Eigen::Index>(k), 0) = 1.0;
        A(static_cast<Eigen::Index>(k), 1) = t;
        A(static_cast<Eigen::Index>(k), 2) = t * t;
        y(static_cast<Eigen::Index>(k)) = ls[k];
    }
    const Eigen::Vector3d x = A.colPivHouseholderQr().solve(y);
    rep.linear = x(1) / scale;
    rep.quadratic = x(2) / (scale * scale);
    const double lq = std::log(std::abs(f.context()->q));
    if (std::abs(rep.quadratic) < 0.02 * lq) {
        rep.level = Rational(0);
        rep.radius = std::exp(-rep.linear);
        rep.convergent_like = true;
        return rep;
    }
    const double target = -2.0 * rep.quadratic / lq;
    Rational best(std::llround(target));
    double err = std::abs(target - std::round(target));
    for (long long den = 2; den <= 6; ++den) {
        const long long num = std::llround(target * static_cast<double>(den));
        const double e = std::abs(target - static_cast<double>(num) / static_cast<double>(den));
        if (e < err - 1e-12) {
            err = e;
            best = Rational(num, den);
        }
    }
    rep.level = best;
    if (best == Rational(0)) {
        rep.radius = std::exp(-rep.linear);
    } else if (best > Rational(0)) {
        rep.radius = std::numeric_limits<double>::infinity();
        rep.convergent_like = true;
    } else {
        rep.radius = 0.0;
        rep.convergent_like = false;
    }
    return rep;
}

} // namespace qdiff
