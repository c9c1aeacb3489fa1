#include <qdiff/commands.hpp>
#include <qdiff/index.hpp>
#include <qdiff/parse.hpp>
#include <qdiff/solve.hpp>

#include <algorithm>
#include <climits>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qdiff
{

using nlohmann::json;

namespace
{

json cj(cplx c)
{
    return json::array({c.real(), c.imag()});
}

json coeffs_json(const LaurentSeries &s)
{
    json c = json::array();
    for (const cplx v : s.coeffs()) {
        c.push_back(cj(v));
    }
    return {{"v0", s.is_zero() ? 0 : s.v0()}, {"known_to", s.known_to()}, {"coeffs", c}, {"zero", s.is_zero()}};
}

std::string rat(const Rational &r)
{
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json rat_number(const Rational &r)
{
    if (r.denominator() == 1) {
        return r.numerator();
    }
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

json exponents_json(const QContext &ctx, const std::vector<ExponentDatum> &exps)
{
    json out = json::array();
    for (const ExponentDatum &e : exps) {
        out.push_back({{"c", cj(e.c)},
                       {"cbar", cj(e.cbar)},
                       {"eps", e.eps},
                       {"multiplicity", e.multiplicity},
                       {"non_resonant", is_non_resonant(ctx, e.c, exps)}});
    }
    return out;
}

std::string svg_polygon(const OreOperator &P, const NewtonPolygon &poly)
{
    const int unit = 60;
    const int pad = 40;
    int xmin = P.min_deg();
    int xmax = P.max_deg();
    int ymin = INT_MAX;
    int ymax = INT_MIN;
    for (const auto &[i, a] : P.terms()) {
        ymin = std::min(ymin, a.v0());
        ymax = std::max(ymax, a.v0());
    }
    const int w = (xmax - xmin) * unit + 2 * pad;
    const int h = (ymax - ymin) * unit + 2 * pad;
    auto X = [&](double x) { return pad + (x - xmin) * unit; };
    auto Y = [&](double y) { return h - pad - (y - ymin) * unit; };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    for (int x = xmin; x <= xmax; ++x) {
        for (int y = ymin; y <= ymax; ++y) {
            s << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"1.5\" fill=\"#bbb\"/>\n";
        }
    }
    for (const auto &[i, a] : P.terms()) {
        s << "<circle cx=\"" << X(i) << "\" cy=\"" << Y(a.v0()) << "\" r=\"4\" fill=\"#000\"/>\n";
    }
    s << "<polyline fill=\"none\" stroke=\"#c00\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < poly.vertices.size(); ++k) {
        s << (k ? " " : "") << X(poly.vertices[k].first) << "," << Y(poly.vertices[k].second);
    }
    s << "\"/>\n";
    for (std::size_t k = 0; k + 1 < poly.vertices.size() && k < poly.segments.size(); ++k) {
        const double mx = 0.5 * (poly.vertices[k].first + poly.vertices[k + 1].first);
        const double my = 0.5 * (poly.vertices[k].second + poly.vertices[k + 1].second);
        s << "<text x=\"" << X(mx) << "\" y=\"" << Y(my) - 8 << "\" font-size=\"14\" fill=\"#c00\">"
          << rat(poly.segments[k].slope) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

json cmd_newton(const OreOperator &P, const CommandOptions &opts)
{
    const NewtonPolygon poly = newton_polygon(P);
    json segs = json::array();
    json slopes = json::array();
    json chars = json::array();
    for (const Segment &seg : poly.segments) {
        segs.push_back(json::array({rat_number(seg.slope), seg.length}));
        slopes.push_back(rat(seg.slope));
        const int l = static_cast<int>(seg.slope.denominator());
        const OreOperator R = l == 1 ? P : ramify(P, l);
        const int mu = static_cast<int>(seg.slope.numerator());
        const CharPolynomial chi = characteristic_equation(R, mu);
        json cc = json::array();
        for (const cplx c : chi.coeffs) {
            cc.push_back(cj(c));
        }
        chars.push_back({{"slope", rat(seg.slope)},
                         {"ramification", l},
                         {"low", chi.low},
                         {"coeffs", cc},
                         {"exponents", exponents_json(*R.context(), exponents(R, mu))}});
    }
    json verts = json::array();
    for (const auto &[x, y] : poly.vertices) {
        verts.push_back(json::array({x, y}));
    }
    if (opts.svg) {
        std::ofstream f(*opts.svg);
        if (!f) {
            throw Error(ErrorKind::InvalidArgument, "cannot write " + *opts.svg);
        }
        f << svg_polygon(P, poly);
    }
    return {{"segments", segs},
            {"slopes", slopes},
            {"vertices", verts},
            {"characteristic", chars},
            {"ramification", ramification_index(poly)}};
}

double relative_residual(const Factorization &F)
{
    const OreOperator &R = F.ramified_input;
    const OreOperator prod = F.product();
    const int kt = std::min(R.known_to(), prod.known_to());
    return max_abs_diff(prod, R, kt) / std::max(R.max_abs(), 1e-300);
}

json cmd_factor(const OreOperator &P)
{
    const Factorization F = full_factorization(P);
    json factors = json::array();
    for (const FirstOrderFactor &f : F.factors) {
        factors.push_back({{"mu", f.mu}, {"c", cj(f.c)}, {"u", coeffs_json(f.u)}});
    }
    return {{"unit", {{"degree", F.unit_degree}, {"coeff", coeffs_json(F.unit_coeff)}}},
            {"ramification", F.ramification},
            {"factors", factors},
            {"residual", relative_residual(F)},
            {"ramified_input", render_operator(F.ramified_input)}};
}

int usable_order(const SymbolicSolution &s, int cap)
{
    return std::min(s.known_to(), cap);
}

json solution_json(const SymbolicSolution &s)
{
    json terms = json::array();
    for (const SymbolicTerm &t : s.terms()) {
        json comps = json::array();
        for (const LaurentSeries &c : t.poly.comps) {
            comps.push_back(coeffs_json(c));
        }
        terms.push_back({{"c", cj(t.c)}, {"mu", t.mu}, {"log_degree", t.poly.degree()}, {"components", comps}});
    }
    return terms;
}

json cmd_solve(const OreOperator &P, const CommandOptions &opts)
{
    const bool convergent = opts.mode == Mode::Convergent;
    const SolutionBasis B = convergent ? adams_solutions(P) : solve_all_formal(P);
    const OreOperator &R = B.factorization.ramified_input;
    const int cap = R.context()->trunc_order;
    json sols = json::array();
    for (const SymbolicSolution &s : B.solutions) {
        const SymbolicSolution r = apply_symbolic(R, s);
        const int upto = usable_order(r, cap);
        const double res = r.is_zero() ? 0.0 : sym_max_abs(r, upto);
        const double size = std::max(sym_max_abs(s, usable_order(s, cap)) * R.max_abs(), 1e-300);
        json entry = {{"terms", solution_json(s)},
                      {"residual", res},
                      {"relative_residual", res / size},
                      {"residual_checked_to", upto}};
        if (convergent) {
            json growth = json::array();
            for (const SymbolicTerm &t : s.terms()) {
                for (const LaurentSeries &c : t.poly.comps) {
                    try {
                        const GrowthReport g = growth_diagnostic(c);
                        growth.push_back({{"level", g.level ? json(rat(*g.level)) : json(nullptr)},
                                          {"convergent_like", g.convergent_like}});
                    } catch (const Error &e) {
                        growth.push_back({{"error", std::string(to_string(e.kind()))}});
                    }
                }
            }
            entry["growth"] = growth;
        }
        sols.push_back(entry);
    }
    json wr = nullptr;
    if (!B.solutions.empty()) {
        const SymbolicSolution W = q_wronskian(B.solutions);
        const int upto = usable_order(W, cap);
        const double m = W.is_zero() ? 0.0 : sym_max_abs(W, upto);
        wr = {{"nonzero", m > R.context()->tol_zero}, {"max_abs", m}, {"terms", solution_json(W)}};
    }
    return {{"mode", convergent ? "convergent" : "formal"},
            {"ramification", B.factorization.ramification},
            {"count", B.solutions.size()},
            {"order", P.deg_abs()},
            {"solutions", sols},
            {"wronskian", wr}};
}

json report_json(const IndexReport &r)
{
    return {{"dim_ker", r.dim_ker},
            {"dim_coker", r.dim_coker},
            {"index", r.index},
            {"mode", r.mode == Mode::Formal ? "formal" : "convergent"}};
}

json cmd_index(const OreOperator &P)
{
    json out = report_json(operator_index(P));
    json oracle;
    try {
        oracle = report_json(truncated_rank_oracle(P, -20, 20));
        oracle["window"] = json::array({-20, 20});
    } catch (const Error &e) {
        oracle = error_json(e);
    }
    out["oracle"] = oracle;
    return out;
}

json cmd_eval(const OreOperator &P, const CommandOptions &opts)
{
    std::vector<cplx> points = opts.points;
    if (points.empty()) {
        points = {cplx(0.3), cplx(0.2, 0.25), cplx(-0.4, 0.1)};
    }
    const SolutionBasis B = opts.mode == Mode::Convergent ? adams_solutions(P) : solve_all_formal(P);
    const OreOperator &R = B.factorization.ramified_input;
    const QContext &ctx = *R.context();
    json sols = json::array();
    for (const SymbolicSolution &s : B.solutions) {
        json samples = json::array();
        for (const cplx z : points) {
            try {
                const cplx v = evaluate(s, z);
                cplx res = 0.0;
                double scale = 0.0;
                for (const auto &[i, a] : R.terms()) {
                    const cplx t = a.eval(z) * evaluate(s, z * q_pow(ctx, i));
                    res += t;
                    scale = std::max(scale, std::abs(t));
                }
                samples.push_back({{"z", cj(z)},
                                   {"value", cj(v)},
                                   {"residual", std::abs(res)},
                                   {"relative_residual", std::abs(res) / std::max(scale, 1e-300)}});
            } catch (const Error &e) {
                json err = error_json(e);
                err["z"] = cj(z);
                samples.push_back(err);
            }
        }
        sols.push_back({{"samples", samples}});
    }
    return {{"ramification", B.factorization.ramification}, {"variable", B.factorization.ramification == 1 ? "z" : "z_l"},
            {"solutions", sols}};
}

} // namespace

json error_json(const Error &e)
{
    json body = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (const auto *se = dynamic_cast<const SyntaxError *>(&e)) {
        body["line"] = se->line();
        body["column"] = se->column();
    }
    if (const auto *oe = dynamic_cast<const ObstructionError *>(&e)) {
        json v = json::array();
        for (const cplx c : oe->values()) {
            v.push_back(cj(c));
        }
        body["obstruction"] = v;
    }
    return {{"error", body}};
}

std::string dump(const json &j)
{
    return j.dump(2) + "\n";
}

json run_command(const std::string &cmd, const std::string &source, const CommandOptions &opts)
{
    const ContextPtr ctx = make_context(opts.q, opts.order, opts.mode, opts.tol);
    const OreOperator P = parse_operator(source, ctx);
    if (P.is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "the operator is zero");
    }
    json body;
    if (cmd == "newton") {
        body = cmd_newton(P, opts);
    } else if (cmd == "factor") {
        body = cmd_factor(P);
    } else if (cmd == "solve") {
        body = cmd_solve(P, opts);
    } else if (cmd == "index") {
        body = cmd_index(P);
    } else if (cmd == "eval") {
        body = cmd_eval(P, opts);
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown command '" + cmd + "'");
    }
    return {{"command", cmd},
            {"operator", render_operator(P)},
            {"context",
             {{"q", cj(opts.q)},
              {"order", opts.order},
              {"mode", opts.mode == Mode::Formal ? "formal" : "convergent"},
              {"tol", opts.tol}}},
            {"result", body}};
}

} // namespace qdiff
