#include <qdiff/error.hpp>
#include <qdiff/index.hpp>
#include <qdiff/solve.hpp>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace qdiff
{

namespace
{

int numerical_rank(const Eigen::MatrixXcd &M, double rel)
{
    if (M.size() == 0) {
        return 0;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    const auto &s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) {
        return 0;
    }
    int r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (s(k) > rel * s(0)) {
            ++r;
        }
    }
    return r;
}

void equilibrate(Eigen::MatrixXcd &M)
{
    for (int pass = 0; pass < 3; ++pass) {
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            const double m = M.row(r).cwiseAbs().maxCoeff();
            if (m > 0.0) {
                M.row(r) /= m;
            }
        }
        for (Eigen::Index c = 0; c < M.cols(); ++c) {
            const double m = M.col(c).cwiseAbs().maxCoeff();
            if (m > 0.0) {
                M.col(c) /= m;
            }
        }
    }
}

// Row r of the window holds the coefficient of z^{r + v0(P)}: the rows whose equations only
// involve columns inside [lo, hi].
void fill_column(const OreOperator &P, int lo, int hi, int c, Eigen::MatrixXcd &M)
{
    const QContext &ctx = *P.context();
    const int v = P.v0();
    for (const auto &[i, a] : P.terms()) {
        const cplx qc = q_pow(ctx, static_cast<long long>(i) * c);
        for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
            const int r = c + a.v0() + static_cast<int>(k) - v;
            if (r < lo || r > hi) {
                continue;
            }
            M(r - lo, c - lo) += a.coeffs()[k] * qc;
        }
    }
}

// Conjugation by diag(rho^r) weights entry (r, c) by rho^{r - c} >= 0 powers: low exponents dominate,
// as in the z-adic topology.  Exact rank is unchanged, but the bilateral theta-like sequences that
// solve sigma - d z^nu on all of Z no longer pass for numerical kernel vectors of the window.
void z_adic_weight(Eigen::MatrixXcd &M, double rho)
{
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
        double w = 1.0;
        for (Eigen::Index r = c; r < M.rows(); ++r) {
            M(r, c) *= w;
            w *= rho;
        }
    }
}

IndexReport window_report(const OreOperator &P, int lo, int hi)
{
    Eigen::MatrixXcd M = window_matrix(P, lo, hi);
    z_adic_weight(M, std::pow(std::abs(P.context()->q), -(hi - lo + 1)));
    equilibrate(M);
    const int rank = numerical_rank(M, P.context()->tol_zero);
    IndexReport r;
    r.mode = Mode::Formal;
    r.dim_ker = static_cast<int>(M.cols()) - rank;
    r.dim_coker = static_cast<int>(M.rows()) - rank;
    r.index = r.dim_ker - r.dim_coker;
    return r;
}

LaurentSeries zero_like(const ContextPtr &ctx)
{
    return LaurentSeries::zero(ctx, ctx->trunc_order);
}

Eigen::VectorXcd coeff_vector(const std::vector<LaurentSeries> &Y, int e)
{
    Eigen::VectorXcd v(static_cast<Eigen::Index>(Y.size()));
    for (std::size_t j = 0; j < Y.size(); ++j) {
        v(static_cast<Eigen::Index>(j)) = Y[j].coeff_or_zero(e);
    }
    return v;
}

long long floordiv(long long a, long long b)
{
    long long r = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --r;
    }
    return r;
}

struct ClassRange {
    long long kmin;
    long long kmax;
};

ClassRange class_range(const std::vector<LaurentSeries> &Y, int d, int i)
{
    int v = INT32_MAX;
    int kt = INT32_MAX;
    for (const LaurentSeries &y : Y) {
        kt = std::min(kt, y.known_to());
        if (!y.is_zero()) {
            v = std::min(v, y.v0());
        }
    }
    if (v == INT32_MAX) {
        v = kt + 1;
    }
    return {floordiv(static_cast<long long>(v) - i + d - 1, d), floordiv(static_cast<long long>(kt) - i, d)};
}

void check_a0(const Eigen::MatrixXcd &A0)
{
    if (A0.rows() != A0.cols() || A0.rows() == 0) {
        throw Error(ErrorKind::InvalidArgument, "A0 must be a nonempty square matrix");
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(A0);
    if (!lu.isInvertible()) {
        throw Error(ErrorKind::SingularA0, "A0 is not invertible");
    }
}

// Z_i = sum_k a^k Q^{-k(k-1)/2} Y_{i,k}; throws NonconvergedSum when the tail is not negligible.
Eigen::VectorXcd class_value(const QContext &ctx, const std::vector<LaurentSeries> &Y, int d, int i,
                             const Eigen::MatrixXcd &a)
{
    const Eigen::Index n = a.rows();
    const ClassRange cr = class_range(Y, d, i);
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(n);
    if (cr.kmin > cr.kmax) {
        return sum;
    }
    const Eigen::MatrixXcd ainv = a.inverse();
    Eigen::MatrixXcd ak = Eigen::MatrixXcd::Identity(n, n);
    if (cr.kmin >= 0) {
        for (long long k = 0; k < cr.kmin; ++k) {
            ak = ak * a;
        }
    } else {
        for (long long k = 0; k < -cr.kmin; ++k) {
            ak = ak * ainv;
        }
    }
    const cplx Q = q_pow(ctx, d);
    double biggest = 0.0;
    double last = 0.0;
    for (long long k = cr.kmin; k <= cr.kmax; ++k) {
        const Eigen::VectorXcd y = coeff_vector(Y, static_cast<int>(i + static_cast<long long>(d) * k));
        const cplx w = 1.0 / ipow(Q, k * (k - 1) / 2);
        Eigen::VectorXcd t = Eigen::VectorXcd::Zero(n);
        if (y.cwiseAbs().maxCoeff() > 0.0 && w != 0.0) {
            t = w * (ak * y);
        }
        sum += t;
        last = t.size() ? t.cwiseAbs().maxCoeff() : 0.0;
        biggest = std::max(biggest, last);
        ak = ak * a;
    }
    if (!std::isfinite(biggest) || (last > 1e-10 * std::max(biggest, 1e-300) && last > ctx.tol_zero)) {
        throw Error(ErrorKind::NonconvergedSum, "Borel sum has not converged over the known coefficients");
    }
    return sum;
}

} // namespace

IndexReport first_order_index(const QContext &ctx, cplx d, int nu)
{
    if (d == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "d must be nonzero");
    }
    IndexReport r;
    r.mode = ctx.mode;
    if (nu == 0) {
        const QDecomposition dec = decompose(ctx, d);
        if (dec.cbar == cplx(1.0)) {
            r.dim_ker = 1;
            r.dim_coker = 1;
        }
    } else if (nu < 0 && ctx.mode == Mode::Convergent) {
        r.dim_coker = -nu;
    }
    r.index = r.dim_ker - r.dim_coker;
    return r;
}

IndexReport operator_index(const OreOperator &P)
{
    if (P.is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "index of the zero operator");
    }
    const Mode mode = P.context()->mode;
    const SolutionBasis basis = solve_all_formal(P);
    const Factorization &F = basis.factorization;
    const ContextPtr &rctx = F.ramified_input.context();
    const int ell = F.ramification;

    // Index in the ramified variable, the sum of the factor indices.
    int ramified_index = 0;
    for (const FirstOrderFactor &f : F.factors) {
        ramified_index += first_order_index(*with_mode(rctx, mode), f.c, -f.mu).index;
    }

    // Kernel: combinations of the basis lying in K (key (1, 0), no logs, exponents = 0 mod ell).
    const std::size_t n = basis.solutions.size();
    const int upto = rctx->trunc_order;
    std::map<std::tuple<double, double, int, int, int>, std::vector<cplx>> rows;
    std::map<int, std::vector<cplx>> k_rows;
    for (std::size_t j = 0; j < n; ++j) {
        for (const SymbolicTerm &t : basis.solutions[j].terms()) {
            const bool key_one = t.mu == 0 && std::abs(t.c - cplx(1.0)) <= rctx->tol_match;
            for (int comp = 0; comp <= t.poly.degree(); ++comp) {
                const LaurentSeries &s = t.poly.comps[static_cast<std::size_t>(comp)];
                for (std::size_t k = 0; k < s.coeffs().size(); ++k) {
                    const int e = s.v0() + static_cast<int>(k);
                    if (e > upto) {
                        break;
                    }
                    const bool in_k = key_one && comp == 0 && ((e % ell) + ell) % ell == 0;
                    std::vector<cplx> &row = in_k ? k_rows[e] : rows[{t.c.real(), t.c.imag(), t.mu, comp, e}];
                    row.resize(n, cplx(0.0));
                    row[j] += s.coeffs()[k];
                }
            }
        }
    }
    Eigen::MatrixXcd W(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
    W.setZero();
    Eigen::Index r = 0;
    double scale = 0.0;
    for (const auto &[key, row] : rows) {
        for (std::size_t j = 0; j < n; ++j) {
            W(r, static_cast<Eigen::Index>(j)) = row[j];
        }
        ++r;
    }
    for (Eigen::Index c = 0; c < W.cols(); ++c) {
        double m = 0.0;
        for (const auto &[e, row] : k_rows) {
            m = std::max(m, std::abs(row[static_cast<std::size_t>(c)]));
        }
        m = std::max(m, W.rows() ? W.col(c).cwiseAbs().maxCoeff() : 0.0);
        if (m > 0.0) {
            W.col(c) /= m;
            for (auto &[e, row] : k_rows) {
                row[static_cast<std::size_t>(c)] /= m;
            }
        }
        scale = std::max(scale, m);
    }
    int dim_ker = 0;
    if (W.rows() == 0) {
        dim_ker = static_cast<int>(n);
    } else {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(W, Eigen::ComputeFullV);
        const auto &s = svd.singularValues();
        int rank = 0;
        for (Eigen::Index k = 0; k < s.size(); ++k) {
            if (s(k) > rctx->tol_match * std::max(s(0), 1e-300)) {
                ++rank;
            }
        }
        dim_ker = static_cast<int>(n) - rank;
        if (mode == Mode::Convergent && dim_ker > 0) {
            // Null vectors of W give the K-valued kernel elements; keep those of convergent growth.
            const Eigen::MatrixXcd V = svd.matrixV().rightCols(dim_ker);
            int convergent = 0;
            for (Eigen::Index c = 0; c < V.cols(); ++c) {
                std::vector<cplx> coeffs;
                int v0 = 0;
                bool first = true;
                for (const auto &[e, row] : k_rows) {
                    cplx val = 0.0;
                    for (std::size_t j = 0; j < n; ++j) {
                        val += row[j] * V(static_cast<Eigen::Index>(j), c);
                    }
                    if (first) {
                        v0 = e;
                        first = false;
                    }
                    coeffs.resize(static_cast<std::size_t>(e - v0 + 1), cplx(0.0));
                    coeffs.back() = val;
                }
                const LaurentSeries f = LaurentSeries::from_coeffs(rctx, v0, coeffs, upto);
                bool ok = true;
                try {
                    ok = growth_diagnostic(f).convergent_like;
                } catch (const Error &) {
                    ok = true;
                }
                if (ok) {
                    ++convergent;
                }
            }
            dim_ker = convergent;
        }
    }
    if (mode == Mode::Convergent && W.rows() == 0 && dim_ker > 0) {
        int convergent = 0;
        for (const SymbolicSolution &s : basis.solutions) {
            bool ok = true;
            for (const SymbolicTerm &t : s.terms()) {
                try {
                    ok = ok && growth_diagnostic(t.poly.comps.front()).convergent_like;
                } catch (const Error &) {
                }
            }
            convergent += ok ? 1 : 0;
        }
        dim_ker = convergent;
    }
    IndexReport out;
    out.mode = mode;
    // A kernel element of the ramified operator in K_ell splits into ell conjugates; only the
    // residue-0 part is counted above, so dim_ker is already the base-field count.
    out.index = static_cast<int>(std::lround(static_cast<double>(ramified_index) / ell));
    out.dim_ker = dim_ker;
    out.dim_coker = dim_ker - out.index;
    return out;
}

Eigen::MatrixXcd window_matrix(const OreOperator &P, int lo, int hi)
{
    return kernels::window_matrix_omp(P, lo, hi);
}

IndexReport truncated_rank_oracle(const OreOperator &P, int lo, int hi)
{
    if (P.is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "rank of the zero operator");
    }
    if (lo > hi) {
        throw Error(ErrorKind::InvalidArgument, "empty window");
    }
    const IndexReport a = window_report(P, lo, hi);
    const IndexReport b = window_report(P, 2 * lo, 2 * hi);
    if (a.dim_ker != b.dim_ker || a.dim_coker != b.dim_coker) {
        throw Error(ErrorKind::UnstableWindow, "window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                                   "] and its double disagree");
    }
    return a;
}

SeriesMatrix mat_identity(const ContextPtr &ctx, int n)
{
    SeriesMatrix I(static_cast<std::size_t>(n), std::vector<LaurentSeries>(static_cast<std::size_t>(n), zero_like(ctx)));
    for (int i = 0; i < n; ++i) {
        I[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = LaurentSeries::constant(ctx, 1.0);
    }
    return I;
}

SeriesMatrix mat_mul(const SeriesMatrix &A, const SeriesMatrix &B)
{
    const std::size_t n = A.size();
    const std::size_t m = B.front().size();
    const std::size_t k = B.size();
    const ContextPtr &ctx = A.front().front().context();
    SeriesMatrix C(n, std::vector<LaurentSeries>(m, zero_like(ctx)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            LaurentSeries s = mul(A[i][0], B[0][j]);
            for (std::size_t l = 1; l < k; ++l) {
                s = add(s, mul(A[i][l], B[l][j]));
            }
            C[i][j] = s;
        }
    }
    return C;
}

SeriesMatrix mat_sigma(const SeriesMatrix &A, long long k)
{
    SeriesMatrix B = A;
    for (auto &row : B) {
        for (LaurentSeries &a : row) {
            a = sigma_pow(a, k);
        }
    }
    return B;
}

SeriesMatrix mat_inverse(const SeriesMatrix &A0)
{
    const std::size_t n = A0.size();
    const ContextPtr &ctx = A0.front().front().context();
    SeriesMatrix A = A0;
    SeriesMatrix I = mat_identity(ctx, static_cast<int>(n));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r) {
            if (!A[r][col].is_zero() && (piv == n || A[r][col].v0() < A[piv][col].v0())) {
                piv = r;
            }
        }
        if (piv == n) {
            throw Error(ErrorKind::SingularGauge, "gauge matrix is not invertible");
        }
        std::swap(A[col], A[piv]);
        std::swap(I[col], I[piv]);
        const LaurentSeries inv = invert(A[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            A[col][j] = mul(inv, A[col][j]);
            I[col][j] = mul(inv, I[col][j]);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col].is_zero()) {
                continue;
            }
            const LaurentSeries f = A[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                A[r][j] = sub(A[r][j], mul(f, A[col][j]));
                I[r][j] = sub(I[r][j], mul(f, I[col][j]));
            }
        }
    }
    return I;
}

std::vector<LaurentSeries> mat_apply(const SeriesMatrix &A, const std::vector<LaurentSeries> &x)
{
    std::vector<LaurentSeries> y;
    for (const auto &row : A) {
        LaurentSeries s = mul(row[0], x[0]);
        for (std::size_t j = 1; j < x.size(); ++j) {
            s = add(s, mul(row[j], x[j]));
        }
        y.push_back(s);
    }
    return y;
}

double max_abs_diff(const SeriesMatrix &A, const SeriesMatrix &B, int upto)
{
    double m = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = 0; j < A[i].size(); ++j) {
            m = std::max(m, max_abs_diff(A[i][j], B[i][j], upto));
        }
    }
    return m;
}

CompanionSystem vectorialize(const OreOperator &P)
{
    if (P.is_zero()) {
        throw Error(ErrorKind::ZeroOperator, "companion system of the zero operator");
    }
    if (P.min_deg() != 0) {
        throw Error(ErrorKind::InvalidArgument, "operator must have sigma-degrees starting at 0");
    }
    const ContextPtr &ctx = P.context();
    const int n = P.max_deg();
    for (const auto &[i, a] : P.terms()) {
        if (a.v0() < 0) {
            throw Error(ErrorKind::InvalidArgument, "operator coefficients must be power series");
        }
    }
    const LaurentSeries &an = P.terms().rbegin()->second;
    if (max_abs_diff(an, LaurentSeries::constant(ctx, 1.0), an.known_to()) > ctx->tol_zero) {
        throw Error(ErrorKind::NotMonic, "leading coefficient is not 1");
    }
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "operator of order 0");
    }
    if (P.coeff(0).is_zero()) {
        throw Error(ErrorKind::SingularConstantTerm, "a_0 vanishes");
    }
    CompanionSystem S;
    S.A = SeriesMatrix(static_cast<std::size_t>(n), std::vector<LaurentSeries>(static_cast<std::size_t>(n), zero_like(ctx)));
    for (int i = 0; i + 1 < n; ++i) {
        S.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = LaurentSeries::constant(ctx, 1.0);
    }
    for (int j = 0; j < n; ++j) {
        S.A[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(j)] = neg(P.coeff(j));
    }
    return S;
}

CompanionSystem gauge_system(const CompanionSystem &A, const SeriesMatrix &F)
{
    return {mat_mul(mat_mul(mat_sigma(F, 1), A.A), mat_inverse(F))};
}

LaurentSeries borel_ramis(const LaurentSeries &f, int d)
{
    if (f.is_zero()) {
        return f;
    }
    const QContext &ctx = *f.context();
    std::vector<cplx> c = f.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
        const long long n = f.v0() + static_cast<long long>(k);
        c[k] /= q_pow(ctx, static_cast<long long>(d) * (n * (n - 1) / 2));
        if (!std::isfinite(c[k].real()) || !std::isfinite(c[k].imag())) {
            c[k] = 0.0;
        }
    }
    return LaurentSeries::with_scales(f.context(), f.v0(), std::move(c), f.known_to(), nullptr);
}

std::vector<cplx> borel_obstruction(const std::vector<LaurentSeries> &g, int d, const Eigen::MatrixXcd &A0)
{
    if (d < 1) {
        throw Error(ErrorKind::InvalidArgument, "d must be positive");
    }
    check_a0(A0);
    if (static_cast<Eigen::Index>(g.size()) != A0.rows()) {
        throw Error(ErrorKind::InvalidArgument, "dimension mismatch between g and A0");
    }
    const QContext &ctx = *g.front().context();
    std::vector<cplx> out;
    for (int i = 0; i < d; ++i) {
        const Eigen::MatrixXcd a = A0 / q_pow(ctx, i);
        const Eigen::VectorXcd z = class_value(ctx, g, d, i, a);
        for (Eigen::Index j = 0; j < z.size(); ++j) {
            out.push_back(z(j));
        }
    }
    return out;
}

std::vector<cplx> borel_obstruction(const LaurentSeries &g, int d, cplx A0)
{
    Eigen::MatrixXcd a(1, 1);
    a(0, 0) = A0;
    return borel_obstruction(std::vector<LaurentSeries>{g}, d, a);
}

CokernelSplit cokernel_projection(const std::vector<LaurentSeries> &Y, int d, const Eigen::MatrixXcd &A0)
{
    if (d < 1) {
        throw Error(ErrorKind::InvalidArgument, "d must be positive");
    }
    check_a0(A0);
    const Eigen::Index n = A0.rows();
    if (static_cast<Eigen::Index>(Y.size()) != n) {
        throw Error(ErrorKind::InvalidArgument, "dimension mismatch between Y and A0");
    }
    const ContextPtr &ctx = Y.front().context();
    const cplx Q = q_pow(*ctx, d);
    CokernelSplit out;
    out.Z.assign(static_cast<std::size_t>(n), std::vector<cplx>(static_cast<std::size_t>(d), cplx(0.0)));
    // coefficient maps per component for X
    std::vector<std::map<long long, cplx>> xs(static_cast<std::size_t>(n));
    long long known = INT32_MAX;
    for (int i = 0; i < d; ++i) {
        const cplx qi = q_pow(*ctx, i);
        const Eigen::MatrixXcd a = A0 / qi;
        const Eigen::VectorXcd Zi = class_value(*ctx, Y, d, i, a);
        for (Eigen::Index j = 0; j < n; ++j) {
            out.Z[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = Zi(j);
        }
        ClassRange cr = class_range(Y, d, i);
        cr.kmin = std::min(cr.kmin, 0LL);
        const long long K = cr.kmax + 1;
        known = std::min(known, static_cast<long long>(i) + static_cast<long long>(d) * cr.kmax - 1);
        // x_{k-1} = (y_k / q^i + a x_k) / Q^{k-1}, run downwards from x_K = 0.  Dividing by Q^{k-1}
        // keeps the recursion contracting; the Q^{k(k-1)/2} scaling of the closed form would overflow.
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
        for (long long k = K; k > cr.kmin; --k) {
            Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
            if (k <= cr.kmax) {
                y = coeff_vector(Y, static_cast<int>(i + static_cast<long long>(d) * k));
            }
            if (k == 0) {
                y -= Zi;
            }
            x = (y / qi + a * x) / ipow(Q, k - 1);
            for (Eigen::Index j = 0; j < n; ++j) {
                const cplx v = x(j);
                if (std::isfinite(v.real()) && std::isfinite(v.imag()) && v != 0.0) {
                    xs[static_cast<std::size_t>(j)][i + static_cast<long long>(d) * (k - 1)] = v;
                }
            }
        }
    }
    const int kt = static_cast<int>(std::max<long long>(known, -1));
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto &m = xs[static_cast<std::size_t>(j)];
        std::vector<cplx> c;
        int v0 = kt + 1;
        for (const auto &[e, x] : m) {
            if (e > kt) {
                break;
            }
            if (c.empty()) {
                v0 = static_cast<int>(e);
            }
            c.resize(static_cast<std::size_t>(e - v0 + 1), cplx(0.0));
            c.back() = x;
        }
        out.X.push_back(c.empty() ? LaurentSeries::zero(ctx, kt)
                                  : LaurentSeries::from_coeffs(ctx, v0, std::move(c), kt));
    }
    return out;
}

namespace kernels
{

Eigen::MatrixXcd window_matrix_serial(const OreOperator &P, int lo, int hi)
{
    const int n = hi - lo + 1;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int c = lo; c <= hi; ++c) {
        fill_column(P, lo, hi, c, M);
    }
    return M;
}

Eigen::MatrixXcd window_matrix_omp(const OreOperator &P, int lo, int hi)
{
    const int n = hi - lo + 1;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
#pragma omp parallel for schedule(static)
    for (int c = lo; c <= hi; ++c) {
        fill_column(P, lo, hi, c, M);
    }
    return M;
}

} // namespace kernels

} // namespace qdiff
