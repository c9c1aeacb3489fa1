#ifndef QDIFF_INDEX_HPP
#define QDIFF_INDEX_HPP

#include <qdiff/ore.hpp>

#include <Eigen/Dense>

#include <vector>

namespace qdiff
{

struct IndexReport {
    int dim_ker = 0;
    int dim_coker = 0;
    int index = 0;
    Mode mode = Mode::Formal;
};

// Kernel/cokernel of sigma_q - d z^nu acting on K (mode taken from the context).
IndexReport first_order_index(const QContext &ctx, cplx d, int nu);

// Index as the sum over the factors of a full factorization (scaled back by the ramification);
// the kernel is read off the solution basis.
IndexReport operator_index(const OreOperator &P);

// Numerical kernel/cokernel of P restricted to the exponent window [lo, hi] (square matrix,
// Formal semantics, z-adically weighted before the SVD).  The window [2 lo, 2 hi] is computed
// as well; UnstableWindow if they differ.
IndexReport truncated_rank_oracle(const OreOperator &P, int lo, int hi);

// Matrix of P on the exponent window [lo, hi]: entry (r, c) = sum_i a_i[r + v0(P) - c] q^{i c}.
Eigen::MatrixXcd window_matrix(const OreOperator &P, int lo, int hi);

using SeriesMatrix = std::vector<std::vector<LaurentSeries>>;

struct CompanionSystem {
    SeriesMatrix A;
};

SeriesMatrix mat_identity(const ContextPtr &ctx, int n);
SeriesMatrix mat_mul(const SeriesMatrix &A, const SeriesMatrix &B);
SeriesMatrix mat_sigma(const SeriesMatrix &A, long long k);
// Gauss-Jordan over Laurent series; SingularGauge when no invertible pivot exists.
SeriesMatrix mat_inverse(const SeriesMatrix &A);
std::vector<LaurentSeries> mat_apply(const SeriesMatrix &A, const std::vector<LaurentSeries> &x);
double max_abs_diff(const SeriesMatrix &A, const SeriesMatrix &B, int upto);

// sigma X = A X equivalent to P.f = 0 with X = (f, sigma f, ..., sigma^{n-1} f).
CompanionSystem vectorialize(const OreOperator &P);

// F[A] = sigma(F) A F^{-1}
CompanionSystem gauge_system(const CompanionSystem &A, const SeriesMatrix &F);

// sum f_n z^n -> sum f_n q^{-d n(n-1)/2} z^n
LaurentSeries borel_ramis(const LaurentSeries &f, int d = 1);

// Values Z_i = sum_k (A0 q^{-i})^k q^{-d k(k-1)/2} Y_{i,k} for each residue class i < d, where
// Y_{i,k} is the coefficient of z^{i + d k}.  Result is class-major: values[i * n + component].
// All values vanish iff g is in the image of z^d sigma - A0 on convergent series.
std::vector<cplx> borel_obstruction(const std::vector<LaurentSeries> &g, int d, const Eigen::MatrixXcd &A0);
std::vector<cplx> borel_obstruction(const LaurentSeries &g, int d, cplx A0);

struct CokernelSplit {
    std::vector<LaurentSeries> X;
    // Z[component][i]: coefficient of z^i, i < d
    std::vector<std::vector<cplx>> Z;
};

// Y = (z^d sigma - A0) X + Z with Z polynomial of degree < d.
CokernelSplit cokernel_projection(const std::vector<LaurentSeries> &Y, int d, const Eigen::MatrixXcd &A0);

namespace kernels
{

Eigen::MatrixXcd window_matrix_serial(const OreOperator &P, int lo, int hi);
Eigen::MatrixXcd window_matrix_omp(const OreOperator &P, int lo, int hi);

} // namespace kernels

} // namespace qdiff

#endif
