#ifndef QDIFF_SOLVE_HPP
#define QDIFF_SOLVE_HPP

#include <qdiff/factor.hpp>
#include <qdiff/symbolic.hpp>

#include <utility>
#include <vector>

namespace qdiff
{

// f with (sigma_q - 1) f = g, the new constant in component 0 pinned to zero.
LogPolynomial q_integrate(const LogPolynomial &g);

// Solves (C z^m sigma - 1) F = G on K[l_q] (one symbolic component).
LogPolynomial solve_phi(const QContext &ctx, cplx C, int m, const LogPolynomial &G);

// A particular f with (d z^nu sigma - 1) f = target.  In Convergent mode a component with
// nu > mu raises ObstructionError carrying the Borel obstruction values.
SymbolicSolution solve_first_order(cplx d, int nu, const SymbolicSolution &target);

// Solutions in the variable of the (possibly ramified) factorization, rightmost factor first.
struct SolutionBasis {
    Factorization factorization;
    std::vector<SymbolicSolution> solutions;
};

SolutionBasis solve_all_formal(const OreOperator &P);
std::vector<SymbolicSolution> solve_all_formal_list(const OreOperator &P);

// Solutions of the pure right factor of the last slope.
SolutionBasis adams_solutions(const OreOperator &P);

// det(sigma_q^i f_j) in the symbol algebra.
SymbolicSolution q_wronskian(const std::vector<SymbolicSolution> &fs);

// Extends values of a solution of P from the sample points to the targets through
// f(z) = -sum_{i<beta} a_i(w) f(q^i w) / a_beta(w),  w = q^{-beta} z (degrees shifted to start at 0).
// Targets are processed by increasing modulus; computed values feed later targets.
std::vector<std::pair<cplx, cplx>> continue_meromorphic(const OreOperator &P,
                                                        const std::vector<std::pair<cplx, cplx>> &samples,
                                                        const std::vector<cplx> &targets);
// Targets q * z for every sample z.
std::vector<std::pair<cplx, cplx>> continue_meromorphic(const OreOperator &P,
                                                        const std::vector<std::pair<cplx, cplx>> &samples);

} // namespace qdiff

#endif
