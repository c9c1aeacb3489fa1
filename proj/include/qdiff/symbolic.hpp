#ifndef QDIFF_SYMBOLIC_HPP
#define QDIFF_SYMBOLIC_HPP

#include <qdiff/ore.hpp>

#include <vector>

namespace qdiff
{

// sum_k comps[k] l_q^{(k)} with l_q^{(k)} = binomial(l_q, k).  Empty means zero.
struct LogPolynomial {
    std::vector<LaurentSeries> comps;

    static LogPolynomial constant(const LaurentSeries &a);

    bool is_zero() const
    {
        return comps.empty();
    }
    // Highest log index; -1 for zero.
    int degree() const
    {
        return static_cast<int>(comps.size()) - 1;
    }
    // Component k, or the zero series.
    LaurentSeries comp(int k, const ContextPtr &ctx) const;
    int known_to() const;
    double max_abs() const;
};

// Drops vanishing top components.
LogPolynomial trim(LogPolynomial f);
LogPolynomial log_add(const LogPolynomial &a, const LogPolynomial &b);
LogPolynomial log_scale(const LogPolynomial &a, cplx c);
LogPolynomial log_mul_series(const LaurentSeries &u, const LogPolynomial &a);
LogPolynomial log_shift(const LogPolynomial &a, int k);
// sigma_q^i, using sigma^i l^(k) = sum_j binomial(i, j) l^(k-j).
LogPolynomial log_sigma_pow(const LogPolynomial &a, long long i);
// Product in the binomial basis.
LogPolynomial log_mul(const LogPolynomial &a, const LogPolynomial &b);
// sum_i b_i sigma^i(F)
LogPolynomial apply_log(const OreOperator &P, const LogPolynomial &F);
double max_abs_diff(const LogPolynomial &a, const LogPolynomial &b, int upto);

// Generalized binomial coefficient i(i-1)...(i-j+1)/j! for any integer i.
double binomial(long long i, int j);

// e_{q,c} Theta_q^{-mu} poly
struct SymbolicTerm {
    cplx c;
    int mu;
    LogPolynomial poly;
};

// Finite sum of terms keyed by (cbar, mu), with 1 <= |cbar| < |q| and the q^eps part of c
// folded into the series as z^eps (e_{q,q} = z).
class SymbolicSolution
{
public:
    SymbolicSolution() = default;
    explicit SymbolicSolution(ContextPtr ctx) : m_ctx(std::move(ctx)) {}

    static SymbolicSolution term(ContextPtr ctx, cplx c, int mu, const LogPolynomial &poly);
    static SymbolicSolution series(const LaurentSeries &f);

    const ContextPtr &context() const
    {
        return m_ctx;
    }
    const std::vector<SymbolicTerm> &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    // Adds a term, normalizing c and merging with an existing key.
    void add_term(cplx c, int mu, const LogPolynomial &poly);
    int known_to() const;
    double max_abs() const;
    // Highest log degree over all terms.
    int log_degree() const;

private:
    ContextPtr m_ctx;
    std::vector<SymbolicTerm> m_terms;
};

SymbolicSolution sym_add(const SymbolicSolution &a, const SymbolicSolution &b);
SymbolicSolution sym_scale(const SymbolicSolution &a, cplx c);
SymbolicSolution sym_mul_series(const LaurentSeries &u, const SymbolicSolution &a);
// Product in the symbol algebra: e_{q,c} e_{q,d} = e_{q,cd}, Theta powers add.
SymbolicSolution sym_mul(const SymbolicSolution &a, const SymbolicSolution &b);
SymbolicSolution sym_sigma_pow(const SymbolicSolution &a, long long i);
// Largest coefficient over all terms, log components and exponents up to `upto`.
double sym_max_abs(const SymbolicSolution &a, int upto);

// P applied termwise: P(e Theta^{-mu} F) = e Theta^{-mu} P^[cbar z^{-mu}](F).
SymbolicSolution apply_symbolic(const OreOperator &P, const SymbolicSolution &s);

// Numeric value at z through e_qc_eval, big_theta and l_q_eval.
cplx evaluate(const SymbolicSolution &s, cplx z);

} // namespace qdiff

#endif
