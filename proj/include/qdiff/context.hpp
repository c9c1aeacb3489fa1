#ifndef QDIFF_CONTEXT_HPP
#define QDIFF_CONTEXT_HPP

#include <complex>
#include <memory>

namespace qdiff
{

using cplx = std::complex<double>;

enum class Mode { Formal, Convergent };

// Global parameter pack shared (immutably) by every series and operator built on it.
//
// `q` is the working dilation factor: after ramification of level l it is q_l = exp(tau / l)
// and `ramification` records l. Coefficients are tracked for exponents <= trunc_order.
struct QContext {
    cplx q;
    cplx tau;
    int trunc_order = 40;
    double tol_zero = 1e-12;
    double tol_match = 1e-8;
    Mode mode = Mode::Formal;
    int ramification = 1;

    // Base parameter q_1 = q^ramification.
    cplx base_q() const;
};

using ContextPtr = std::shared_ptr<const QContext>;

// Builds a context with tau the principal logarithm of q. Throws InvalidContext if |q| <= 1
// or if a tolerance / truncation order is out of range.
ContextPtr make_context(cplx q, int trunc_order = 40, Mode mode = Mode::Formal, double tol_zero = 1e-12,
                        double tol_match = 1e-8);

// Context of the extension z = z_l^l: q_l = exp(tau / l), truncation scaled by l.
ContextPtr ramified_context(const ContextPtr &ctx, int l);

// Same parameters with a different solving mode.
ContextPtr with_mode(const ContextPtr &ctx, Mode mode);

// Unique decomposition c = q^eps * cbar with 1 <= |cbar| < |q|.
struct QDecomposition {
    int eps;
    cplx cbar;
};

QDecomposition decompose(const QContext &ctx, cplx c);

// True if c1 / c2 = q^l for some integer l (relative tolerance tol_match); l is written out.
bool same_q_class(const QContext &ctx, cplx c1, cplx c2, int *l = nullptr);

// Integer power by binary powering.
cplx ipow(cplx c, long long k);

// Integer power of the context's q.
cplx q_pow(const QContext &ctx, long long k);

} // namespace qdiff

#endif
