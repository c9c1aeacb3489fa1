#ifndef QDIFF_SPECIAL_HPP
#define QDIFF_SPECIAL_HPP

#include <qdiff/context.hpp>

#include <span>

namespace qdiff
{

// Pointwise values of the theta functions, the q-logarithm and the q-characters.
// Negative exclusion radii select the default 1e-3 * |z|.

// sum_n (-1)^n q^{-n(n-1)/2} z^n; zeros on q^Z.
cplx theta(const QContext &ctx, cplx z);

// sum_n q^{-n(n+1)/2} z^n = theta(-z/q); satisfies Theta(qz) = z Theta(z), zeros on -q^Z.
cplx big_theta(const QContext &ctx, cplx z);

// z Theta'(z) summed termwise.
cplx big_theta_zderiv(const QContext &ctx, cplx z);

// l_q(z) = z Theta'(z) / Theta(z); sigma_q l_q = l_q + 1.
cplx l_q_eval(const QContext &ctx, cplx z, double exclusion_radius = -1.0);

// e_{q,c}(z) = Theta(z) / Theta(z / c); sigma_q e_{q,c} = c e_{q,c}.
cplx e_qc_eval(const QContext &ctx, cplx c, cplx z, double exclusion_radius = -1.0);

// (p;p)_inf (z;p)_inf (p/z;p)_inf with p = 1/q, the product form of theta.
cplx theta_triple_product(const QContext &ctx, cplx z);

// min_k |z - a q^k|.
double spiral_distance(const QContext &ctx, cplx a, cplx z);

namespace kernels
{

void big_theta_batch_serial(const QContext &ctx, std::span<const cplx> z, std::span<cplx> out);
void big_theta_batch(const QContext &ctx, std::span<const cplx> z, std::span<cplx> out);

} // namespace kernels

} // namespace qdiff

#endif
