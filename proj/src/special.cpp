#include <qdiff/error.hpp>
#include <qdiff/special.hpp>

#include <algorithm>
#include <cmath>

namespace qdiff
{

namespace
{

constexpr int kMaxTerms = 200;

double cutoff(const QContext &ctx)
{
    return std::min(ctx.tol_zero, 1e-17);
}

// Sums t_n for n >= 0 and n < 0 given the two step ratios; also accumulates sum n t_n.
template <class Up, class Down>
void symmetric_sum(const QContext &ctx, Up up, Down down, cplx &sum, cplx &nsum)
{
    const double tol = cutoff(ctx);
    sum = 1.0;
    nsum = 0.0;
    double peak = 1.0;
    for (int dir = 0; dir < 2; ++dir) {
        cplx t = 1.0;
        double prev = 1.0;
        bool done = false;
        for (int k = 0; k < kMaxTerms; ++k) {
            const int n = dir == 0 ? k : -k;
            t *= dir == 0 ? up(n) : down(n);
            const int m = dir == 0 ? n + 1 : n - 1;
            const double a = std::abs(t);
            if (!std::isfinite(a)) {
                throw Error(ErrorKind::NonconvergedSum, "theta series term overflow");
            }
            sum += t;
            nsum += static_cast<double>(m) * t;
            peak = std::max(peak, a);
            if (a < prev && a <= tol * std::max(std::abs(sum), peak)) {
                done = true;
                break;
            }
            prev = a;
        }
        if (!done) {
            throw Error(ErrorKind::NonconvergedSum, "theta series did not converge within the term cap");
        }
    }
}

void check_spiral(const QContext &ctx, cplx a, cplx z, double radius)
{
    const double r = radius < 0.0 ? 1e-3 * std::abs(z) : radius;
    if (spiral_distance(ctx, a, z) <= r) {
        throw Error(ErrorKind::NearPole, "evaluation point too close to a pole spiral");
    }
}

} // namespace

double spiral_distance(const QContext &ctx, cplx a, cplx z)
{
    const double lq = std::log(std::abs(ctx.q));
    const long long k0 = std::llround(std::log(std::abs(z) / std::abs(a)) / lq);
    double best = std::abs(z - a * q_pow(ctx, k0));
    for (long long k = k0 - 1; k <= k0 + 1; k += 2) {
        best = std::min(best, std::abs(z - a * q_pow(ctx, k)));
    }
    return best;
}

cplx theta(const QContext &ctx, cplx z)
{
    if (z == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "theta at z = 0");
    }
    cplx s, ns;
    // t_{n+1}/t_n = -z q^{-n},  t_{n-1}/t_n = -q^{n-1}/z
    symmetric_sum(
        ctx, [&](int n) { return -z * q_pow(ctx, -n); }, [&](int n) { return -q_pow(ctx, n - 1) / z; }, s, ns);
    return s;
}

cplx big_theta(const QContext &ctx, cplx z)
{
    if (z == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "Theta at z = 0");
    }
    cplx s, ns;
    // t_{n+1}/t_n = z q^{-(n+1)},  t_{n-1}/t_n = q^n / z
    symmetric_sum(
        ctx, [&](int n) { return z * q_pow(ctx, -(n + 1)); }, [&](int n) { return q_pow(ctx, n) / z; }, s, ns);
    return s;
}

cplx big_theta_zderiv(const QContext &ctx, cplx z)
{
    if (z == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "Theta' at z = 0");
    }
    cplx s, ns;
    symmetric_sum(
        ctx, [&](int n) { return z * q_pow(ctx, -(n + 1)); }, [&](int n) { return q_pow(ctx, n) / z; }, s, ns);
    return ns;
}

cplx l_q_eval(const QContext &ctx, cplx z, double exclusion_radius)
{
    if (z == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "l_q at z = 0");
    }
    check_spiral(ctx, -1.0, z, exclusion_radius);
    cplx s, ns;
    symmetric_sum(
        ctx, [&](int n) { return z * q_pow(ctx, -(n + 1)); }, [&](int n) { return q_pow(ctx, n) / z; }, s, ns);
    return ns / s;
}

cplx e_qc_eval(const QContext &ctx, cplx c, cplx z, double exclusion_radius)
{
    if (c == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "q-character with c = 0");
    }
    if (z == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "q-character at z = 0");
    }
    if (c == 1.0) {
        return 1.0;
    }
    check_spiral(ctx, -1.0, z, exclusion_radius);
    check_spiral(ctx, -c, z, exclusion_radius);
    return big_theta(ctx, z) / big_theta(ctx, z / c);
}

cplx theta_triple_product(const QContext &ctx, cplx z)
{
    if (z == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "triple product at z = 0");
    }
    const cplx p = 1.0 / ctx.q;
    const double tol = cutoff(ctx);
    cplx prod = 1.0;
    cplx pk = 1.0; // p^k
    for (int k = 0;; ++k) {
        if (k >= 4 * kMaxTerms) {
            throw Error(ErrorKind::NonconvergedSum, "triple product did not converge");
        }
        const cplx pk1 = pk * p;
        const cplx f1 = 1.0 - pk1;     // (p;p)
        const cplx f2 = 1.0 - z * pk;  // (z;p)
        const cplx f3 = 1.0 - pk1 / z; // (p/z;p)
        prod *= f1 * f2 * f3;
        if (std::abs(f1 - 1.0) <= tol && std::abs(f2 - 1.0) <= tol && std::abs(f3 - 1.0) <= tol) {
            break;
        }
        pk = pk1;
    }
    return prod;
}

namespace kernels
{

void big_theta_batch_serial(const QContext &ctx, std::span<const cplx> z, std::span<cplx> out)
{
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = big_theta(ctx, z[i]);
    }
}

void big_theta_batch(const QContext &ctx, std::span<const cplx> z, std::span<cplx> out)
{
    const long long n = static_cast<long long>(z.size());
    bool failed = false;
#pragma omp parallel for schedule(static) if (n > 64)
    for (long long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = big_theta(ctx, z[static_cast<std::size_t>(i)]);
        } catch (const Error &) {
#pragma omp atomic write
            failed = true;
        }
    }
    if (failed) {
        big_theta_batch_serial(ctx, z, out);
    }
}

} // namespace kernels

} // namespace qdiff
