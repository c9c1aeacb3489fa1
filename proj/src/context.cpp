#include <qdiff/context.hpp>
#include <qdiff/error.hpp>

#include <cmath>
#include <string>

namespace qdiff
{

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::InvalidContext:
            return "InvalidContext";
        case ErrorKind::ZeroSeries:
            return "ZeroSeries";
        case ErrorKind::NonzeroConstantTerm:
            return "NonzeroConstantTerm";
        case ErrorKind::NonconvergedSum:
            return "NonconvergedSum";
        case ErrorKind::NearPole:
            return "NearPole";
        case ErrorKind::ZeroDivisor:
            return "ZeroDivisor";
        case ErrorKind::PrecisionExhausted:
            return "PrecisionExhausted";
        case ErrorKind::ZeroOperator:
            return "ZeroOperator";
        case ErrorKind::RootFindingFailure:
            return "RootFindingFailure";
        case ErrorKind::ResonantExponent:
            return "ResonantExponent";
        case ErrorKind::SlopeMissing:
            return "SlopeMissing";
        case ErrorKind::NotAnExponent:
            return "NotAnExponent";
        case ErrorKind::MultiplicityMismatch:
            return "MultiplicityMismatch";
        case ErrorKind::InsufficientData:
            return "InsufficientData";
        case ErrorKind::ConvergentObstruction:
            return "ConvergentObstruction";
        case ErrorKind::TruncationDominates:
            return "TruncationDominates";
        case ErrorKind::DivisionNearZero:
            return "DivisionNearZero";
        case ErrorKind::UnstableWindow:
            return "UnstableWindow";
        case ErrorKind::NotMonic:
            return "NotMonic";
        case ErrorKind::SingularConstantTerm:
            return "SingularConstantTerm";
        case ErrorKind::SingularGauge:
            return "SingularGauge";
        case ErrorKind::SingularA0:
            return "SingularA0";
        case ErrorKind::SyntaxError:
            return "SyntaxError";
        case ErrorKind::UnknownSymbol:
            return "UnknownSymbol";
        case ErrorKind::InvalidArgument:
            return "InvalidArgument";
    }
    return "Unknown";
}

cplx QContext::base_q() const
{
    return std::exp(tau * static_cast<double>(ramification));
}

ContextPtr make_context(cplx q, int trunc_order, Mode mode, double tol_zero, double tol_match)
{
    if (!(std::abs(q) > 1.0)) {
        throw Error(ErrorKind::InvalidContext, "|q| must be > 1");
    }
    if (trunc_order < 1) {
        throw Error(ErrorKind::InvalidContext, "truncation order must be >= 1");
    }
    if (!(tol_zero > 0.0) || !(tol_match > 0.0)) {
        throw Error(ErrorKind::InvalidContext, "tolerances must be positive");
    }
    auto ctx = std::make_shared<QContext>();
    ctx->q = q;
    ctx->tau = std::log(q);
    ctx->trunc_order = trunc_order;
    ctx->tol_zero = tol_zero;
    ctx->tol_match = tol_match;
    ctx->mode = mode;
    ctx->ramification = 1;
    return ctx;
}

ContextPtr ramified_context(const ContextPtr &ctx, int l)
{
    if (l < 1) {
        throw Error(ErrorKind::InvalidArgument, "ramification index must be >= 1");
    }
    if (l == 1) {
        return ctx;
    }
    auto out = std::make_shared<QContext>(*ctx);
    out->tau = ctx->tau / static_cast<double>(l);
    out->q = std::exp(out->tau);
    out->trunc_order = ctx->trunc_order * l;
    out->ramification = ctx->ramification * l;
    return out;
}

ContextPtr with_mode(const ContextPtr &ctx, Mode mode)
{
    auto out = std::make_shared<QContext>(*ctx);
    out->mode = mode;
    return out;
}

cplx q_pow(const QContext &ctx, long long k)
{
    return ipow(ctx.q, k);
}

cplx ipow(cplx c, long long k)
{
    cplx base = k >= 0 ? c : 1.0 / c;
    unsigned long long e = k >= 0 ? static_cast<unsigned long long>(k) : static_cast<unsigned long long>(-k);
    cplx result = 1.0;
    while (e != 0) {
        if (e & 1ULL) {
            result *= base;
        }
        e >>= 1;
        if (e != 0) {
            base *= base;
        }
    }
    return result;
}

QDecomposition decompose(const QContext &ctx, cplx c)
{
    if (c == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "cannot decompose 0 modulo q^Z");
    }
    const double lq = std::log(std::abs(ctx.q));
    int eps = static_cast<int>(std::floor(std::log(std::abs(c)) / lq));
    cplx cbar = c / q_pow(ctx, eps);
    // Snap values that land on the annulus boundary through roundoff.
    const double r = std::abs(cbar);
    if (r < 1.0 && 1.0 - r <= ctx.tol_match) {
        --eps;
        cbar = c / q_pow(ctx, eps);
    } else if (r >= std::abs(ctx.q) * (1.0 - ctx.tol_match)) {
        ++eps;
        cbar = c / q_pow(ctx, eps);
    }
    if (std::abs(cbar - 1.0) <= ctx.tol_match) {
        cbar = 1.0;
    }
    return {eps, cbar};
}

bool same_q_class(const QContext &ctx, cplx c1, cplx c2, int *l)
{
    if (c1 == 0.0 || c2 == 0.0) {
        return false;
    }
    const cplx ratio = c1 / c2;
    const long long cand = std::llround(std::log(std::abs(ratio)) / std::log(std::abs(ctx.q)));
    const cplx qp = q_pow(ctx, cand);
    if (std::abs(ratio - qp) <= ctx.tol_match * std::abs(qp)) {
        if (l != nullptr) {
            *l = static_cast<int>(cand);
        }
        return true;
    }
    return false;
}

} // namespace qdiff
