#ifndef QDIFF_ERROR_HPP
#define QDIFF_ERROR_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdiff
{

enum class ErrorKind {
    InvalidContext,
    ZeroSeries,
    NonzeroConstantTerm,
    NonconvergedSum,
    NearPole,
    ZeroDivisor,
    PrecisionExhausted,
    ZeroOperator,
    RootFindingFailure,
    ResonantExponent,
    SlopeMissing,
    NotAnExponent,
    MultiplicityMismatch,
    InsufficientData,
    ConvergentObstruction,
    TruncationDominates,
    DivisionNearZero,
    UnstableWindow,
    NotMonic,
    SingularConstantTerm,
    SingularGauge,
    SingularA0,
    SyntaxError,
    UnknownSymbol,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), m_kind(kind) {}

    ErrorKind kind() const noexcept
    {
        return m_kind;
    }

private:
    ErrorKind m_kind;
};

// Parse failure with a 1-based source position.
class SyntaxError : public Error
{
public:
    SyntaxError(ErrorKind kind, const std::string &what, int line, int column)
        : Error(kind, what), m_line(line), m_column(column)
    {
    }

    int line() const noexcept
    {
        return m_line;
    }
    int column() const noexcept
    {
        return m_column;
    }

private:
    int m_line;
    int m_column;
};

// Raised when a convergent solution cannot be guaranteed; carries the values of the
// Borel obstruction functionals for the offending right-hand side.
class ObstructionError : public Error
{
public:
    ObstructionError(const std::string &what, std::vector<std::complex<double>> values)
        : Error(ErrorKind::ConvergentObstruction, what), m_values(std::move(values))
    {
    }

    const std::vector<std::complex<double>> &values() const noexcept
    {
        return m_values;
    }

private:
    std::vector<std::complex<double>> m_values;
};

} // namespace qdiff

#endif
