#ifndef QDIFF_PARSE_HPP
#define QDIFF_PARSE_HPP

#include <qdiff/ore.hpp>

#include <string>
#include <string_view>

namespace qdiff
{

// Grammar (whitespace-insensitive):
//   expr    := term (('+' | '-') term)*
//   term    := unary (['*'] unary)*          juxtaposition multiplies
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' ['+' | '-'] integer)?
//   primary := number ['i'] | 'i' | 'q' | 'z' | 'S' | '(' expr ')'
// S is sigma_q.  Negative powers are accepted for single-term operands.
OreOperator parse_operator(std::string_view text, const ContextPtr &ctx);

// A constant expression such as "3+0.1i" (q is not allowed since it is being defined).
cplx parse_complex(std::string_view text);

// Text that parse_operator maps back to the same coefficients, e.g. "((1)*z^0+(1)*z^1)*S^1".
std::string render_operator(const OreOperator &P);

} // namespace qdiff

#endif
