#ifndef SIMVAL_PARSER_HPP
#define SIMVAL_PARSER_HPP

#include <string>
#include <string_view>

#include "simval/assertion.hpp"

namespace simval {

// Assertion DSL.
//
//   expr     := term ('|' term)*
//   term     := factor ('&' factor)*
//   factor   := '!' factor | '(' expr ')' | atom
//   atom     := IDENT 'in' interval
//             | IDENT 'in' '{' label (',' label)* '}'
//             | IDENT ('==' | '!=' | '<' | '<=' | '>' | '>=') literal
//             | 'true' | 'false'
//   interval := ('[' | '(') number ',' number (']' | ')')
//
// 'true' denotes the universe and 'false' the empty set (they give the
// canonical renderer a spelling for both). Comparisons desugar to intervals
// against the declared domain, e.g. s <= 30 to s in [lo, 30]. Whitespace is
// insignificant; '#' starts a comment running to end of line.
//
// Parsers are reentrant and keep no global state.
AssertionSet parse_assertion(std::string_view text, const Alphabet& alphabet);

// Canonical, re-parseable text: boxes sorted, atoms sorted by variable name,
// shortest round-trip number formatting. parse(render(E)) is semantically
// equal to E; rendering is byte-stable for equal normal forms.
std::string render_assertion(const AssertionSet& set);

}  // namespace simval

#endif  // SIMVAL_PARSER_HPP
