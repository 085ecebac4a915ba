#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "latidx/lattice.hpp"

namespace latidx {

// Text format: first significant line holds n, then n rows of n entries,
// each an integer or p/q. '#' starts a comment; blank lines are ignored.
// Every problem is reported as a ParseError with line and column.
GramMatrix parse_gram(std::istream& in, const std::string& source = "<input>");
GramMatrix parse_gram_text(const std::string& text, const std::string& source = "<input>");
GramMatrix read_gram_file(const std::string& path);

// "12", "-3", "5/7"; nullopt for anything else, including a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

std::string format_gram_text(const GramMatrix& g);

}  // namespace latidx
