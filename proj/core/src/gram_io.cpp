#include "latidx/gram_io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace latidx {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer to_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer(text)) return std::nullopt;
    return Rational(to_integer(text));
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
    return std::nullopt;
  Integer q = to_integer(den);
  if (sgn(q) == 0) return std::nullopt;
  Rational r(to_integer(num), q);
  r.canonicalize();
  return r;
}

GramMatrix parse_gram(std::istream& in, const std::string& source) {
  // rows of tokens, one entry per significant line
  std::vector<std::vector<Token>> lines;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i])) || raw[i] == ',') {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) && raw[i] != ',')
        ++i;
      tokens.push_back({raw.substr(start, i - start), line_no, start + 1});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  if (in.bad()) throw ParseError(source, line_no, 1, "read error");
  if (lines.empty()) throw ParseError(source, line_no + 1, 1, "empty input: expected the dimension n");

  const auto& header = lines[0];
  if (header.size() != 1 || !valid_integer(header[0].text))
    throw ParseError(source, header[0].line, header[0].column,
                     "first line must hold the dimension n as a single integer");
  Integer n_big = to_integer(header[0].text);
  if (n_big < 1 || n_big > 64)
    throw ParseError(source, header[0].line, header[0].column,
                     "dimension must be between 1 and 64, got " + header[0].text);
  const std::size_t n = n_big.get_ui();

  if (lines.size() - 1 < n) {
    const std::size_t where = lines.back().back().line + 1;
    throw ParseError(source, where, 1,
                     "expected " + std::to_string(n) + " rows, found " +
                         std::to_string(lines.size() - 1));
  }
  if (lines.size() - 1 > n) {
    const auto& extra = lines[n + 1][0];
    throw ParseError(source, extra.line, extra.column,
                     "unexpected content after " + std::to_string(n) + " rows");
  }

  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = lines[i + 1];
    if (row.size() != n) {
      const auto& at = row.size() > n ? row[n] : row.back();
      throw ParseError(source, at.line, row.size() > n ? at.column : at.column + at.text.size(),
                       "row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Token& t = row[j];
      const auto slash = t.text.find('/');
      if (slash == std::string::npos) {
        if (!valid_integer(t.text))
          throw ParseError(source, t.line, t.column,
                           "malformed entry '" + t.text + "': expected an integer or p/q");
        m(i, j) = Rational(to_integer(t.text));
        continue;
      }
      std::string_view num = std::string_view(t.text).substr(0, slash);
      std::string_view den = std::string_view(t.text).substr(slash + 1);
      if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
        throw ParseError(source, t.line, t.column,
                         "malformed entry '" + t.text + "': expected an integer or p/q");
      Integer q = to_integer(den);
      if (sgn(q) == 0)
        throw ParseError(source, t.line, t.column, "zero denominator in '" + t.text + "'");
      m(i, j) = Rational(to_integer(num), q);
      m(i, j).canonicalize();
    }
  }

  try {
    return make_gram(std::move(m));
  } catch (const GramError& e) {
    const Token& t = lines[e.row() + 1][e.col()];
    throw ParseError(source, t.line, t.column, e.what());
  }
}

GramMatrix parse_gram_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_gram(in, source);
}

GramMatrix read_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return parse_gram(in, path);
}

std::string format_gram_text(const GramMatrix& g) {
  std::string out = std::to_string(g.dim()) + "\n";
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (j) out += ' ';
      out += to_string(g(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace latidx
