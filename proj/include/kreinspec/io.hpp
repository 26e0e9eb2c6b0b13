#pragma once

// Text formats. Complex entries are written as `re+imi` (e.g. `0.5+0.3i`,
// `1`, `-2i`); matrix files are line-oriented with a `dim N` header, `#`
// comments and whitespace-separated entries. The writer emits 17 significant
// digits so a written matrix re-reads to bit-identical doubles.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kreinspec/errors.hpp"
#include "kreinspec/matrix.hpp"

namespace kreinspec {

namespace detail {

inline double parse_real_strict(std::string_view piece, std::string_view whole) {
  if (piece.empty()) throw ParseError("empty number in complex token '" + std::string(whole) + "'");
  const std::string buf(piece);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size())
    throw ParseError("bad number '" + buf + "' in complex token '" + std::string(whole) + "'");
  if (!std::isfinite(v))
    throw ParseError("non-finite value in complex token '" + std::string(whole) + "'");
  return v;
}

}  // namespace detail

// Parses one whitespace-free token of the forms `1`, `-2.5e-3`, `i`, `-i`,
// `2i`, `re+imi`, `re-imi` (exponents allowed in both parts).
inline Complex parse_complex(std::string_view token) {
  if (token.empty()) throw ParseError("empty complex token");

  // split point: the last '+'/'-' that is not leading and not part of an
  // exponent; everything after it belongs to the imaginary part
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 1; i < token.size(); ++i) {
    const char c = token[i];
    if ((c == '+' || c == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') split = i;
  }

  const bool has_i = token.back() == 'i' || token.back() == 'I';
  if (!has_i) {
    if (split != std::string_view::npos)
      throw ParseError("real token '" + std::string(token) + "' has a trailing part");
    return Complex(detail::parse_real_strict(token, token), 0.0);
  }

  std::string_view imag_part;
  double re = 0.0;
  if (split == std::string_view::npos) {
    imag_part = token.substr(0, token.size() - 1);
  } else {
    re = detail::parse_real_strict(token.substr(0, split), token);
    imag_part = token.substr(split, token.size() - split - 1);
  }
  double im;
  if (imag_part.empty() || imag_part == "+")
    im = 1.0;
  else if (imag_part == "-")
    im = -1.0;
  else
    im = detail::parse_real_strict(imag_part, token);
  return Complex(re, im);
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

// Matrix file grammar: comments from '#' to end of line; first significant
// line `dim N`; then N*N complex entries in row-major order.
inline ComplexMatrix read_matrix(std::istream& in, const std::string& source = "<stream>") {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> tokens;
  std::size_t dim = 0;
  bool have_dim = false;

  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (!have_dim) {
        if (tok != "dim")
          throw ParseError(source + ":" + std::to_string(lineno) +
                           ": expected 'dim N' header, got '" + tok + "'");
        if (!(ls >> tok))
          throw ParseError(source + ":" + std::to_string(lineno) + ": missing dimension");
        char* end = nullptr;
        const long n = std::strtol(tok.c_str(), &end, 10);
        if (end != tok.c_str() + tok.size() || n < 1)
          throw ParseError(source + ":" + std::to_string(lineno) + ": bad dimension '" + tok +
                           "'");
        dim = static_cast<std::size_t>(n);
        have_dim = true;
      } else {
        tokens.push_back(tok);
      }
    }
  }
  if (!have_dim) throw ParseError(source + ": no 'dim N' header found");
  if (tokens.size() != dim * dim)
    throw ParseError(source + ": expected " + std::to_string(dim * dim) + " entries, found " +
                     std::to_string(tokens.size()));

  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      try {
        m(i, j) = parse_complex(tokens[i * dim + j]);
      } catch (const ParseError& e) {
        throw ParseError(source + ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                         "): " + e.what());
      }
    }
  return m;
}

inline ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  return read_matrix(in, path);
}

inline void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  out << "dim " << m.rows() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_complex(m(i, j));
    }
    out << "\n";
  }
}

}  // namespace kreinspec
