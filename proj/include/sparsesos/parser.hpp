#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sparsesos/error.hpp"
#include "sparsesos/polynomial.hpp"

namespace sparsesos {

namespace detail {

// Recursive-descent reader for
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := number | variable ['^' positive-integer]
// followed by an optional '.', whitespace anywhere.
class PolynomialReader {
 public:
  PolynomialReader(std::string_view text, std::vector<std::string> context) : s_(text) {
    for (auto& v : context) intern(v);
  }

  Polynomial read() {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "empty expression");
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    read_term(sign);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        read_term(c == '-' ? -1.0 : 1.0);
      } else if (c == '.') {
        ++pos_;
        skip_ws();
        if (!at_end()) throw SyntaxError(pos_, "unexpected input after terminating '.'");
        break;
      } else {
        throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
      }
    }
    Polynomial f(names_);
    for (auto& [coef, powers] : terms_) {
      Exponent e(names_.size());
      for (auto [v, k] : powers) e[v] += k;
      f.add_term(std::move(e), coef);
    }
    return f;
  }

 private:
  using RawTerm = std::pair<double, std::vector<std::pair<std::size_t, int>>>;

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::size_t intern(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, names_.size());
    if (inserted) names_.push_back(name);
    return it->second;
  }

  void read_term(double sign) {
    RawTerm t{sign, {}};
    read_factor(t);
    for (;;) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      read_factor(t);
    }
    terms_.push_back(std::move(t));
  }

  void read_factor(RawTerm& t) {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "expected a number or variable");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.first *= read_number();
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
      const std::size_t v = intern(std::string(s_.substr(start, pos_ - start)));
      int power = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        power = read_power();
      }
      t.second.emplace_back(v, power);
    } else {
      throw SyntaxError(pos_, std::string("expected a number or variable, got '") + c + "'");
    }
  }

  double read_number() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    // A '.' only belongs to the number when a digit follows; otherwise it is
    // the optional terminator.
    if (pos_ + 1 < s_.size() && peek() == '.' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    double v = 0.0;
    auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc{}) throw SyntaxError(start, "bad number");
    return v;
  }

  int read_power() {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "expected exponent after '^'");
    if (peek() == '-') throw NegativeExponent(pos_, "negative exponent");
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw SyntaxError(pos_, "expected integer exponent after '^'");
    int k = 0;
    auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, k);
    if (ec != std::errc{}) throw SyntaxError(start, "exponent out of range");
    if (k == 0) throw SyntaxError(start, "exponent must be positive");
    return k;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<RawTerm> terms_;
};

}  // namespace detail

/// Parses polynomial text.  Variables are numbered by first appearance; when
/// `context` is given its names come first in that order and any new names
/// are appended.
inline Polynomial parse(std::string_view text, std::vector<std::string> context = {}) {
  return detail::PolynomialReader(text, std::move(context)).read();
}

inline Polynomial parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace sparsesos
