#pragma once

#include <charconv>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sparsesos/error.hpp"
#include "sparsesos/exponent.hpp"

namespace sparsesos {

/// Sparse multivariate polynomial over double coefficients.
///
/// Terms are kept in a map ordered by `Grlex`; a stored coefficient is never
/// zero and every key has exactly `nvars()` entries.  Arithmetic combines
/// exponents exactly and coefficients in plain floating point.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, double, Grlex>;

  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> varnames) : vars_(std::move(varnames)) {}

  static Polynomial constant(std::vector<std::string> varnames, double c) {
    Polynomial p(std::move(varnames));
    p.add_term(Exponent(p.nvars()), c);
    return p;
  }

  static Polynomial monomial(std::vector<std::string> varnames, Exponent e, double c = 1.0) {
    Polynomial p(std::move(varnames));
    p.add_term(std::move(e), c);
    return p;
  }

  // Variable i as a polynomial in the given context.
  static Polynomial variable(std::vector<std::string> varnames, std::size_t i) {
    Exponent e(varnames.size());
    e[i] = 1;
    return monomial(std::move(varnames), std::move(e));
  }

  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& varnames() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  double coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
  }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
    return d;
  }

  // Adds c*x^e, dropping the term if the result cancels to zero.
  void add_term(Exponent e, double c) {
    if (e.size() != nvars()) throw DimensionMismatch("term has wrong number of variables");
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_context(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_context(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_context(b);
    std::unordered_map<Exponent, double, ExponentHash> acc;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
    Polynomial r(a.vars_);
    for (auto& [e, c] : acc)
      if (c != 0.0) r.terms_.emplace(e, c);
    return r;
  }

  Polynomial pow(int k) const {
    Polynomial r = constant(vars_, 1.0);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Exact comparison of the term maps; variable names must agree.
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  void check_context(const Polynomial& o) const {
    if (o.nvars() != nvars()) throw DimensionMismatch("polynomials have different variable counts");
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

inline SupportSet support(const Polynomial& f) {
  SupportSet s;
  for (const auto& [e, c] : f.terms()) s.insert(s.end(), e);
  return s;
}

/// max_alpha |coeff_alpha(f - sum_i g_i^2)|.
inline double residual(const Polynomial& f, std::span<const Polynomial> gs) {
  std::unordered_map<Exponent, double, ExponentHash> acc;
  for (const auto& [e, c] : f.terms()) acc[e] += c;
  for (const auto& g : gs) {
    if (g.nvars() != f.nvars()) throw DimensionMismatch("certificate polynomial has wrong variable count");
    const auto& t = g.terms();
    for (auto i = t.begin(); i != t.end(); ++i) {
      acc[i->first.doubled()] -= i->second * i->second;
      for (auto j = std::next(i); j != t.end(); ++j) acc[i->first + j->first] -= 2.0 * i->second * j->second;
    }
  }
  double r = 0.0;
  for (const auto& [e, c] : acc) r = std::max(r, std::abs(c));
  return r;
}

inline std::string format_coefficient(double c) {
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof(buf), c, std::chars_format::fixed);
  if (res.ec != std::errc{}) res = std::to_chars(buf, buf + sizeof(buf), c);
  return std::string(buf, res.ptr);
}

inline std::string format_monomial(const Exponent& e, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += vars[i];
    if (e[i] > 1) s += '^' + std::to_string(e[i]);
  }
  return s;
}

/// Text form accepted back by `parse`; highest-degree terms first.
inline std::string format(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool neg = c < 0;
    const double mag = std::abs(c);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const std::string mono = format_monomial(e, f.varnames());
    if (mono.empty()) {
      out += format_coefficient(mag);
    } else {
      if (mag != 1.0) out += format_coefficient(mag) + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace sparsesos
