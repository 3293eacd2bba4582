#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "rgkit/real.hpp"

namespace rg {

/// Polynomial in one variable t with exact rational coefficients,
/// stored dense from the constant term up.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<Rat> coeffs_low_to_high)
      : coeffs_(coeffs_low_to_high) {
    trim();
  }
  explicit Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly monomial(const Rat& c, int degree) {
    std::vector<Rat> v(degree + 1, Rat(0));
    v[degree] = c;
    return Poly(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  Rat coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : Rat(0);
  }

  void add_term(const Rat& c, int degree) {
    if (c == 0) return;
    if (degree >= static_cast<int>(coeffs_.size()))
      coeffs_.resize(degree + 1, Rat(0));
    coeffs_[degree] += c;
    trim();
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rat> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      d[i - 1] = coeffs_[i] * Rat(static_cast<int>(i));
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& x, const Poly& y) {
    std::vector<Rat> v(std::max(x.coeffs_.size(), y.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) v[i] += x.coeffs_[i];
    for (std::size_t i = 0; i < y.coeffs_.size(); ++i) v[i] += y.coeffs_[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& x, const Poly& y) {
    std::vector<Rat> v(std::max(x.coeffs_.size(), y.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) v[i] += x.coeffs_[i];
    for (std::size_t i = 0; i < y.coeffs_.size(); ++i) v[i] -= y.coeffs_[i];
    return Poly(std::move(v));
  }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return Poly();
    std::vector<Rat> v(x.coeffs_.size() + y.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < y.coeffs_.size(); ++j)
        v[i + j] += x.coeffs_[i] * y.coeffs_[j];
    return Poly(std::move(v));
  }
  friend Poly operator*(const Rat& c, const Poly& y) {
    return Poly::monomial(c, 0) * y;
  }
  friend bool operator==(const Poly& x, const Poly& y) {
    return x.coeffs_ == y.coeffs_;
  }

  template <class R>
  R eval(const R& t) const {
    R acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * t + R(*it);
    return acc;
  }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (coeffs_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += coeffs_[i].str();
      if (i >= 1) s += "*t";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rat> coeffs_;
};

}  // namespace rg
