#pragma once

#include <string>
#include <vector>

#include "ulrich_kit/error.hpp"
#include "ulrich_kit/rational.hpp"
#include "ulrich_kit/variety.hpp"

namespace ulrich_kit {

/// Truncated Chern character in exact rationals.
///
/// On Picard-rank-one models the class is sum_j c_j H^j with j <= dim, so c_0 = r, c_1 = e1, c_2 = e2.
/// On P^{n1} x P^{n2} (and on Q^2 through its two rulings) it is sum c_{jk} h1^j h2^k with j <= n1, k <= n2.
class NumClass {
 public:
  explicit NumClass(VarietyModel model) : model_(std::move(model)) {
    if (model_.product_lattice()) {
      const auto [n1, n2] = factor_dims(model_);
      rows_ = n1 + 1;
      cols_ = n2 + 1;
    } else {
      rows_ = model_.dim() + 1;
      cols_ = 1;
    }
    c_.assign(static_cast<std::size_t>(rows_ * cols_), Rational(0));
  }

  /// Picard-rank-one constructor from leading coefficients (r, e1, e2, ...); missing entries are zero.
  NumClass(VarietyModel model, std::vector<Rational> coeffs) : NumClass(std::move(model)) {
    if (model_.product_lattice()) throw Error(ErrorKind::UnsupportedModel, "coefficient list needs a Picard-rank-one model");
    if (static_cast<int>(coeffs.size()) > rows_) throw Error(ErrorKind::MalformedModel, "class has components beyond dim");
    for (std::size_t j = 0; j < coeffs.size(); ++j) c_[j] = std::move(coeffs[j]);
  }

  static std::pair<int, int> factor_dims(const VarietyModel& model) {
    if (model.is<ProductProj>()) return {model.as<ProductProj>().n1, model.as<ProductProj>().n2};
    if (model.is<Quadric>() && model.as<Quadric>().n == 2) return {1, 1};
    throw Error(ErrorKind::UnsupportedModel, model.spec() + " has no product lattice");
  }

  const VarietyModel& model() const { return model_; }
  bool product_lattice() const { return cols_ > 1 || model_.product_lattice(); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Rational& at(int j, int k = 0) const { return c_[index(j, k)]; }
  Rational& at(int j, int k = 0) { return c_[index(j, k)]; }

  const Rational& r() const { return c_[0]; }

  /// Coefficient of H^j; Picard-rank-one models only.
  const Rational& e(int j) const {
    if (product_lattice()) throw Error(ErrorKind::UnsupportedModel, "e_j needs a Picard-rank-one model");
    return at(j, 0);
  }
  const Rational& e1() const { return e(1); }
  const Rational& e2() const { return e(2); }

  NumClass& operator+=(const NumClass& o) {
    require_same(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  NumClass& operator-=(const NumClass& o) {
    require_same(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  NumClass& operator*=(const Rational& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend NumClass operator+(NumClass a, const NumClass& b) { return a += b; }
  friend NumClass operator-(NumClass a, const NumClass& b) { return a -= b; }
  friend NumClass operator*(NumClass a, const Rational& s) { return a *= s; }
  friend NumClass operator*(const Rational& s, NumClass a) { return a *= s; }
  NumClass operator-() const { return *this * Rational(-1); }

  /// Truncated ring product in the Chow ring.
  friend NumClass operator*(const NumClass& a, const NumClass& b) {
    a.require_same(b);
    NumClass out(a.model_);
    for (int j1 = 0; j1 < a.rows_; ++j1)
      for (int k1 = 0; k1 < a.cols_; ++k1) {
        if (a.at(j1, k1) == 0) continue;
        for (int j2 = 0; j1 + j2 < a.rows_; ++j2)
          for (int k2 = 0; k1 + k2 < a.cols_; ++k2) out.at(j1 + j2, k1 + k2) += a.at(j1, k1) * b.at(j2, k2);
      }
    return out;
  }

  friend bool operator==(const NumClass& a, const NumClass& b) { return a.model_ == b.model_ && a.c_ == b.c_; }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (k) out += ", ";
      out += ulrich_kit::to_string(c_[k]);
    }
    return out + ")";
  }

 private:
  std::size_t index(int j, int k) const {
    if (j < 0 || j >= rows_ || k < 0 || k >= cols_) throw Error(ErrorKind::MalformedModel, "class component out of range");
    return static_cast<std::size_t>(j * cols_ + k);
  }
  void require_same(const NumClass& o) const {
    if (!(model_ == o.model_)) throw Error(ErrorKind::ModelMismatch, model_.spec() + " vs " + o.model_.spec());
  }

  VarietyModel model_;
  int rows_ = 1;
  int cols_ = 1;
  std::vector<Rational> c_;
};

/// ch(O(a, b)) = exp(a h1 + b h2) on product lattices, ch(O(a)) = exp(a H) otherwise (b ignored).
inline NumClass line_class(const VarietyModel& model, const Rational& a, const Rational& b) {
  NumClass out(model);
  for (int j = 0; j < out.rows(); ++j)
    for (int k = 0; k < out.cols(); ++k) {
      Rational v = 1;
      for (int m = 0; m < j; ++m) v *= a;
      for (int m = 0; m < k; ++m) v *= b;
      out.at(j, k) = v / (factorial(j) * factorial(k));
    }
  return out;
}

inline NumClass line_class(const VarietyModel& model, const Rational& a) { return line_class(model, a, a); }

namespace detail {

using Poly = std::vector<Rational>;  // coefficients in increasing degree

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// C(a + shift + n, n) as a polynomial in a.
inline Poly binomial_poly(int shift, int n) {
  Poly out{Rational(1)};
  for (int m = 1; m <= n; ++m) out = poly_mul(out, Poly{Rational(shift + m), Rational(1)});
  const Rational f = factorial(n);
  for (auto& v : out) v /= f;
  return out;
}

inline Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

/// Hilbert polynomial chi(O(a)) of a Picard-rank-one model.
inline Poly hilbert_poly(const VarietyModel& model) {
  if (model.is<ProjSpace>()) return binomial_poly(0, model.as<ProjSpace>().n);
  if (model.is<Quadric>()) {
    const int n = model.as<Quadric>().n;
    return poly_sub(binomial_poly(0, n + 1), binomial_poly(-2, n + 1));
  }
  if (model.is<EllipticCurve>()) return Poly{Rational(0), Rational(model.as<EllipticCurve>().d)};
  if (model.is<Rank1Surface>()) {
    const auto& s = model.as<Rank1Surface>();
    return Poly{Rational(s.chi0), -s.i_x * s.d / 2, Rational(s.d, 2)};
  }
  throw Error(ErrorKind::UnsupportedModel, "no single-variable Hilbert polynomial for " + model.spec());
}

}  // namespace detail

/// Todd moments tau_{jk} = integral of x^j y^k td(X), read off the Hilbert polynomial:
/// chi(O(a,b)) = sum tau_{jk} a^j b^k / (j! k!).
inline NumClass todd_moments(const VarietyModel& model) {
  NumClass tau(model);
  if (model.product_lattice()) {
    const auto [n1, n2] = NumClass::factor_dims(model);
    const auto pa = detail::binomial_poly(0, n1);
    const auto pb = detail::binomial_poly(0, n2);
    for (int j = 0; j <= n1; ++j)
      for (int k = 0; k <= n2; ++k) tau.at(j, k) = factorial(j) * factorial(k) * pa[j] * pb[k];
    return tau;
  }
  const auto p = detail::hilbert_poly(model);
  for (int j = 0; j < tau.rows(); ++j) tau.at(j) = j < static_cast<int>(p.size()) ? factorial(j) * p[j] : Rational(0);
  return tau;
}

}  // namespace ulrich_kit
