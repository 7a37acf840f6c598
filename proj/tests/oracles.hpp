#pragma once

// Reference computations that deliberately avoid the library's own formulas.

#include <cstdint>
#include <random>
#include <vector>

#include "ulrich_kit/rational.hpp"

namespace oracle {

using ulrich_kit::Rational;

/// Number of monomials of degree k in m variables, by dynamic programming over variables.
inline std::int64_t monomials(int m, int k) {
  if (k < 0) return 0;
  std::vector<std::int64_t> count(static_cast<std::size_t>(k) + 1, 0);
  count[0] = 1;
  for (int v = 0; v < m; ++v)
    for (int d = 1; d <= k; ++d) count[static_cast<std::size_t>(d)] += count[static_cast<std::size_t>(d) - 1];
  return count[static_cast<std::size_t>(k)];
}

/// h^i(O(k)) on P^n: sections are monomials, top cohomology by Serre duality with K = O(-n-1).
inline std::vector<std::int64_t> projective(int n, int k) {
  std::vector<std::int64_t> col(static_cast<std::size_t>(n) + 1, 0);
  col[0] = monomials(n + 1, k);
  col[static_cast<std::size_t>(n)] += monomials(n + 1, -k - n - 1);
  return col;
}

/// h^0(O_Q(k)) for a smooth quadric in P^{n+1}: standard monomials modulo a leading term x_0^2,
/// i.e. monomials of degree k with exponent of x_0 at most one.
inline std::int64_t quadric_sections(int n, int k) {
  if (k < 0) return 0;
  return monomials(n + 1, k) + monomials(n + 1, k - 1);
}

/// Hilbert polynomial of the rank-two spinor bundle on Q^3: (2/3)(k+1)(k+2)(k+3).
inline Rational spinor_q3_hilbert(int k) { return Rational(2, 3) * (k + 1) * (k + 2) * (k + 3); }

/// Closed-form Ulrich class (e1, e2) on a surface with H^2 = d, K = i H, chi(O) = chi0.
inline std::pair<Rational, Rational> ulrich_class(int r, int d, const Rational& i, int chi0) {
  const Rational e1 = Rational(r) * (i + 3) / 2;
  const Rational e2d = -Rational(r) * chi0 + Rational(r * d, 4) * (i * i + 3 * i + 4);
  return {e1, e2d / d};
}

struct Gauss {
  Rational re = 0, im = 0;
};

inline Gauss mul(const Gauss& a, const Gauss& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

/// -(e2 d - w e1 d + w^2 d r / 2) with w = s + i t, by complex multiplication.
inline Gauss charge(const Rational& r, const Rational& e1, const Rational& e2, int d, const Rational& s, const Rational& t) {
  const Gauss w{s, t};
  const Gauss w2 = mul(w, w);
  Gauss z;
  z.re = -(e2 * d - w.re * e1 * d + w2.re * d * r / 2);
  z.im = -(-w.im * e1 * d + w2.im * d * r / 2);
  return z;
}

/// Random rational with numerator in [-n, n] and denominator in [1, q].
inline Rational random_rational(std::mt19937& rng, int n, int q) {
  std::uniform_int_distribution<int> num(-n, n), den(1, q);
  return Rational(num(rng), den(rng));
}

}  // namespace oracle
