#pragma once

#include <optional>
#include <vector>

#include "ulrich_kit/descriptor.hpp"
#include "ulrich_kit/error.hpp"
#include "ulrich_kit/num_class.hpp"
#include "ulrich_kit/rational.hpp"
#include "ulrich_kit/table.hpp"
#include "ulrich_kit/variety.hpp"

namespace ulrich_kit {

/// ch(E) * exp(k H); on product lattices H = h1 + h2.
inline NumClass twist_class(const NumClass& c, int k) { return c * line_class(c.model(), Rational(k)); }

/// ch(E) * exp(a h1 + b h2); product lattices only.
inline NumClass twist_class(const NumClass& c, int a, int b) {
  if (!c.product_lattice()) throw Error(ErrorKind::UnsupportedModel, "bigraded twist needs a product lattice");
  return c * line_class(c.model(), Rational(a), Rational(b));
}

/// Hirzebruch-Riemann-Roch: chi(E) = integral of ch(E) td(X), with the Todd moments read off chi(O(k)).
inline Rational euler_char(const NumClass& c) {
  const NumClass tau = todd_moments(c.model());
  Rational chi = 0;
  for (int j = 0; j < c.rows(); ++j)
    for (int k = 0; k < c.cols(); ++k) chi += c.at(j, k) * tau.at(j, k);
  return chi;
}

namespace detail {

/// Inverse of a truncated power series in H with invertible constant term.
inline NumClass series_inverse(const NumClass& c) {
  if (c.product_lattice()) throw Error(ErrorKind::UnsupportedModel, "series inverse on rank-one lattice only");
  if (c.at(0) == 0) throw Error(ErrorKind::DegenerateSystem, "series with zero constant term");
  NumClass inv(c.model());
  inv.at(0) = Rational(1) / c.at(0);
  for (int j = 1; j < c.rows(); ++j) {
    Rational acc = 0;
    for (int m = 1; m <= j; ++m) acc += c.at(m) * inv.at(j - m);
    inv.at(j) = -acc / c.at(0);
  }
  return inv;
}

}  // namespace detail

/// Numerical class of an oracle- or class-backed descriptor.
inline NumClass class_of(const SheafDescriptor& desc, const VarietyModel& model) {
  return std::visit(
      [&](const auto& d) -> NumClass {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, LineBundle>) {
          if (model.product_lattice()) {
            const int x = d.twists[0];
            const int y = d.twists.size() == 2 ? d.twists[1] : d.twists[0];
            return line_class(model, Rational(x), Rational(y));
          }
          return line_class(model, Rational(d.twists[0]));
        }
        if constexpr (std::is_same_v<D, Spinor>) {
          if (!model.is<Quadric>()) throw Error(ErrorKind::Indeterminate, "spinor off a quadric");
          const int n = model.as<Quadric>().n;
          if (n == 2) {
            const int tw = d.twist;
            return d.sign == SpinorSign::plus ? line_class(model, Rational(1 + tw), Rational(tw))
                                              : line_class(model, Rational(tw), Rational(1 + tw));
          }
          if (n == 3) {
            // 0 -> S(-1) -> O^4 -> S -> 0 gives ch(S) (1 + e^{-H}) = 4.
            const NumClass denom = line_class(model, Rational(0)) + line_class(model, Rational(-1));
            return twist_class(detail::series_inverse(denom) * Rational(4), d.twist);
          }
          throw Error(ErrorKind::UnsupportedQuadricDim, "spinor class on Q^" + std::to_string(n));
        }
        if constexpr (std::is_same_v<D, SemistableEC>) {
          const int deg_h = model.as<EllipticCurve>().d;
          return NumClass(model, {Rational(d.rank), Rational(d.degree, deg_h)});
        }
        if constexpr (std::is_same_v<D, AbstractSheaf>) {
          if (!d.num_class) throw Error(ErrorKind::Indeterminate, "abstract sheaf without numerical class");
          return *d.num_class;
        }
        if constexpr (std::is_same_v<D, DirectSum>) {
          NumClass total(model);
          for (const auto& t : d.terms) total += class_of(t.sheaf, model) * Rational(t.multiplicity);
          return total;
        }
        if constexpr (std::is_same_v<D, ExternalTensor>) {
          const NumClass left = class_of(*d.left, detail::left_factor(model));
          const NumClass right = class_of(*d.right, detail::right_factor(model));
          NumClass out(model);
          for (int j = 0; j < out.rows(); ++j)
            for (int k = 0; k < out.cols(); ++k) out.at(j, k) = left.at(j) * right.at(k);
          return out;
        }
      },
      desc.value);
}

inline Rational euler_char(const SheafDescriptor& desc, const VarietyModel& model, int twist = 0) {
  return euler_char(twist_class(class_of(desc, model), twist));
}

/// chi(E(-j)) = 0 for j = 1..dim: the numerical shadow of the Ulrich vanishing.
inline bool chern_admissible(const NumClass& c) {
  for (int j = 1; j <= c.model().dim(); ++j)
    if (euler_char(twist_class(c, -j)) != 0) return false;
  return true;
}

/// Table alternating sums agree with Riemann-Roch at every twist of the window.
inline bool hrr_consistent(const CohomologyTable& table, const NumClass& c) {
  for (int t = table.window().lo; t <= table.window().hi; ++t)
    if (Rational(table.alternating_sum(t)) != euler_char(twist_class(c, t))) return false;
  return true;
}

struct UlrichChernSolution {
  NumClass cls;
  bool numeric_only = false;  // rank <= 0: solves the linear system but is no sheaf rank
};

/// Solves chi(E(-1)) = chi(E(-2)) = 0 for (e1, e2) at fixed ch_0 = r on a Picard-rank-one surface.
inline UlrichChernSolution ulrich_chern_solve(const VarietyModel& model, int r) {
  if (!surface_data(model)) throw Error(ErrorKind::UnsupportedModel, "Ulrich Chern solver needs a Picard-rank-one surface");
  if (r == 0) throw Error(ErrorKind::DegenerateSystem, "rank zero has only the trivial class");
  auto chi_at = [&](const Rational& e1, const Rational& e2, int j) {
    return euler_char(twist_class(NumClass(model, {Rational(r), e1, e2}), -j));
  };
  // chi(E(-j)) is affine in (e1, e2): a_j e1 + b_j e2 + c_j.
  Rational a[2], b[2], c[2];
  for (int j = 1; j <= 2; ++j) {
    c[j - 1] = chi_at(0, 0, j);
    a[j - 1] = chi_at(1, 0, j) - c[j - 1];
    b[j - 1] = chi_at(0, 1, j) - c[j - 1];
  }
  const Rational det = a[0] * b[1] - a[1] * b[0];
  if (det == 0) throw Error(ErrorKind::DegenerateSystem, "singular Riemann-Roch system");
  const Rational e1 = (-c[0] * b[1] + c[1] * b[0]) / det;
  const Rational e2 = (-a[0] * c[1] + a[1] * c[0]) / det;
  return {NumClass(model, {Rational(r), e1, e2}), r <= 0};
}

}  // namespace ulrich_kit
