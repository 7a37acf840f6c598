#pragma once

#include <cstdint>
#include <vector>

#include "ulrich_kit/descriptor.hpp"
#include "ulrich_kit/error.hpp"
#include "ulrich_kit/rational.hpp"
#include "ulrich_kit/table.hpp"
#include "ulrich_kit/variety.hpp"

namespace ulrich_kit {

/// h^0..h^dim of one twist of a sheaf.
using Column = std::vector<std::int64_t>;

inline Column& operator+=(Column& a, const Column& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

inline Column scaled(Column c, std::int64_t m) {
  for (auto& v : c) v *= m;
  return c;
}

/// Bott's formula for line bundles on P^n.
inline Column bott_column(int n, int k) {
  Column col(static_cast<std::size_t>(n) + 1, 0);
  if (k >= 0) col[0] = binomial(n + k, n);
  if (k <= -n - 1) col[static_cast<std::size_t>(n)] = binomial(-k - 1, n);
  return col;
}

/// Kuenneth: h^i = sum_{p+q=i} h^p(A) h^q(B).
inline Column kunneth(const Column& a, const Column& b) {
  Column out(a.size() + b.size() - 1, 0);
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < b.size(); ++q) out[p + q] += a[p] * b[q];
  return out;
}

/// O(k) on Q^n from 0 -> O_P(k-2) -> O_P(k) -> O_Q(k) -> 0 on P = P^{n+1}.
/// Multiplication by the quadric is injective on H^0 and surjective on H^{n+1}, and P has no
/// intermediate cohomology, so only h^0 and h^n of Q survive.
inline Column quadric_line_column(int n, int k) {
  const int ambient = n + 1;
  const Column small = bott_column(ambient, k - 2);
  const Column big = bott_column(ambient, k);
  Column col(static_cast<std::size_t>(n) + 1, 0);
  col[0] = big[0] - small[0];
  col[static_cast<std::size_t>(n)] += small[static_cast<std::size_t>(ambient)] - big[static_cast<std::size_t>(ambient)];
  return col;
}

inline Column product_column(int n1, int n2, int a, int b) { return kunneth(bott_column(n1, a), bott_column(n2, b)); }

/// Semistable bundle of the given rank and degree on a genus-one curve with deg O(1) = d, twisted by O(k).
inline Column elliptic_column(int rank, int degree, std::optional<bool> trivial_type, int k, int d) {
  const std::int64_t twisted = static_cast<std::int64_t>(degree) + static_cast<std::int64_t>(rank) * k * d;
  if (twisted > 0) return {twisted, 0};
  if (twisted < 0) return {0, -twisted};
  if (!trivial_type)
    throw Error(ErrorKind::UnknownSlopeZero, "degree-zero twist of ss(" + std::to_string(rank) + "," + std::to_string(degree) +
                                                 ") has unspecified type");
  return *trivial_type ? Column{1, 1} : Column{0, 0};
}

namespace detail {

/// h^0(S(k)) on Q^3 for the initialized spinor bundle, from 0 -> S(k-1) -> O(k)^4 -> S(k) -> 0.
/// The sequence is left exact on sections and h^1(S(k-1)) = 0, so
/// h^0(S(k)) = 4 h^0(O(k)) - h^0(S(k-1)) with h^0(S(-1)) = 0 as the boundary condition.
inline std::int64_t spinor_q3_sections(int k) {
  std::int64_t prev = 0;
  for (int j = 0; j <= k; ++j) prev = 4 * quadric_line_column(3, j)[0] - prev;
  return k < 0 ? 0 : prev;
}

}  // namespace detail

/// Spinor bundle(s) on Q^2 (via the rulings S+ = O(1,0), S- = O(0,1)) and Q^3.
inline Column spinor_column(int n, SpinorSign sign, int k) {
  if (n == 2) {
    if (sign == SpinorSign::plus) return product_column(1, 1, 1 + k, k);
    if (sign == SpinorSign::minus) return product_column(1, 1, k, 1 + k);
    throw Error(ErrorKind::MalformedModel, "spinor on Q^2 needs a sign");
  }
  if (n == 3) {
    if (sign != SpinorSign::none) throw Error(ErrorKind::MalformedModel, "spinor on Q^3 is unsigned");
    // aCM, and S^dual = S(-1) with K = O(-3) gives h^3(S(k)) = h^0(S(-k-4)).
    return Column{detail::spinor_q3_sections(k), 0, 0, detail::spinor_q3_sections(-k - 4)};
  }
  throw Error(ErrorKind::UnsupportedQuadricDim, "spinor oracle covers Q^2 and Q^3 only");
}

inline Column sheaf_column(const SheafDescriptor& desc, const VarietyModel& model, int k);

namespace detail {

inline Column abstract_column(const AbstractSheaf& a, const VarietyModel& model, int k) {
  if (!a.table) throw Error(ErrorKind::NoOracle, "abstract sheaf without explicit table");
  Column col(static_cast<std::size_t>(model.dim()) + 1, 0);
  for (const auto& [i, h] : a.table->column(k)) {
    if (i < 0 || i > model.dim()) throw Error(ErrorKind::MalformedModel, "sheaf cohomology outside degrees 0..dim");
    col[static_cast<std::size_t>(i)] = h;
  }
  return col;
}

inline Column line_column(const LineBundle& l, const VarietyModel& model, int k) {
  return std::visit(
      [&](const auto& m) -> Column {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, ProjSpace>) return bott_column(m.n, l.twists[0] + k);
        if constexpr (std::is_same_v<M, Quadric>) {
          if (l.twists.size() == 2) return product_column(1, 1, l.twists[0] + k, l.twists[1] + k);
          return quadric_line_column(m.n, l.twists[0] + k);
        }
        if constexpr (std::is_same_v<M, ProductProj>) return product_column(m.n1, m.n2, l.twists[0] + k, l.twists[1] + k);
        if constexpr (std::is_same_v<M, EllipticCurve>) return elliptic_column(1, l.twists[0] * m.d, true, k, m.d);
        if constexpr (std::is_same_v<M, Rank1Surface>) {
          throw Error(ErrorKind::NoOracle, "numeric surface models have no cohomology oracle");
          return Column{};
        }
      },
      model.kind());
}

}  // namespace detail

inline Column sheaf_column(const SheafDescriptor& desc, const VarietyModel& model, int k) {
  return std::visit(
      [&](const auto& d) -> Column {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, AbstractSheaf>) {
          return detail::abstract_column(d, model, k);
        } else {
          if (model.is<Rank1Surface>() && !std::is_same_v<D, DirectSum>) throw Error(ErrorKind::NoOracle, to_string(desc) + " on " + model.spec());
          if constexpr (std::is_same_v<D, LineBundle>) return detail::line_column(d, model, k);
          if constexpr (std::is_same_v<D, Spinor>) {
            if (!model.is<Quadric>()) throw Error(ErrorKind::NoOracle, "spinor off a quadric");
            return spinor_column(model.as<Quadric>().n, d.sign, d.twist + k);
          }
          if constexpr (std::is_same_v<D, SemistableEC>) {
            if (!model.is<EllipticCurve>()) throw Error(ErrorKind::NoOracle, "semistable elliptic bundle off an elliptic curve");
            return elliptic_column(d.rank, d.degree, d.trivial_type, k, model.as<EllipticCurve>().d);
          }
          if constexpr (std::is_same_v<D, DirectSum>) {
            Column total(static_cast<std::size_t>(model.dim()) + 1, 0);
            for (const auto& t : d.terms) total += scaled(sheaf_column(t.sheaf, model, k), t.multiplicity);
            return total;
          }
          if constexpr (std::is_same_v<D, ExternalTensor>) {
            if (!model.is<ProductProj>()) throw Error(ErrorKind::NoOracle, "external tensor off a product");
            return kunneth(sheaf_column(*d.left, detail::left_factor(model), k),
                           sheaf_column(*d.right, detail::right_factor(model), k));
          }
        }
      },
      desc.value);
}

/// Cohomology of desc ⊗ O(a, b) on a product lattice model (P^{n1} x P^{n2} or Q^2).
inline Column sheaf_column_bigraded(const SheafDescriptor& desc, const VarietyModel& model, int a, int b) {
  if (!model.product_lattice()) throw Error(ErrorKind::UnsupportedModel, "bigraded twists need a product lattice");
  const auto [n1, n2] = NumClass::factor_dims(model);
  return std::visit(
      [&](const auto& d) -> Column {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, LineBundle>) {
          const int x = d.twists[0];
          const int y = d.twists.size() == 2 ? d.twists[1] : d.twists[0];
          return product_column(n1, n2, x + a, y + b);
        }
        if constexpr (std::is_same_v<D, Spinor>) {
          if (d.sign == SpinorSign::plus) return product_column(1, 1, 1 + d.twist + a, d.twist + b);
          if (d.sign == SpinorSign::minus) return product_column(1, 1, d.twist + a, 1 + d.twist + b);
          throw Error(ErrorKind::MalformedModel, "spinor on Q^2 needs a sign");
        }
        if constexpr (std::is_same_v<D, DirectSum>) {
          Column total(static_cast<std::size_t>(model.dim()) + 1, 0);
          for (const auto& t : d.terms) total += scaled(sheaf_column_bigraded(t.sheaf, model, a, b), t.multiplicity);
          return total;
        }
        if constexpr (std::is_same_v<D, ExternalTensor>) {
          return kunneth(sheaf_column(*d.left, detail::left_factor(model), a),
                         sheaf_column(*d.right, detail::right_factor(model), b));
        }
        if constexpr (std::is_same_v<D, AbstractSheaf>) {
          if (a != b) throw Error(ErrorKind::NoOracle, "abstract sheaves only support diagonal twists");
          return detail::abstract_column(d, model, a);
        }
        if constexpr (std::is_same_v<D, SemistableEC>) {
          throw Error(ErrorKind::NoOracle, "semistable elliptic bundle on a product");
          return Column{};
        }
      },
      desc.value);
}

inline CohomologyTable sheaf_table(const SheafDescriptor& desc, const VarietyModel& model, Window window) {
  validate(desc, model);
  CohomologyTable table(window);
  for (int t = window.lo; t <= window.hi; ++t) {
    const Column col = sheaf_column(desc, model, t);
    for (std::size_t i = 0; i < col.size(); ++i) table.set(static_cast<int>(i), t, col[i]);
  }
  return table;
}

inline CohomologyTable sheaf_table(const SheafDescriptor& desc, const VarietyModel& model) {
  return sheaf_table(desc, model, default_window(model.dim()));
}

}  // namespace ulrich_kit
