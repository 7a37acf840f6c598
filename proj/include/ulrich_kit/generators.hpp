#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ulrich_kit/chern.hpp"
#include "ulrich_kit/cohomology.hpp"
#include "ulrich_kit/complexes.hpp"
#include "ulrich_kit/descriptor.hpp"
#include "ulrich_kit/error.hpp"
#include "ulrich_kit/sheaf_ops.hpp"
#include "ulrich_kit/ulrich.hpp"

namespace ulrich_kit {

/// Vector in the numerical K-lattice. Elliptic curves use (rank, degree); other models use
/// chi-coordinates chi(E(-j)) (or chi(E(-a,-b)) on product lattices), which are integral on sheaves.
using K0Class = std::vector<Rational>;

inline std::optional<int> k0_lattice_rank(const VarietyModel& model) {
  if (model.is<Quadric>() && model.as<Quadric>().n % 2 == 0 && model.as<Quadric>().n >= 4) return std::nullopt;
  return invariants(model).k0_rank;
}

inline K0Class k0_class(const NumClass& c) {
  const VarietyModel& model = c.model();
  if (model.is<EllipticCurve>()) return {c.r(), c.e1() * model.deg()};
  const auto rank = k0_lattice_rank(model);
  if (!rank) throw Error(ErrorKind::UnknownK0Rank, "no numerical K-lattice for " + model.spec());
  K0Class out;
  if (c.product_lattice()) {
    const auto [n1, n2] = NumClass::factor_dims(model);
    for (int a = 0; a <= n1; ++a)
      for (int b = 0; b <= n2; ++b) out.push_back(euler_char(twist_class(c, -a, -b)));
    return out;
  }
  for (int j = 0; j < *rank; ++j) out.push_back(euler_char(twist_class(c, -j)));
  return out;
}

inline K0Class k0_class(const SheafDescriptor& desc, const VarietyModel& model) { return k0_class(class_of(desc, model)); }
inline K0Class k0_class(const FormalComplex& e) { return k0_class(class_of(e)); }

/// Rank over Q of a list of lattice vectors, by exact Gaussian elimination.
inline int lattice_rank(std::vector<K0Class> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
    const K0Class& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / p[col];
      for (std::size_t k = col; k < cols; ++k) rows[r][k] -= f * p[k];
    }
    ++rank;
  }
  return rank;
}

enum class GateVerdict { FullRank, DeficientRank };

inline std::string_view gate_verdict_name(GateVerdict v) { return v == GateVerdict::FullRank ? "FullRank" : "DeficientRank"; }

struct GateResult {
  GateVerdict verdict = GateVerdict::DeficientRank;
  int rank = 0;
  int needed = 0;
  std::vector<K0Class> classes;
};

/// DeficientRank certifies that the objects do not classically generate; FullRank claims nothing more.
inline GateResult generator_gate(const std::vector<FormalComplex>& objects, const VarietyModel& model) {
  const auto needed = k0_lattice_rank(model);
  if (!needed) throw Error(ErrorKind::UnknownK0Rank, "no numerical K-lattice for " + model.spec());
  GateResult out;
  out.needed = *needed;
  for (const auto& e : objects) {
    if (!(e.model() == model)) throw Error(ErrorKind::ModelMismatch, "object lives on " + e.model().spec());
    out.classes.push_back(k0_class(e));
  }
  out.rank = lattice_rank(out.classes);
  out.verdict = out.rank == out.needed ? GateVerdict::FullRank : GateVerdict::DeficientRank;
  return out;
}

inline GateResult generator_gate(const std::vector<SheafDescriptor>& sheaves, const VarietyModel& model) {
  std::vector<FormalComplex> objects;
  for (const auto& s : sheaves) objects.push_back(FormalComplex::single(model, s));
  return generator_gate(objects, model);
}

enum class CollectionKind { Beilinson, Kapranov, custom };

/// Ordered list of sheaves with Ext^*(later, earlier) = 0 and exceptional members, checked on
/// construction wherever a dual rule exists.
class Collection {
 public:
  Collection(VarietyModel model, std::vector<SheafDescriptor> members, CollectionKind kind = CollectionKind::custom)
      : model_(std::move(model)), members_(std::move(members)), kind_(kind) {
    for (const auto& m : members_) validate(m, model_);
    const int n = model_.dim();
    for (std::size_t j = 0; j < members_.size(); ++j)
      for (std::size_t i = 0; i <= j; ++i) {
        Column col;
        try {
          col = sheaf_column(hom_descriptor(members_[j], members_[i], model_), model_, 0);
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::NoDualRule) throw;
          ++unverified_pairs_;
          continue;
        }
        Column expected(static_cast<std::size_t>(n) + 1, 0);
        if (i == j) expected[0] = 1;
        if (col != expected)
          throw Error(ErrorKind::MalformedModel, "not exceptional: Ext^*(" + to_string(members_[j]) + ", " + to_string(members_[i]) + ")");
        ++verified_pairs_;
      }
  }

  static Collection beilinson(const VarietyModel& model) {
    if (!model.is<ProjSpace>()) throw Error(ErrorKind::UnsupportedModel, "Beilinson collection lives on P^n");
    std::vector<SheafDescriptor> members;
    for (int k = 0; k <= model.as<ProjSpace>().n; ++k) members.push_back(line(k));
    return Collection(model, std::move(members), CollectionKind::Beilinson);
  }

  static Collection kapranov(const VarietyModel& model) {
    std::vector<SheafDescriptor> members;
    if (model.is<ProductProj>() && NumClass::factor_dims(model) == std::pair<int, int>{1, 1}) {
      members = {line(0, 0), line(1, 0), line(0, 1), line(1, 1)};
    } else if (model.is<Quadric>() && model.as<Quadric>().n == 2) {
      members = {line(0), Spinor{SpinorSign::plus, 0}, Spinor{SpinorSign::minus, 0}, line(1)};
    } else if (model.is<Quadric>() && model.as<Quadric>().n == 3) {
      members = {line(0), Spinor{}, line(1), line(2)};
    } else {
      throw Error(ErrorKind::UnsupportedQuadricDim, "Kapranov collection registered for Q^2 and Q^3");
    }
    return Collection(model, std::move(members), CollectionKind::Kapranov);
  }

  const VarietyModel& model() const { return model_; }
  const std::vector<SheafDescriptor>& members() const { return members_; }
  CollectionKind kind() const { return kind_; }
  int verified_pairs() const { return verified_pairs_; }
  int unverified_pairs() const { return unverified_pairs_; }

 private:
  VarietyModel model_;
  std::vector<SheafDescriptor> members_;
  CollectionKind kind_;
  int verified_pairs_ = 0;
  int unverified_pairs_ = 0;
};

struct MembershipResult {
  bool member = false;
  bool exact = true;  // false when a glued complex leaves only E_2 upper bounds
  std::optional<SheafDescriptor> failing_member;
  std::optional<int> degree;
  std::int64_t h = 0;
};

/// E in <members>^perp iff RHom(M, E) = 0 for every listed member M.
inline MembershipResult orthogonal_membership(const FormalComplex& e, const std::vector<SheafDescriptor>& members) {
  MembershipResult out;
  for (const auto& m : members) {
    validate(m, e.model());
    const auto totals =
        detail::e2_totals(e, [&](const SheafDescriptor& s) { return sheaf_column(hom_descriptor(m, s, e.model()), e.model(), 0); });
    if (totals.empty()) continue;
    out.exact = e.formal();
    out.failing_member = m;
    out.degree = totals.begin()->first;
    out.h = totals.begin()->second;
    return out;
  }
  out.member = true;
  return out;
}

struct EllipticWitness {
  SheafDescriptor sheaf;
  UlrichVerdict verdict;
};

/// Degree-d line bundle not isomorphic to O(1): its twist by O(-1) is a nontrivial degree-zero bundle.
inline EllipticWitness elliptic_witness(const VarietyModel& model, bool force_trivial_type = false) {
  if (!model.is<EllipticCurve>()) throw Error(ErrorKind::UnsupportedModel, "elliptic witness needs an elliptic curve");
  const SheafDescriptor l = SemistableEC{1, model.as<EllipticCurve>().d, force_trivial_type};
  return {l, is_ulrich_sheaf(l, model)};
}

}  // namespace ulrich_kit
