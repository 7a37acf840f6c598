#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ulrich_kit/chern.hpp"
#include "ulrich_kit/cohomology.hpp"
#include "ulrich_kit/descriptor.hpp"
#include "ulrich_kit/error.hpp"
#include "ulrich_kit/sheaf_ops.hpp"
#include "ulrich_kit/table.hpp"
#include "ulrich_kit/variety.hpp"

namespace ulrich_kit {

/// Opaque extension witness between two cohomology sheaves: a class in
/// Ext^{ext_degree}(H^{from}, H^{to}) with ext_degree = from - to + 1.
struct Glue {
  int from_degree = 0;
  int to_degree = -1;
  int ext_degree = 2;
  bool nonzero = true;
  friend bool operator==(const Glue&, const Glue&) = default;
};

/// A nonzero entry h^i(E(t)) that breaks a vanishing condition.
struct Witness {
  int i = 0;
  int t = 0;
  std::int64_t h = 0;
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Bounded complex recorded by its cohomology sheaves and optional glue witnesses.
class FormalComplex {
 public:
  FormalComplex(VarietyModel model, std::map<int, SheafDescriptor> sheaves, std::vector<Glue> glue = {})
      : model_(std::move(model)), sheaves_(std::move(sheaves)), glue_(std::move(glue)) {
    for (const auto& [deg, s] : sheaves_) validate(s, model_);
    for (const auto& g : glue_) {
      if (!sheaves_.count(g.from_degree) || !sheaves_.count(g.to_degree))
        throw Error(ErrorKind::MalformedModel, "glue endpoints must carry cohomology sheaves");
      if (g.ext_degree != g.from_degree - g.to_degree + 1 || g.ext_degree < 2)
        throw Error(ErrorKind::MalformedModel, "glue needs ext_degree = from - to + 1 >= 2");
      if (g.ext_degree > model_.dim())
        throw Error(ErrorKind::MalformedModel, "Ext^" + std::to_string(g.ext_degree) + " vanishes on " + model_.spec());
    }
  }

  static FormalComplex single(VarietyModel model, SheafDescriptor sheaf, int degree = 0) {
    return FormalComplex(std::move(model), {{degree, std::move(sheaf)}});
  }

  const VarietyModel& model() const { return model_; }
  const std::map<int, SheafDescriptor>& sheaves() const { return sheaves_; }
  const std::vector<Glue>& glue() const { return glue_; }

  /// No nonzero glue: the complex is the sum of its shifted cohomology sheaves.
  bool formal() const {
    for (const auto& g : glue_)
      if (g.nonzero) return false;
    return true;
  }

  bool empty() const { return sheaves_.empty(); }

  /// Lowest and highest degree carrying a cohomology sheaf.
  std::pair<int, int> amplitude() const {
    if (sheaves_.empty()) throw Error(ErrorKind::MalformedModel, "zero complex has no amplitude");
    return {sheaves_.begin()->first, sheaves_.rbegin()->first};
  }

  friend bool operator==(const FormalComplex& a, const FormalComplex& b) {
    return a.model_ == b.model_ && a.sheaves_ == b.sheaves_ && a.glue_ == b.glue_;
  }

 private:
  VarietyModel model_;
  std::map<int, SheafDescriptor> sheaves_;
  std::vector<Glue> glue_;
};

/// E[k], with E[k]^i = E^{i+k}.
inline FormalComplex shift(const FormalComplex& e, int k) {
  std::map<int, SheafDescriptor> sheaves;
  for (const auto& [deg, s] : e.sheaves()) sheaves.emplace(deg - k, s);
  std::vector<Glue> glue;
  for (auto g : e.glue()) {
    g.from_degree -= k;
    g.to_degree -= k;
    glue.push_back(g);
  }
  return FormalComplex(e.model(), std::move(sheaves), std::move(glue));
}

inline FormalComplex direct_sum(std::span<const FormalComplex> parts) {
  if (parts.empty()) throw Error(ErrorKind::MalformedModel, "empty direct sum of complexes");
  std::map<int, std::vector<DirectSumTerm>> terms;
  std::vector<Glue> glue;
  for (const auto& p : parts) {
    if (!(p.model() == parts.front().model())) throw Error(ErrorKind::ModelMismatch, p.model().spec() + " vs " + parts.front().model().spec());
    for (const auto& [deg, s] : p.sheaves()) terms[deg].push_back({s, 1});
    glue.insert(glue.end(), p.glue().begin(), p.glue().end());
  }
  std::map<int, SheafDescriptor> sheaves;
  for (const auto& [deg, ts] : terms) sheaves.emplace(deg, make_sum(ts));
  return FormalComplex(parts.front().model(), std::move(sheaves), std::move(glue));
}

inline FormalComplex direct_sum(const FormalComplex& a, const FormalComplex& b) {
  const FormalComplex parts[] = {a, b};
  return direct_sum(std::span<const FormalComplex>(parts));
}

/// ch(E) = sum_i (-1)^i ch(H^i(E)).
inline NumClass class_of(const FormalComplex& e) {
  NumClass total(e.model());
  for (const auto& [deg, s] : e.sheaves()) {
    const NumClass c = class_of(s, e.model());
    if (deg % 2 == 0) total += c;
    else total -= c;
  }
  return total;
}

enum class Certificate { Exact, ExactByVanishing, UpperBoundOnly };

inline std::string_view certificate_name(Certificate c) {
  switch (c) {
    case Certificate::Exact: return "Exact";
    case Certificate::ExactByVanishing: return "ExactByVanishing";
    case Certificate::UpperBoundOnly: return "UpperBoundOnly";
  }
  return "";
}

struct HyperTable {
  CohomologyTable table;
  std::map<int, Certificate> certificates;  // per twist
};

namespace detail {

/// E_2 totals sum_q h^{k-q}(H^q(t)) of the hypercohomology spectral sequence at one twist.
template <class ColumnFn>
std::map<int, std::int64_t> e2_totals(const FormalComplex& e, ColumnFn column_of) {
  std::map<int, std::int64_t> out;
  for (const auto& [q, s] : e.sheaves()) {
    const Column col = column_of(s);
    for (std::size_t p = 0; p < col.size(); ++p)
      if (col[p] != 0) out[static_cast<int>(p) + q] += col[p];
  }
  return out;
}

}  // namespace detail

/// Hypercohomology table. Formal complexes get exact sums; glued complexes are exact only at twists
/// where every E_2 term vanishes, otherwise the E_2 totals are upper bounds.
inline HyperTable hyper_table(const FormalComplex& e, Window window) {
  HyperTable out{CohomologyTable(window), {}};
  for (int t = window.lo; t <= window.hi; ++t) {
    const auto totals = detail::e2_totals(e, [&](const SheafDescriptor& s) { return sheaf_column(s, e.model(), t); });
    for (const auto& [k, h] : totals) out.table.set(k, t, h);
    if (e.formal()) out.certificates[t] = Certificate::Exact;
    else out.certificates[t] = totals.empty() ? Certificate::ExactByVanishing : Certificate::UpperBoundOnly;
  }
  return out;
}

inline HyperTable hyper_table(const FormalComplex& e) { return hyper_table(e, default_window(e.model().dim())); }

/// Hypercohomology of E ⊗ O(a, b) on a product lattice; the bool is true when exact.
inline std::pair<std::map<int, std::int64_t>, bool> hyper_column_bigraded(const FormalComplex& e, int a, int b) {
  const auto totals = detail::e2_totals(e, [&](const SheafDescriptor& s) { return sheaf_column_bigraded(s, e.model(), a, b); });
  return {totals, e.formal() || totals.empty()};
}

/// First nonzero entry at twists -1..-dim, scanning j = 1 upward.
inline std::optional<Witness> ulrich_vanishing_witness(const CohomologyTable& table, int dim) {
  for (int j = 1; j <= dim; ++j)
    if (const auto row = table.first_nonzero(-j)) return Witness{row->i, row->t, row->h};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Distinguished triangles E -> F -> G -> E[1]

enum class TriangleRole { E, F, G };

inline std::string_view role_name(TriangleRole r) {
  switch (r) {
    case TriangleRole::E: return "E";
    case TriangleRole::F: return "F";
    case TriangleRole::G: return "G";
  }
  return "";
}

struct TriangleInput {
  int dim = 1;
  std::optional<CohomologyTable> e, f, g;
  std::optional<NumClass> class_e, class_f, class_g;
};

enum class TriangleStatus { CertifiedUlrich, NotUlrich, Undetermined };

struct TriangleVerdict {
  TriangleRole third = TriangleRole::F;
  TriangleStatus status = TriangleStatus::Undetermined;
  std::optional<Witness> witness;    // cohomology of the third object, derived exactly
  std::optional<bool> chi_additive;  // present when all three classes were given
};

/// Long-exact-sequence squeeze over the Ulrich twists. At a twist where one given object vanishes,
/// the other given object and the third have isomorphic (shifted) cohomology, which is reported exactly.
inline TriangleVerdict triangle_2of3(const TriangleInput& in) {
  const int given = int(in.e.has_value()) + int(in.f.has_value()) + int(in.g.has_value());
  if (given != 2) throw Error(ErrorKind::IncompleteTable, "exactly two of E, F, G must be given");
  TriangleVerdict verdict;
  verdict.third = !in.e ? TriangleRole::E : (!in.f ? TriangleRole::F : TriangleRole::G);

  bool all_vanish = true;
  for (int j = 1; j <= in.dim; ++j) {
    const int t = -j;
    const bool ze = in.e && in.e->column_zero(t);
    const bool zf = in.f && in.f->column_zero(t);
    const bool zg = in.g && in.g->column_zero(t);
    std::optional<Witness> w;
    switch (verdict.third) {
      case TriangleRole::E:  // E(t) = cone(F -> G)[-1]
        if (zf && !zg) { const auto r = *in.g->first_nonzero(t); w = Witness{r.i + 1, t, r.h}; }
        if (zg && !zf) { const auto r = *in.f->first_nonzero(t); w = Witness{r.i, t, r.h}; }
        all_vanish = all_vanish && zf && zg;
        break;
      case TriangleRole::F:
        if (ze && !zg) { const auto r = *in.g->first_nonzero(t); w = Witness{r.i, t, r.h}; }
        if (zg && !ze) { const auto r = *in.e->first_nonzero(t); w = Witness{r.i, t, r.h}; }
        all_vanish = all_vanish && ze && zg;
        break;
      case TriangleRole::G:  // G(t) = E(t)[1] when F(t) vanishes
        if (ze && !zf) { const auto r = *in.f->first_nonzero(t); w = Witness{r.i, t, r.h}; }
        if (zf && !ze) { const auto r = *in.e->first_nonzero(t); w = Witness{r.i - 1, t, r.h}; }
        all_vanish = all_vanish && ze && zf;
        break;
    }
    if (w && !verdict.witness) verdict.witness = w;
  }
  if (all_vanish) verdict.status = TriangleStatus::CertifiedUlrich;
  else if (verdict.witness) verdict.status = TriangleStatus::NotUlrich;

  if (in.class_e && in.class_f && in.class_g) {
    bool ok = true;
    const auto& w = (in.e ? *in.e : *in.f).window();
    for (int t = w.lo; t <= w.hi && ok; ++t)
      ok = euler_char(twist_class(*in.class_f, t)) == euler_char(twist_class(*in.class_e, t)) + euler_char(twist_class(*in.class_g, t));
    verdict.chi_additive = ok;
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// External products on P^{n1} x P^{n2}

enum class ProductSide {
  TwistSecond,  // E ⊠ F(dim X)
  TwistFirst,   // E(dim Y) ⊠ F
};

/// L ⊠ R, distributing over sums and collapsing O(a) ⊠ O(b) to O(a, b).
inline SheafDescriptor external_tensor(const SheafDescriptor& l, const SheafDescriptor& r) {
  if (l.is<DirectSum>() || r.is<DirectSum>()) {
    const std::vector<DirectSumTerm> left = l.is<DirectSum>() ? l.as<DirectSum>().terms : std::vector<DirectSumTerm>{{l, 1}};
    const std::vector<DirectSumTerm> right = r.is<DirectSum>() ? r.as<DirectSum>().terms : std::vector<DirectSumTerm>{{r, 1}};
    std::vector<DirectSumTerm> terms;
    for (const auto& a : left)
      for (const auto& b : right) terms.push_back({external_tensor(a.sheaf, b.sheaf), a.multiplicity * b.multiplicity});
    return make_sum(terms);
  }
  if (l.is<LineBundle>() && r.is<LineBundle>()) return line(l.as<LineBundle>().twists[0], r.as<LineBundle>().twists[0]);
  return box(l, r);
}

inline FormalComplex external_product(const FormalComplex& e, const FormalComplex& f, ProductSide side) {
  if (!e.model().is<ProjSpace>() || !f.model().is<ProjSpace>())
    throw Error(ErrorKind::UnsupportedProduct, "external products are modelled for projective-space factors");
  if (!e.formal() || !f.formal()) throw Error(ErrorKind::UnsupportedProduct, "external product of glued complexes");
  const int n1 = e.model().dim();
  const int n2 = f.model().dim();
  const VarietyModel product = VarietyModel::product(n1, n2);
  std::map<int, std::vector<DirectSumTerm>> terms;
  for (const auto& [p, a] : e.sheaves())
    for (const auto& [q, b] : f.sheaves()) {
      const SheafDescriptor left = side == ProductSide::TwistFirst ? twist_descriptor(a, e.model(), n2) : a;
      const SheafDescriptor right = side == ProductSide::TwistSecond ? twist_descriptor(b, f.model(), n1) : b;
      terms[p + q].push_back({external_tensor(left, right), 1});
    }
  std::map<int, SheafDescriptor> sheaves;
  for (const auto& [deg, ts] : terms) sheaves.emplace(deg, make_sum(ts));
  return FormalComplex(product, std::move(sheaves));
}

// ---------------------------------------------------------------------------
// Hyperplane sections

inline SheafDescriptor restrict_descriptor(const SheafDescriptor& desc, const VarietyModel& from, const VarietyModel& to) {
  if (desc.is<LineBundle>() && desc.as<LineBundle>().twists.size() == 1) return desc;
  if (desc.is<Spinor>() && from.is<Quadric>() && from.as<Quadric>().n == 3 && to.is<Quadric>()) {
    const int tw = desc.as<Spinor>().twist;
    return Spinor{SpinorSign::plus, tw} + Spinor{SpinorSign::minus, tw};
  }
  if (desc.is<DirectSum>()) {
    std::vector<DirectSumTerm> terms;
    for (const auto& t : desc.as<DirectSum>().terms) terms.push_back({restrict_descriptor(t.sheaf, from, to), t.multiplicity});
    return make_sum(terms);
  }
  throw Error(ErrorKind::NoRestrictionRule, "no restriction rule for " + to_string(desc) + " on " + from.spec());
}

struct RestrictionReport {
  FormalComplex restricted;
  bool source_vanishes = false;               // E(-j) acyclic for j = 1..n
  std::optional<Witness> restricted_witness;  // first nonzero h^i(E|_Y(-j)), j = 1..n-1
};

inline RestrictionReport restrict_hyperplane(const FormalComplex& e) {
  const VarietyModel target = hyperplane_model(e.model());
  if (!e.formal()) throw Error(ErrorKind::NoRestrictionRule, "restriction of glued complexes");
  std::map<int, SheafDescriptor> sheaves;
  for (const auto& [deg, s] : e.sheaves()) sheaves.emplace(deg, restrict_descriptor(s, e.model(), target));
  FormalComplex restricted(target, std::move(sheaves));
  const int n = e.model().dim();
  const Window w{-n, 0};
  RestrictionReport report{restricted, !ulrich_vanishing_witness(hyper_table(e, w).table, n).has_value(), std::nullopt};
  report.restricted_witness = ulrich_vanishing_witness(hyper_table(restricted, w).table, n - 1);
  return report;
}

// ---------------------------------------------------------------------------
// Finite linear projection to P^n

struct PushforwardReport {
  VarietyModel target;
  HyperTable table;  // h^i(pi_* E(t)) = h^i(E(t)): finite map, projection formula
  bool trivialized = false;
  std::map<int, std::int64_t> multiplicities;  // pi_* E = ⊕ O^{m_i}[-i] when trivialized
  bool multiplicities_exact = false;           // false when glue leaves h^i(E) as an E_2 bound
  std::optional<Witness> witness;
};

inline PushforwardReport pushforward_finite(const FormalComplex& e, const VarietyModel& target) {
  if (!target.is<ProjSpace>() || target.dim() != e.model().dim())
    throw Error(ErrorKind::DimensionMismatch, "finite projection target must be P^" + std::to_string(e.model().dim()));
  PushforwardReport report{target, hyper_table(e), false, {}, false, std::nullopt};
  report.witness = ulrich_vanishing_witness(report.table.table, target.dim());
  if (report.witness) return report;
  report.trivialized = true;
  for (const auto& [i, h] : report.table.table.column(0)) report.multiplicities[i] = h;
  report.multiplicities_exact = report.table.certificates.at(0) != Certificate::UpperBoundOnly;
  return report;
}

}  // namespace ulrich_kit
