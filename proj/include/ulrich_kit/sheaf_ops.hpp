#pragma once

#include <optional>

#include "ulrich_kit/chern.hpp"
#include "ulrich_kit/cohomology.hpp"
#include "ulrich_kit/descriptor.hpp"
#include "ulrich_kit/error.hpp"

namespace ulrich_kit {

/// desc ⊗ O(k).
inline SheafDescriptor twist_descriptor(const SheafDescriptor& desc, const VarietyModel& model, int k) {
  if (k == 0) return desc;
  return std::visit(
      [&](const auto& d) -> SheafDescriptor {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, LineBundle>) {
          LineBundle out = d;
          for (auto& x : out.twists) x += k;
          return out;
        }
        if constexpr (std::is_same_v<D, Spinor>) return Spinor{d.sign, d.twist + k};
        if constexpr (std::is_same_v<D, SemistableEC>)
          return SemistableEC{d.rank, d.degree + d.rank * k * model.as<EllipticCurve>().d, d.trivial_type};
        if constexpr (std::is_same_v<D, AbstractSheaf>) {
          AbstractSheaf out = d;
          if (out.table) out.table = out.table->twisted(k);
          if (out.num_class) out.num_class = twist_class(*out.num_class, k);
          if (!out.label.empty()) out.label = "(" + out.label + ")(" + std::to_string(k) + ")";
          return out;
        }
        if constexpr (std::is_same_v<D, DirectSum>) {
          std::vector<DirectSumTerm> terms;
          for (const auto& t : d.terms) terms.push_back({twist_descriptor(t.sheaf, model, k), t.multiplicity});
          return make_sum(terms);
        }
        if constexpr (std::is_same_v<D, ExternalTensor>)
          return box(twist_descriptor(*d.left, detail::left_factor(model), k),
                     twist_descriptor(*d.right, detail::right_factor(model), k));
      },
      desc.value);
}

/// desc ⊗ O(a, b) on a product lattice model.
inline SheafDescriptor twist_descriptor_bigraded(const SheafDescriptor& desc, const VarietyModel& model, int a, int b) {
  if (!model.product_lattice()) throw Error(ErrorKind::UnsupportedModel, "bigraded twist needs a product lattice");
  if (a == b) return twist_descriptor(desc, model, a);
  return std::visit(
      [&](const auto& d) -> SheafDescriptor {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, LineBundle>) {
          const int x = d.twists[0];
          const int y = d.twists.size() == 2 ? d.twists[1] : d.twists[0];
          return line(x + a, y + b);
        }
        if constexpr (std::is_same_v<D, Spinor>) {
          const int x = d.twist + (d.sign == SpinorSign::plus ? 1 : 0);
          const int y = d.twist + (d.sign == SpinorSign::minus ? 1 : 0);
          return line(x + a, y + b);
        }
        if constexpr (std::is_same_v<D, DirectSum>) {
          std::vector<DirectSumTerm> terms;
          for (const auto& t : d.terms) terms.push_back({twist_descriptor_bigraded(t.sheaf, model, a, b), t.multiplicity});
          return make_sum(terms);
        }
        if constexpr (std::is_same_v<D, ExternalTensor>)
          return box(twist_descriptor(*d.left, detail::left_factor(model), a),
                     twist_descriptor(*d.right, detail::right_factor(model), b));
        if constexpr (std::is_same_v<D, AbstractSheaf> || std::is_same_v<D, SemistableEC>) {
          throw Error(ErrorKind::NoOracle, "no bigraded twist for " + to_string(desc));
          return desc;
        }
      },
      desc.value);
}

namespace detail {

inline SemistableEC as_elliptic_bundle(const SheafDescriptor& desc, const VarietyModel& model) {
  if (desc.is<SemistableEC>()) return desc.as<SemistableEC>();
  if (desc.is<LineBundle>()) return SemistableEC{1, desc.as<LineBundle>().twists[0] * model.as<EllipticCurve>().d, true};
  throw Error(ErrorKind::NoDualRule, "not an elliptic bundle descriptor: " + to_string(desc));
}

inline std::optional<bool> combined_type(std::optional<bool> f, const SemistableEC& g) {
  if (!f) return std::nullopt;
  if (*f) return g.trivial_type;
  if (g.rank == 1 && g.trivial_type == true) return false;
  return std::nullopt;
}

}  // namespace detail

/// F^dual ⊗ G for the descriptors with a duality rule (line bundles, spinors against line bundles,
/// rank-one elliptic bundles); its cohomology computes Ext^*(F, G).
inline SheafDescriptor hom_descriptor(const SheafDescriptor& f, const SheafDescriptor& g, const VarietyModel& model) {
  if (g.is<DirectSum>()) {
    std::vector<DirectSumTerm> terms;
    for (const auto& t : g.as<DirectSum>().terms) terms.push_back({hom_descriptor(f, t.sheaf, model), t.multiplicity});
    return make_sum(terms);
  }
  if (model.is<EllipticCurve>()) {
    const SemistableEC fb = detail::as_elliptic_bundle(f, model);
    if (fb.rank != 1) throw Error(ErrorKind::NoDualRule, "elliptic duality rule covers rank one only");
    const SemistableEC gb = detail::as_elliptic_bundle(g, model);
    return SemistableEC{gb.rank, gb.degree - gb.rank * fb.degree, detail::combined_type(fb.trivial_type, gb)};
  }
  if (model.product_lattice()) {
    int a = 0, b = 0;
    if (f.is<LineBundle>()) {
      const auto& tw = f.as<LineBundle>().twists;
      a = tw[0];
      b = tw.size() == 2 ? tw[1] : tw[0];
    } else if (f.is<Spinor>()) {
      const auto& s = f.as<Spinor>();
      a = s.twist + (s.sign == SpinorSign::plus ? 1 : 0);
      b = s.twist + (s.sign == SpinorSign::minus ? 1 : 0);
    } else {
      throw Error(ErrorKind::NoDualRule, "no dual rule for " + to_string(f));
    }
    return twist_descriptor_bigraded(g, model, -a, -b);
  }
  if (f.is<LineBundle>()) return twist_descriptor(g, model, -f.as<LineBundle>().twists[0]);
  if (f.is<Spinor>() && model.is<Quadric>() && model.as<Quadric>().n == 3 && g.is<LineBundle>()) {
    // S^dual = S(-1) for the initialized spinor bundle on Q^3.
    return Spinor{SpinorSign::none, g.as<LineBundle>().twists[0] - 1 - f.as<Spinor>().twist};
  }
  throw Error(ErrorKind::NoDualRule, "no dual rule for Hom(" + to_string(f) + ", " + to_string(g) + ")");
}

/// K_X as a line-bundle descriptor where the model knows it.
inline std::optional<SheafDescriptor> canonical_bundle(const VarietyModel& model) {
  if (model.is<ProjSpace>()) return line(-model.as<ProjSpace>().n - 1);
  if (model.is<Quadric>()) return line(-model.as<Quadric>().n);
  if (model.is<ProductProj>()) return line(-model.as<ProductProj>().n1 - 1, -model.as<ProductProj>().n2 - 1);
  if (model.is<EllipticCurve>()) return line(0);
  return std::nullopt;
}

/// F ⊗ L for a line bundle L.
inline SheafDescriptor tensor_line(const SheafDescriptor& f, const SheafDescriptor& l, const VarietyModel& model) {
  const auto& tw = l.as<LineBundle>().twists;
  if (tw.size() == 2) return twist_descriptor_bigraded(f, model, tw[0], tw[1]);
  return twist_descriptor(f, model, tw[0]);
}

}  // namespace ulrich_kit
