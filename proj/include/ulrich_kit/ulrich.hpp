#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulrich_kit/chern.hpp"
#include "ulrich_kit/cohomology.hpp"
#include "ulrich_kit/complexes.hpp"
#include "ulrich_kit/descriptor.hpp"
#include "ulrich_kit/error.hpp"
#include "ulrich_kit/sheaf_ops.hpp"

namespace ulrich_kit {

enum class Mode { direct, sheafwise, both };

inline std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::direct: return "direct";
    case Mode::sheafwise: return "sheafwise";
    case Mode::both: return "both";
  }
  return "";
}

inline Mode parse_mode(std::string_view text) {
  if (text == "direct") return Mode::direct;
  if (text == "sheafwise") return Mode::sheafwise;
  if (text == "both") return Mode::both;
  throw Error(ErrorKind::Parse, "mode must be direct, sheafwise or both");
}

struct Criterion {
  std::string name;
  std::vector<int> twists;
  std::optional<Witness> witness;
  std::optional<int> complex_degree;  // set for sheafwise criteria
  std::string note;
};

struct UlrichVerdict {
  bool passed = false;
  Mode mode = Mode::direct;
  std::vector<Criterion> criteria;
};

struct CheckOptions {
  std::optional<Window> window;    // default_window(dim) when unset
  std::optional<int> probe_depth;  // 2 dim + 5 when unset
};

namespace detail {

inline std::vector<int> twist_range(int hi, int lo) {
  std::vector<int> out;
  for (int t = hi; t >= lo; --t) out.push_back(t);
  return out;
}

/// Intersection of the requested window with the windows of any explicit tables inside desc.
inline Window oracle_window(const SheafDescriptor& desc, Window w) {
  if (desc.is<AbstractSheaf>() && desc.as<AbstractSheaf>().table) {
    const Window tw = desc.as<AbstractSheaf>().table->window();
    return Window{std::max(w.lo, tw.lo), std::min(w.hi, tw.hi)};
  }
  if (desc.is<DirectSum>())
    for (const auto& t : desc.as<DirectSum>().terms) w = oracle_window(t.sheaf, w);
  return w;
}

/// Descriptors whose h^0 is monotone in the twist, so a finite probe decides initializedness.
inline bool monotone_sections(const SheafDescriptor& desc) {
  if (desc.is<LineBundle>() || desc.is<Spinor>() || desc.is<SemistableEC>()) return true;
  if (desc.is<DirectSum>()) {
    for (const auto& t : desc.as<DirectSum>().terms)
      if (!monotone_sections(t.sheaf)) return false;
    return true;
  }
  return false;
}

inline std::string window_note(const Window& w) {
  return "verified on window [" + std::to_string(w.lo) + "," + std::to_string(w.hi) + "]";
}

}  // namespace detail

struct InitializedResult {
  bool initialized = false;
  std::optional<Witness> witness;
  Window probed{};
  bool global = false;  // verdict holds for all t < 0, not just the probe
};

/// h^0(E) != 0 and h^0(E(t)) = 0 for t in [-probe_depth, -1].
inline InitializedResult is_initialized(const SheafDescriptor& desc, const VarietyModel& model, int probe_depth) {
  validate(desc, model);
  InitializedResult out;
  out.probed = detail::oracle_window(desc, Window{-probe_depth, 0});
  out.global = detail::monotone_sections(desc);
  const std::int64_t h0 = sheaf_column(desc, model, 0)[0];
  if (h0 == 0) {
    out.witness = Witness{0, 0, 0};
    return out;
  }
  for (int t = -1; t >= out.probed.lo; --t) {
    const std::int64_t h = sheaf_column(desc, model, t)[0];
    if (h != 0) {
      out.witness = Witness{0, t, h};
      return out;
    }
  }
  out.initialized = true;
  return out;
}

/// Sheaf-level Ulrich check: twisted vanishing for j = 1..n, initializedness, h^0 = deg * rank,
/// plus vanishing intermediate cohomology across the window as supporting evidence.
inline UlrichVerdict is_ulrich_sheaf(const SheafDescriptor& desc, const VarietyModel& model, const CheckOptions& opts = {}) {
  validate(desc, model);
  const int n = model.dim();
  const int probe = opts.probe_depth.value_or(2 * n + 5);
  const Window window = detail::oracle_window(desc, opts.window.value_or(default_window(n)));
  if (window.lo > -std::max(n, 1) || window.hi < 0) throw Error(ErrorKind::IncompleteTable, "window must cover twists -dim..0");
  const CohomologyTable table = sheaf_table(desc, model, window);

  UlrichVerdict v;
  v.mode = Mode::sheafwise;

  Criterion vanishing{"twisted-vanishing", detail::twist_range(-1, -n), ulrich_vanishing_witness(table, n), std::nullopt, ""};
  v.criteria.push_back(vanishing);

  const InitializedResult init = is_initialized(desc, model, std::min(probe, -window.lo));
  Criterion initialized{"initialized", detail::twist_range(0, init.probed.lo), init.witness, std::nullopt,
                        init.global ? "global by monotonicity of sections" : detail::window_note(init.probed)};
  v.criteria.push_back(initialized);

  const std::int64_t expected = static_cast<std::int64_t>(model.deg()) * rank(desc, model);
  const std::int64_t h0 = table.at(0, 0);
  Criterion count{"h0-count", {0}, std::nullopt, std::nullopt, "h0 = deg * rank = " + std::to_string(expected)};
  if (h0 != expected) count.witness = Witness{0, 0, h0};
  v.criteria.push_back(count);

  Criterion intermediate{"intermediate-vanishing", detail::twist_range(window.hi, window.lo), std::nullopt, std::nullopt,
                         detail::window_note(window)};
  for (const auto& row : table.rows())
    if (row.i > 0 && row.i < n) {
      intermediate.witness = Witness{row.i, row.t, row.h};
      break;
    }
  v.criteria.push_back(intermediate);

  v.passed = std::all_of(v.criteria.begin(), v.criteria.end(), [](const Criterion& c) { return !c.witness; });
  return v;
}

/// Object-level check: direct hypercohomology vanishing, sheafwise on every cohomology sheaf, or both
/// with an agreement assertion.
inline UlrichVerdict is_ulrich_object(const FormalComplex& e, Mode mode, const CheckOptions& opts = {}) {
  const int n = e.model().dim();
  UlrichVerdict v;
  v.mode = mode;
  std::optional<bool> direct_pass, sheaf_pass;

  if (mode != Mode::sheafwise) {
    const Window w{-n, 0};
    const HyperTable hyper = hyper_table(e, w);
    Criterion c{"hypercohomology-vanishing", detail::twist_range(-1, -n), ulrich_vanishing_witness(hyper.table, n), std::nullopt, ""};
    if (c.witness) {
      c.note = std::string("certificate ") + std::string(certificate_name(hyper.certificates.at(c.witness->t)));
    } else {
      bool by_vanishing = false;
      for (int j = 1; j <= n; ++j) by_vanishing = by_vanishing || hyper.certificates.at(-j) == Certificate::ExactByVanishing;
      c.note = by_vanishing ? "certificate ExactByVanishing" : "certificate Exact";
    }
    direct_pass = !c.witness;
    v.criteria.push_back(std::move(c));
  }

  if (mode != Mode::direct) {
    bool all = true;
    for (const auto& [q, s] : e.sheaves()) {
      const UlrichVerdict sv = is_ulrich_sheaf(s, e.model(), opts);
      Criterion c{"sheafwise-ulrich", detail::twist_range(-1, -n), std::nullopt, q, to_string(s)};
      for (const auto& inner : sv.criteria)
        if (inner.witness) {
          c.witness = inner.witness;
          c.note = to_string(s) + " fails " + inner.name;
          break;
        }
      all = all && !c.witness;
      v.criteria.push_back(std::move(c));
    }
    sheaf_pass = all;
  }

  if (direct_pass && sheaf_pass && *direct_pass != *sheaf_pass)
    throw Error(ErrorKind::ModeDisagreement, "direct and sheafwise Ulrich verdicts differ");
  v.passed = direct_pass.value_or(true) && sheaf_pass.value_or(true);
  return v;
}

/// m_i with E = ⊕ O^{m_i}[-i] for an Ulrich object on P^n.
inline std::map<int, std::int64_t> pn_decompose(const FormalComplex& e) {
  if (!e.model().is<ProjSpace>()) throw Error(ErrorKind::UnsupportedModel, "pn_decompose needs a projective space");
  if (!is_ulrich_object(e, Mode::direct).passed) throw Error(ErrorKind::NotUlrich, "object is not Ulrich");
  std::map<int, std::int64_t> out;
  for (const auto& [i, h] : hyper_table(e, Window{0, 0}).table.column(0)) out[i] = h;
  return out;
}

inline FormalComplex pn_reconstruct(const VarietyModel& model, const std::map<int, std::int64_t>& mult) {
  std::map<int, SheafDescriptor> sheaves;
  for (const auto& [i, m] : mult) sheaves.emplace(i, static_cast<int>(m) * line(0));
  return FormalComplex(model, std::move(sheaves));
}

struct QuadricDecomposition {
  std::map<int, std::int64_t> spinor;  // odd quadrics: S^{m_i}[-i]
  std::map<int, std::int64_t> plus;    // even quadrics: (S+)^{m_i}[-i]
  std::map<int, std::int64_t> minus;   // even quadrics: (S-)^{m_j}[-j]
};

/// Spinor multiplicities of an Ulrich object on Q^3 or Q^2 (= P^1 x P^1 with S+ = O(1,0), S- = O(0,1)).
inline QuadricDecomposition quadric_decompose(const FormalComplex& e) {
  const VarietyModel& model = e.model();
  const bool q3 = model.is<Quadric>() && model.as<Quadric>().n == 3;
  const bool q2 = model.product_lattice() && NumClass::factor_dims(model) == std::pair<int, int>{1, 1};
  if (!q3 && !q2) throw Error(ErrorKind::UnsupportedQuadricDim, "quadric_decompose covers Q^2 and Q^3");
  if (!is_ulrich_object(e, Mode::direct).passed) throw Error(ErrorKind::NotUlrich, "object is not Ulrich");
  QuadricDecomposition out;
  const auto column = hyper_table(e, Window{0, 0}).table.column(0);
  if (q3) {
    const std::int64_t h0_spinor = spinor_column(3, SpinorSign::none, 0)[0];
    for (const auto& [i, h] : column) {
      if (h % h0_spinor != 0) throw Error(ErrorKind::NonDivisibleRank, "h^" + std::to_string(i) + " not divisible by h^0(S)");
      out.spinor[i] = h / h0_spinor;
    }
    return out;
  }
  // RHom(S+, E) = H(E(-1,0)) and RHom(S-, E) = H(E(0,-1)); S+ and S- are mutually orthogonal.
  out.plus = hyper_column_bigraded(e, -1, 0).first;
  out.minus = hyper_column_bigraded(e, 0, -1).first;
  for (const auto& [i, h] : column) {
    const std::int64_t mp = out.plus.count(i) ? out.plus.at(i) : 0;
    const std::int64_t mm = out.minus.count(i) ? out.minus.at(i) : 0;
    if (h != 2 * (mp + mm)) throw Error(ErrorKind::NonDivisibleRank, "spinor multiplicities do not account for h^" + std::to_string(i));
  }
  return out;
}

inline FormalComplex quadric_reconstruct(const VarietyModel& model, const QuadricDecomposition& d) {
  std::map<int, std::vector<DirectSumTerm>> terms;
  const bool product = model.is<ProductProj>();
  for (const auto& [i, m] : d.spinor)
    if (m) terms[i].push_back({Spinor{}, static_cast<int>(m)});
  for (const auto& [i, m] : d.plus)
    if (m) terms[i].push_back({product ? line(1, 0) : SheafDescriptor(Spinor{SpinorSign::plus, 0}), static_cast<int>(m)});
  for (const auto& [i, m] : d.minus)
    if (m) terms[i].push_back({product ? line(0, 1) : SheafDescriptor(Spinor{SpinorSign::minus, 0}), static_cast<int>(m)});
  std::map<int, SheafDescriptor> sheaves;
  for (const auto& [i, ts] : terms) sheaves.emplace(i, make_sum(ts));
  return FormalComplex(model, std::move(sheaves));
}

/// dim Ext^k(F, G) = h^k(F^dual ⊗ G), cross-checked against Serre duality whenever G also has a dual rule.
inline std::int64_t ext_dimension(const SheafDescriptor& f, const SheafDescriptor& g, int k, const VarietyModel& model) {
  validate(f, model);
  validate(g, model);
  const int n = model.dim();
  auto degree = [n](const Column& col, int i) -> std::int64_t { return i >= 0 && i <= n ? col[static_cast<std::size_t>(i)] : 0; };
  const std::int64_t value = degree(sheaf_column(hom_descriptor(f, g, model), model, 0), k);
  if (const auto canonical = canonical_bundle(model)) {
    std::optional<std::int64_t> dual;
    try {
      dual = degree(sheaf_column(hom_descriptor(g, tensor_line(f, *canonical, model), model), model, 0), n - k);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NoDualRule) throw;
    }
    if (dual && *dual != value) throw std::logic_error("Serre duality mismatch for Ext^" + std::to_string(k));
  }
  return value;
}

enum class ExtWitness { computed, asserted };

/// Yoneda-type object of a nonzero eta in Ext^m(F, G): H^0 = F, H^{-m+1} = G, glued by eta.
inline FormalComplex yoneda_build(const SheafDescriptor& f, const SheafDescriptor& g, int m, ExtWitness witness,
                                  const VarietyModel& model) {
  if (m <= 1) throw Error(ErrorKind::DegenerateExtension, "m = 1 extensions are sheaves; build the extension sheaf instead");
  if (!is_ulrich_sheaf(f, model).passed || !is_ulrich_sheaf(g, model).passed)
    throw Error(ErrorKind::NotUlrichInput, "Yoneda inputs must be Ulrich sheaves");
  if (m > model.dim()) throw Error(ErrorKind::ZeroExt, "Ext^" + std::to_string(m) + " vanishes above the dimension");
  if (witness == ExtWitness::computed && ext_dimension(f, g, m, model) == 0)
    throw Error(ErrorKind::ZeroExt, "Ext^" + std::to_string(m) + "(" + to_string(f) + ", " + to_string(g) + ") = 0");
  return FormalComplex(model, {{0, f}, {-m + 1, g}}, {Glue{0, -m + 1, m, true}});
}

/// Numerical Ulrich sheaf of rank r on a Picard-rank-one surface: class from the Riemann-Roch
/// constraints and the table an aCM sheaf with that class must have (h^0 = chi for t >= 0,
/// h^2 = chi for t <= -3, zero at t = -1, -2).
inline SheafDescriptor abstract_ulrich_sheaf(const VarietyModel& model, int r) {
  if (r < 1) throw Error(ErrorKind::MalformedModel, "Ulrich sheaf rank must be >= 1");
  const NumClass cls = ulrich_chern_solve(model, r).cls;
  const Window w = default_window(model.dim());
  CohomologyTable table(w);
  for (int t = w.lo; t <= w.hi; ++t) {
    const Rational chi = euler_char(twist_class(cls, t));
    if (!is_integer(chi) || chi < 0) throw std::logic_error("Ulrich class with non-integral Euler characteristic");
    const auto h = static_cast<std::int64_t>(boost::multiprecision::numerator(chi));
    if (t >= 0) table.set(0, t, h);
    else if (t <= -3) table.set(2, t, h);
    else if (h != 0) throw std::logic_error("Ulrich class with chi(E(-1)) or chi(E(-2)) nonzero");
  }
  return AbstractSheaf{r, cls, table, "ulrich(" + std::to_string(r) + ")"};
}

}  // namespace ulrich_kit
