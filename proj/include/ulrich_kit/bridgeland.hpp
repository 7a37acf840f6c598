#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ulrich_kit/chern.hpp"
#include "ulrich_kit/complexes.hpp"
#include "ulrich_kit/descriptor.hpp"
#include "ulrich_kit/error.hpp"
#include "ulrich_kit/rational.hpp"

namespace ulrich_kit {

/// Gaussian rational re + i im.
struct ChargeValue {
  Rational re = 0;
  Rational im = 0;
  friend bool operator==(const ChargeValue&, const ChargeValue&) = default;
};

namespace detail {

inline SurfaceData require_surface(const VarietyModel& model) {
  const auto data = surface_data(model);
  if (!data) throw Error(ErrorKind::UnsupportedModel, "divisorial charges need a Picard-rank-one surface");
  return *data;
}

inline void require_positive(const Rational& t) {
  if (t <= 0) throw Error(ErrorKind::NonpositiveT, "t must be positive");
}

}  // namespace detail

/// mu_H = c1.H / (rk H^2) = e1 / r; nullopt for rank zero (infinite slope).
inline std::optional<Rational> slope(const NumClass& c) {
  if (c.product_lattice()) throw Error(ErrorKind::UnsupportedModel, "slope needs a Picard-rank-one model");
  if (c.r() == 0) return std::nullopt;
  return c.e1() / c.r();
}

/// Z(F) = -integral of exp(-(s + i t) H) ch(F).
inline ChargeValue central_charge(const NumClass& c, const Rational& s, const Rational& t) {
  const SurfaceData data = detail::require_surface(c.model());
  detail::require_positive(t);
  const Rational d = data.d;
  const Rational r = c.r(), e1 = c.e1(), e2 = c.e2();
  // (s + i t)^2 = (s^2 - t^2) + 2 s t i
  ChargeValue z;
  z.re = -(e2 * d - s * e1 * d + (s * s - t * t) * d * r / 2);
  z.im = -(-t * e1 * d + s * t * d * r);
  return z;
}

/// Closed-form charge of a rank-r Ulrich class, evaluated term by term.
inline ChargeValue ulrich_charge_closed_form(int r, const Rational& s, const Rational& t, const VarietyModel& model) {
  const SurfaceData data = detail::require_surface(model);
  detail::require_positive(t);
  const Rational rd = Rational(r) * data.d;
  const Rational& i = data.i_x;
  ChargeValue z;
  z.re = -Rational(r) * data.chi0 + rd / 4 * (i * i + 3 * i + 4) + rd / 2 * (s * s - t * t + (i + 3) * s);
  z.im = rd / 2 * (2 * s + i + 3) * t;
  return z;
}

/// Phase in (-1, 1] as a multiple of pi; nullopt at Z = 0. Report-layer only.
inline std::optional<double> phase(const ChargeValue& z) {
  if (z.re == 0 && z.im == 0) return std::nullopt;
  const double p = std::atan2(to_double(z.im), to_double(z.re)) / std::acos(-1.0);
  return p == -1.0 ? 1.0 : p;
}

enum class SlopeConvention { paper_literal, normalized };

inline std::string_view convention_name(SlopeConvention c) {
  return c == SlopeConvention::paper_literal ? "paper-literal" : "normalized";
}

inline SlopeConvention parse_convention(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::MissingConvention, "a slope convention must be named");
  if (text == "paper-literal") return SlopeConvention::paper_literal;
  if (text == "normalized") return SlopeConvention::normalized;
  throw Error(ErrorKind::Parse, "unknown slope convention: " + std::string(text));
}

/// Slope threshold for the torsion pair: s d (paper-literal) or s (normalized).
inline Rational slope_threshold(const VarietyModel& model, const Rational& s, SlopeConvention c) {
  return c == SlopeConvention::paper_literal ? s * model.deg() : s;
}

enum class TorsionPart { F, T };

inline std::string_view torsion_name(TorsionPart p) { return p == TorsionPart::F ? "F" : "T"; }

/// Common slope of a semistable-type descriptor; nullopt for torsion.
inline std::optional<Rational> descriptor_slope(const SheafDescriptor& desc, const VarietyModel& model) {
  if (desc.is<DirectSum>()) {
    std::optional<std::optional<Rational>> common;
    for (const auto& t : desc.as<DirectSum>().terms) {
      const auto mu = descriptor_slope(t.sheaf, model);
      if (common && *common != mu) throw Error(ErrorKind::NoSlope, "summands of " + to_string(desc) + " have different slopes");
      common = mu;
    }
    return common.value_or(std::nullopt);
  }
  return slope(class_of(desc, model));
}

/// F: mu <= threshold; T: mu > threshold or torsion.
inline TorsionPart torsion_classify(const SheafDescriptor& desc, const VarietyModel& model, const Rational& s, SlopeConvention c) {
  const auto mu = descriptor_slope(desc, model);
  if (!mu) return TorsionPart::T;
  return *mu <= slope_threshold(model, s, c) ? TorsionPart::F : TorsionPart::T;
}

enum class HeartVerdict { MaybeInHeart, NotInHeart };

inline std::string_view heart_verdict_name(HeartVerdict v) { return v == HeartVerdict::MaybeInHeart ? "MaybeInHeart" : "NotInHeart"; }

enum class HeartReason { amplitude, equal_slope, F_condition, T_condition };

inline std::string_view heart_reason_name(HeartReason r) {
  switch (r) {
    case HeartReason::amplitude: return "amplitude";
    case HeartReason::equal_slope: return "equal-slope";
    case HeartReason::F_condition: return "F-condition";
    case HeartReason::T_condition: return "T-condition";
  }
  return "";
}

struct HeartResult {
  HeartVerdict verdict = HeartVerdict::MaybeInHeart;
  std::optional<HeartReason> reason;
  int best_shift = 0;  // E[best_shift] is the candidate placed in degrees {-1, 0}
};

/// Necessary conditions for E[k] to lie in the tilted heart for some k: two-term amplitude,
/// H^{-1} in F, H^0 in T, and (if both are nonzero) different slopes.
inline HeartResult heart_gate(const FormalComplex& e, const Rational& s, SlopeConvention c) {
  HeartResult out;
  const auto& sheaves = e.sheaves();
  if (sheaves.empty()) return out;
  const int lo = sheaves.begin()->first;
  const int hi = sheaves.rbegin()->first;
  if (hi - lo > 1) {
    out.verdict = HeartVerdict::NotInHeart;
    out.reason = HeartReason::amplitude;
    out.best_shift = hi;
    return out;
  }
  const VarietyModel& model = e.model();
  if (lo == hi) {
    // A single sheaf goes to degree 0 when it is in T and to degree -1 when it is in F.
    const TorsionPart part = torsion_classify(sheaves.begin()->second, model, s, c);
    out.best_shift = part == TorsionPart::T ? hi : hi + 1;
    return out;
  }
  out.best_shift = hi;
  const SheafDescriptor& minus1 = sheaves.at(lo);
  const SheafDescriptor& zero = sheaves.at(hi);
  if (descriptor_slope(minus1, model) == descriptor_slope(zero, model)) {
    out.verdict = HeartVerdict::NotInHeart;
    out.reason = HeartReason::equal_slope;
  } else if (torsion_classify(minus1, model, s, c) != TorsionPart::F) {
    out.verdict = HeartVerdict::NotInHeart;
    out.reason = HeartReason::F_condition;
  } else if (torsion_classify(zero, model, s, c) != TorsionPart::T) {
    out.verdict = HeartVerdict::NotInHeart;
    out.reason = HeartReason::T_condition;
  }
  return out;
}

struct Grid {
  std::vector<Rational> s;
  std::vector<Rational> t;
};

struct ScanRow {
  Rational s, t;
  HeartResult heart;
  ChargeValue charge;  // of E[best_shift]
  bool im_zero = false;
  std::optional<ChargeValue> closed_form;  // when the class is a rank-r Ulrich class, r != 0
  std::optional<bool> closed_form_im_zero;
  std::optional<double> phase;
};

/// Exploratory (s, t) table: heart gate, charge and phase per grid point; never a stability verdict.
inline std::vector<ScanRow> question_scan(const FormalComplex& e, Grid grid, SlopeConvention c) {
  if (grid.s.empty() || grid.t.empty()) throw Error(ErrorKind::EmptyGrid, "scan grid is empty");
  std::sort(grid.s.begin(), grid.s.end());
  std::sort(grid.t.begin(), grid.t.end());
  grid.s.erase(std::unique(grid.s.begin(), grid.s.end()), grid.s.end());
  grid.t.erase(std::unique(grid.t.begin(), grid.t.end()), grid.t.end());
  for (const auto& t : grid.t) detail::require_positive(t);
  detail::require_surface(e.model());

  const NumClass cls = class_of(e);
  std::optional<int> ulrich_rank;
  if (cls.r() != 0 && is_integer(cls.r())) {
    const int r = static_cast<int>(boost::multiprecision::numerator(cls.r()));
    if (ulrich_chern_solve(e.model(), r).cls == cls) ulrich_rank = r;
  }

  std::vector<ScanRow> rows;
  for (const auto& s : grid.s)
    for (const auto& t : grid.t) {
      ScanRow row{s, t, heart_gate(e, s, c), {}, false, std::nullopt, std::nullopt, std::nullopt};
      const NumClass shifted = row.heart.best_shift % 2 == 0 ? cls : cls * Rational(-1);
      row.charge = central_charge(shifted, s, t);
      row.im_zero = row.charge.im == 0;
      if (ulrich_rank) {
        row.closed_form = ulrich_charge_closed_form(*ulrich_rank, s, t, e.model());
        row.closed_form_im_zero = row.closed_form->im == 0;
      }
      row.phase = phase(row.charge);
      rows.push_back(std::move(row));
    }
  return rows;
}

}  // namespace ulrich_kit
