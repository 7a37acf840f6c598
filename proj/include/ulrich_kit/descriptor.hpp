#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ulrich_kit/error.hpp"
#include "ulrich_kit/num_class.hpp"
#include "ulrich_kit/table.hpp"
#include "ulrich_kit/variety.hpp"

namespace ulrich_kit {

struct SheafDescriptor;

/// O(k) on Picard-rank-one models, O(a,b) on products (and on Q^2 through its rulings).
/// On an elliptic curve O(k) is the k-th power of the polarization, degree k*d.
struct LineBundle {
  std::vector<int> twists;
  friend bool operator==(const LineBundle&, const LineBundle&) = default;
};

enum class SpinorSign { none, plus, minus };

/// Spinor bundle normalized to be initialized (h^0 = deg * rank); `twist` tensors by O(twist).
struct Spinor {
  SpinorSign sign = SpinorSign::none;
  int twist = 0;
  friend bool operator==(const Spinor&, const Spinor&) = default;
};

/// Semistable bundle on an elliptic curve. `trivial_type` says whether its degree-zero twist
/// (when one exists) has a summand of trivial type; unknown is allowed until a table needs it.
struct SemistableEC {
  int rank = 1;
  int degree = 0;
  std::optional<bool> trivial_type;
  friend bool operator==(const SemistableEC&, const SemistableEC&) = default;
};

/// Opaque sheaf known only through its numbers: an explicit table and/or a numerical class.
struct AbstractSheaf {
  int rank = 0;
  std::optional<NumClass> num_class;
  std::optional<CohomologyTable> table;
  std::string label;
  friend bool operator==(const AbstractSheaf& a, const AbstractSheaf& b) {
    return a.rank == b.rank && a.num_class == b.num_class && a.table == b.table && a.label == b.label;
  }
};

struct DirectSumTerm;

struct DirectSum {
  std::vector<DirectSumTerm> terms;
};

/// left on the first factor P^{n1}, right on the second factor P^{n2}.
struct ExternalTensor {
  std::shared_ptr<const SheafDescriptor> left;
  std::shared_ptr<const SheafDescriptor> right;
};

struct SheafDescriptor {
  using Variant = std::variant<LineBundle, Spinor, SemistableEC, AbstractSheaf, DirectSum, ExternalTensor>;
  Variant value;

  SheafDescriptor() : value(LineBundle{{0}}) {}
  SheafDescriptor(LineBundle v) : value(std::move(v)) {}       // NOLINT(google-explicit-constructor)
  SheafDescriptor(Spinor v) : value(std::move(v)) {}           // NOLINT(google-explicit-constructor)
  SheafDescriptor(SemistableEC v) : value(std::move(v)) {}     // NOLINT(google-explicit-constructor)
  SheafDescriptor(AbstractSheaf v) : value(std::move(v)) {}    // NOLINT(google-explicit-constructor)
  SheafDescriptor(DirectSum v) : value(std::move(v)) {}        // NOLINT(google-explicit-constructor)
  SheafDescriptor(ExternalTensor v) : value(std::move(v)) {}   // NOLINT(google-explicit-constructor)

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(value);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(value);
  }
};

struct DirectSumTerm {
  SheafDescriptor sheaf;
  int multiplicity = 1;
};

bool operator==(const SheafDescriptor& a, const SheafDescriptor& b);

inline bool operator==(const DirectSumTerm& a, const DirectSumTerm& b) {
  return a.multiplicity == b.multiplicity && a.sheaf == b.sheaf;
}
inline bool operator==(const DirectSum& a, const DirectSum& b) { return a.terms == b.terms; }
inline bool operator==(const ExternalTensor& a, const ExternalTensor& b) { return *a.left == *b.left && *a.right == *b.right; }
inline bool operator==(const SheafDescriptor& a, const SheafDescriptor& b) { return a.value == b.value; }

inline SheafDescriptor line(int k) { return LineBundle{{k}}; }
inline SheafDescriptor line(int a, int b) { return LineBundle{{a, b}}; }

inline SheafDescriptor box(SheafDescriptor left, SheafDescriptor right) {
  return ExternalTensor{std::make_shared<const SheafDescriptor>(std::move(left)),
                        std::make_shared<const SheafDescriptor>(std::move(right))};
}

/// Flattens nested sums and merges equal summands; a single summand of multiplicity one is returned bare.
inline SheafDescriptor make_sum(const std::vector<DirectSumTerm>& terms) {
  std::vector<DirectSumTerm> flat;
  auto push = [&flat](const SheafDescriptor& s, int m) {
    for (auto& t : flat)
      if (t.sheaf == s) {
        t.multiplicity += m;
        return;
      }
    flat.push_back({s, m});
  };
  for (const auto& term : terms) {
    if (term.multiplicity < 1) throw Error(ErrorKind::MalformedModel, "direct-sum multiplicity must be >= 1");
    if (term.sheaf.is<DirectSum>()) {
      for (const auto& inner : term.sheaf.as<DirectSum>().terms) push(inner.sheaf, inner.multiplicity * term.multiplicity);
    } else {
      push(term.sheaf, term.multiplicity);
    }
  }
  if (flat.empty()) throw Error(ErrorKind::MalformedModel, "empty direct sum");
  if (flat.size() == 1 && flat.front().multiplicity == 1) return flat.front().sheaf;
  return DirectSum{std::move(flat)};
}

inline SheafDescriptor operator+(const SheafDescriptor& a, const SheafDescriptor& b) { return make_sum({{a, 1}, {b, 1}}); }
inline SheafDescriptor operator*(int m, const SheafDescriptor& a) { return make_sum({{a, m}}); }

namespace detail {

inline VarietyModel left_factor(const VarietyModel& model) {
  return VarietyModel::proj_space(model.as<ProductProj>().n1);
}
inline VarietyModel right_factor(const VarietyModel& model) {
  return VarietyModel::proj_space(model.as<ProductProj>().n2);
}

inline std::size_t line_length(const VarietyModel& model) { return model.is<ProductProj>() ? 2 : 1; }

}  // namespace detail

inline void validate(const SheafDescriptor& desc, const VarietyModel& model) {
  auto fail = [&](const std::string& why) { throw Error(ErrorKind::MalformedModel, why + " on " + model.spec()); };
  std::visit(
      [&](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, LineBundle>) {
          const bool q2_bidegree = model.is<Quadric>() && model.as<Quadric>().n == 2 && d.twists.size() == 2;
          if (d.twists.size() != detail::line_length(model) && !q2_bidegree) fail("line bundle twist vector has wrong length");
        } else if constexpr (std::is_same_v<D, Spinor>) {
          if (!model.is<Quadric>()) fail("spinor bundles live on quadrics");
          const int n = model.as<Quadric>().n;
          if (n != 2 && n != 3) throw Error(ErrorKind::UnsupportedQuadricDim, "spinor oracle covers Q^2 and Q^3 only");
          if ((n % 2 == 0) != (d.sign != SpinorSign::none)) fail("spinor sign is required exactly on even quadrics");
        } else if constexpr (std::is_same_v<D, SemistableEC>) {
          if (!model.is<EllipticCurve>()) fail("semistable elliptic bundles need an elliptic curve");
          if (d.rank < 1) fail("semistable bundle rank must be >= 1");
        } else if constexpr (std::is_same_v<D, AbstractSheaf>) {
          if (d.rank < 0) fail("negative rank");
          if (d.num_class && !(d.num_class->model() == model)) throw Error(ErrorKind::ModelMismatch, "abstract class model differs");
        } else if constexpr (std::is_same_v<D, DirectSum>) {
          if (d.terms.empty()) fail("empty direct sum");
          for (const auto& t : d.terms) {
            if (t.multiplicity < 1) fail("direct-sum multiplicity must be >= 1");
            validate(t.sheaf, model);
          }
        } else if constexpr (std::is_same_v<D, ExternalTensor>) {
          if (!model.is<ProductProj>()) fail("external tensor products need a product model");
          validate(*d.left, detail::left_factor(model));
          validate(*d.right, detail::right_factor(model));
        }
      },
      desc.value);
}

inline int rank(const SheafDescriptor& desc, const VarietyModel& model) {
  return std::visit(
      [&](const auto& d) -> int {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, LineBundle>) return 1;
        if constexpr (std::is_same_v<D, Spinor>) return model.is<Quadric>() && model.as<Quadric>().n == 3 ? 2 : 1;
        if constexpr (std::is_same_v<D, SemistableEC>) return d.rank;
        if constexpr (std::is_same_v<D, AbstractSheaf>) return d.rank;
        if constexpr (std::is_same_v<D, DirectSum>) {
          int total = 0;
          for (const auto& t : d.terms) total += t.multiplicity * rank(t.sheaf, model);
          return total;
        }
        if constexpr (std::is_same_v<D, ExternalTensor>)
          return rank(*d.left, detail::left_factor(model)) * rank(*d.right, detail::right_factor(model));
      },
      desc.value);
}

inline std::string to_string(const SheafDescriptor& desc) {
  return std::visit(
      [](const auto& d) -> std::string {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, LineBundle>) {
          std::string out = "O(";
          for (std::size_t k = 0; k < d.twists.size(); ++k) out += (k ? "," : "") + std::to_string(d.twists[k]);
          return out + ")";
        }
        if constexpr (std::is_same_v<D, Spinor>) {
          std::string out = "S";
          if (d.sign == SpinorSign::plus) out += "+";
          if (d.sign == SpinorSign::minus) out += "-";
          if (d.twist != 0) out += "(" + std::to_string(d.twist) + ")";
          return out;
        }
        if constexpr (std::is_same_v<D, SemistableEC>) {
          std::string out = "ss(" + std::to_string(d.rank) + "," + std::to_string(d.degree);
          if (d.trivial_type) out += *d.trivial_type ? ",triv" : ",nontriv";
          return out + ")";
        }
        if constexpr (std::is_same_v<D, AbstractSheaf>) {
          return d.label.empty() ? "abstract(r=" + std::to_string(d.rank) + ")" : d.label;
        }
        if constexpr (std::is_same_v<D, DirectSum>) {
          std::string out;
          for (std::size_t k = 0; k < d.terms.size(); ++k) {
            if (k) out += "+";
            const auto& t = d.terms[k];
            if (t.multiplicity != 1) out += std::to_string(t.multiplicity) + "*";
            const bool nested = t.sheaf.template is<DirectSum>();
            out += nested ? "(" + to_string(t.sheaf) + ")" : to_string(t.sheaf);
          }
          return out;
        }
        if constexpr (std::is_same_v<D, ExternalTensor>) return "box(" + to_string(*d.left) + ";" + to_string(*d.right) + ")";
      },
      desc.value);
}

}  // namespace ulrich_kit
