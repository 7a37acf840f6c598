#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ulrich_kit/error.hpp"
#include "ulrich_kit/rational.hpp"

namespace ulrich_kit {

struct ProjSpace {
  int n = 1;
};

/// Smooth quadric hypersurface Q^n in P^{n+1}.
struct Quadric {
  int n = 2;
};

/// P^{n1} x P^{n2}, always polarized by O(1,1).
struct ProductProj {
  int n1 = 1;
  int n2 = 1;
};

/// Purely numeric Picard-rank-one surface: Pic = Z[H], H^2 = d, K = i_X H.
struct Rank1Surface {
  int d = 1;
  Rational i_x = 0;
  int chi0 = 1;
};

/// Genus-one curve embedded by a degree-d line bundle O(1).
struct EllipticCurve {
  int d = 3;
};

struct Invariants {
  int dim = 0;
  int deg = 0;
  std::optional<Rational> canonical_coeff;
  int chi0 = 0;
  std::optional<int> k0_rank;
  std::optional<int> ambient_dim;
};

/// (d, i_X, chi(O)) for the Picard-rank-one surfaces.
struct SurfaceData {
  int d = 1;
  Rational i_x = 0;
  int chi0 = 1;
};

namespace detail {

inline int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw Error(ErrorKind::Parse, "bad integer '" + std::string(text) + "' in '" + std::string(whole) + "'");
  return value;
}

}  // namespace detail

class VarietyModel {
 public:
  using Kind = std::variant<ProjSpace, Quadric, ProductProj, Rank1Surface, EllipticCurve>;

  VarietyModel(Kind kind) : kind_(std::move(kind)) { validate(); }  // NOLINT(google-explicit-constructor)

  static VarietyModel proj_space(int n) { return VarietyModel(ProjSpace{n}); }
  static VarietyModel quadric(int n) { return VarietyModel(Quadric{n}); }
  static VarietyModel product(int n1, int n2) { return VarietyModel(ProductProj{n1, n2}); }
  static VarietyModel surface(int d, Rational i_x, int chi0) { return VarietyModel(Rank1Surface{d, std::move(i_x), chi0}); }
  static VarietyModel elliptic(int d) { return VarietyModel(EllipticCurve{d}); }

  /// Grammar: pn:<n>, quadric:<n>, prod:<n1>x<n2>, surface:d=<d>,i=<i>,chi=<c>, elliptic:<d>.
  static VarietyModel parse(std::string_view text);

  const Kind& kind() const { return kind_; }

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(kind_);
  }

  template <class T>
  const T& as() const {
    return std::get<T>(kind_);
  }

  int dim() const {
    return std::visit(
        [](const auto& m) -> int {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, ProjSpace>) return m.n;
          if constexpr (std::is_same_v<M, Quadric>) return m.n;
          if constexpr (std::is_same_v<M, ProductProj>) return m.n1 + m.n2;
          if constexpr (std::is_same_v<M, Rank1Surface>) return 2;
          if constexpr (std::is_same_v<M, EllipticCurve>) return 1;
        },
        kind_);
  }

  int deg() const {
    return std::visit(
        [](const auto& m) -> int {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, ProjSpace>) return 1;
          if constexpr (std::is_same_v<M, Quadric>) return 2;
          if constexpr (std::is_same_v<M, ProductProj>) return static_cast<int>(binomial(m.n1 + m.n2, m.n1));
          if constexpr (std::is_same_v<M, Rank1Surface>) return m.d;
          if constexpr (std::is_same_v<M, EllipticCurve>) return m.d;
        },
        kind_);
  }

  /// Quadric surfaces carry the two rulings, so their numerical classes live on the P^1 x P^1 lattice.
  bool product_lattice() const { return is<ProductProj>() || (is<Quadric>() && as<Quadric>().n == 2); }

  std::string spec() const {
    return std::visit(
        [](const auto& m) -> std::string {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, ProjSpace>) return "pn:" + std::to_string(m.n);
          if constexpr (std::is_same_v<M, Quadric>) return "quadric:" + std::to_string(m.n);
          if constexpr (std::is_same_v<M, ProductProj>)
            return "prod:" + std::to_string(m.n1) + "x" + std::to_string(m.n2);
          if constexpr (std::is_same_v<M, Rank1Surface>)
            return "surface:d=" + std::to_string(m.d) + ",i=" + to_string(m.i_x) + ",chi=" + std::to_string(m.chi0);
          if constexpr (std::is_same_v<M, EllipticCurve>) return "elliptic:" + std::to_string(m.d);
        },
        kind_);
  }

  friend bool operator==(const VarietyModel& a, const VarietyModel& b) { return a.spec() == b.spec(); }

 private:
  void validate() const {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::MalformedModel, why); };
    std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, ProjSpace>) {
            if (m.n < 1) fail("projective space needs n >= 1");
          } else if constexpr (std::is_same_v<M, Quadric>) {
            if (m.n < 2) fail("quadric needs n >= 2");
          } else if constexpr (std::is_same_v<M, ProductProj>) {
            if (m.n1 < 1 || m.n2 < 1) fail("product factors need positive dimension");
          } else if constexpr (std::is_same_v<M, Rank1Surface>) {
            if (m.d < 1) fail("surface degree H^2 must be >= 1");
          } else if constexpr (std::is_same_v<M, EllipticCurve>) {
            if (m.d < 3) fail("O(1) on a genus-one curve is very ample only for d >= 3");
          }
        },
        kind_);
  }

  Kind kind_;
};

inline VarietyModel VarietyModel::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorKind::Parse, "variety spec needs '<kind>:' in '" + std::string(text) + "'");
  const std::string_view head = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (head == "pn") return proj_space(detail::parse_int(body, text));
  if (head == "quadric") return quadric(detail::parse_int(body, text));
  if (head == "elliptic") return elliptic(detail::parse_int(body, text));
  if (head == "prod") {
    const auto x = body.find('x');
    if (x == std::string_view::npos) throw Error(ErrorKind::Parse, "product spec is prod:<n1>x<n2>");
    return product(detail::parse_int(body.substr(0, x), text), detail::parse_int(body.substr(x + 1), text));
  }
  if (head == "surface") {
    std::optional<int> d, chi;
    std::optional<Rational> i;
    std::string_view rest = body;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorKind::Parse, "surface spec items are key=value");
      const std::string_view key = item.substr(0, eq);
      const std::string_view value = item.substr(eq + 1);
      if (key == "d") d = detail::parse_int(value, text);
      else if (key == "i") i = parse_rational(value);
      else if (key == "chi") chi = detail::parse_int(value, text);
      else throw Error(ErrorKind::Parse, "unknown surface key '" + std::string(key) + "'");
    }
    if (!d || !i || !chi) throw Error(ErrorKind::Parse, "surface spec needs d=, i= and chi=");
    return surface(*d, *i, *chi);
  }
  throw Error(ErrorKind::Parse, "unknown variety kind '" + std::string(head) + "'");
}

inline Invariants invariants(const VarietyModel& model) {
  Invariants inv;
  inv.dim = model.dim();
  inv.deg = model.deg();
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, ProjSpace>) {
          inv.canonical_coeff = Rational(-(m.n + 1));
          inv.chi0 = 1;
          inv.k0_rank = m.n + 1;
          inv.ambient_dim = m.n;
        } else if constexpr (std::is_same_v<M, Quadric>) {
          inv.canonical_coeff = Rational(-m.n);
          inv.chi0 = 1;
          inv.k0_rank = m.n % 2 == 0 ? m.n + 2 : m.n + 1;
          inv.ambient_dim = m.n + 1;
        } else if constexpr (std::is_same_v<M, ProductProj>) {
          // K = O(-n1-1, -n2-1) is a multiple of H = O(1,1) only for equal factors.
          if (m.n1 == m.n2) inv.canonical_coeff = Rational(-(m.n1 + 1));
          inv.chi0 = 1;
          inv.k0_rank = (m.n1 + 1) * (m.n2 + 1);
          inv.ambient_dim = (m.n1 + 1) * (m.n2 + 1) - 1;
        } else if constexpr (std::is_same_v<M, Rank1Surface>) {
          inv.canonical_coeff = m.i_x;
          inv.chi0 = m.chi0;
          inv.k0_rank = 3;
        } else if constexpr (std::is_same_v<M, EllipticCurve>) {
          inv.canonical_coeff = Rational(0);
          inv.chi0 = 0;
          inv.k0_rank = 2;
          inv.ambient_dim = m.d - 1;
        }
      },
      model.kind());
  return inv;
}

inline VarietyModel hyperplane_model(const VarietyModel& model) {
  if (model.is<ProjSpace>() && model.as<ProjSpace>().n >= 2) return VarietyModel::proj_space(model.as<ProjSpace>().n - 1);
  if (model.is<Quadric>() && model.as<Quadric>().n >= 3) return VarietyModel::quadric(model.as<Quadric>().n - 1);
  throw Error(ErrorKind::UnsupportedModel, "no hyperplane model for " + model.spec());
}

inline std::optional<SurfaceData> surface_data(const VarietyModel& model) {
  if (model.is<Rank1Surface>()) {
    const auto& s = model.as<Rank1Surface>();
    return SurfaceData{s.d, s.i_x, s.chi0};
  }
  if (model.is<ProjSpace>() && model.as<ProjSpace>().n == 2) return SurfaceData{1, Rational(-3), 1};
  return std::nullopt;
}

}  // namespace ulrich_kit
