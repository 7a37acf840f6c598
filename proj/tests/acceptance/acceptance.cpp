// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ulrich_kit.hpp"

using namespace ulrich_kit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// All multiplicity maps on degrees [lo, hi] with total multiplicity in [1, max_total].
std::vector<std::map<int, std::int64_t>> multiplicity_maps(int lo, int hi, int max_total) {
  std::vector<std::map<int, std::int64_t>> out;
  std::function<void(int, int, std::map<int, std::int64_t>)> rec = [&](int deg, int left, std::map<int, std::int64_t> cur) {
    if (deg > hi) {
      if (!cur.empty()) out.push_back(cur);
      return;
    }
    for (int m = 0; m <= left; ++m) {
      auto next = cur;
      if (m) next[deg] = m;
      rec(deg + 1, left - m, next);
    }
  };
  rec(lo, max_total, {});
  return out;
}

FormalComplex trivial_sum(const VarietyModel& model, const std::map<int, std::int64_t>& mult, const SheafDescriptor& unit) {
  std::map<int, SheafDescriptor> sheaves;
  for (const auto& [d, m] : mult) sheaves.emplace(d, static_cast<int>(m) * unit);
  return FormalComplex(model, sheaves);
}

Outcome chern_polynomial() {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> r(1, 6), d(1, 10), i(-4, 4), chi(-3, 3);
  int bad = 0;
  for (int n = 0; n < 100; ++n) {
    const int rr = r(rng), dd = d(rng), cc = chi(rng);
    const Rational ii(i(rng));
    const auto [e1, e2] = oracle::ulrich_class(rr, dd, ii, cc);
    const NumClass got = ulrich_chern_solve(VarietyModel::surface(dd, ii, cc), rr).cls;
    if (got.r() != rr || got.e1() != e1 || got.e2() != e2) ++bad;
  }
  return {bad == 0, std::to_string(100 - bad) + "/100 exact matches"};
}

Outcome central_charge_closed_form() {
  std::mt19937 rng(102);
  std::uniform_int_distribution<int> r(1, 6), d(1, 10), i(-4, 4), chi(-3, 3);
  int re_bad = 0, im_bad = 0;
  std::string first;
  for (int n = 0; n < 200; ++n) {
    const int rr = r(rng), dd = d(rng), cc = chi(rng);
    const Rational ii(i(rng));
    const Rational s = oracle::random_rational(rng, 12, 4);
    const Rational t = Rational(1 + std::abs(static_cast<int>(rng() % 12)), 1 + static_cast<int>(rng() % 4));
    const VarietyModel x = VarietyModel::surface(dd, ii, cc);
    const ChargeValue z = central_charge(ulrich_chern_solve(x, rr).cls, s, t);
    const ChargeValue cf = ulrich_charge_closed_form(rr, s, t, x);
    if (z.re != cf.re) ++re_bad;
    if (z.im != cf.im) ++im_bad;
    if (!(z == cf) && first.empty()) {
      std::ostringstream os;
      os << "; first mismatch r=" << rr << " " << x.spec() << " s=" << to_string(s) << " t=" << to_string(t) << ": Z=" << to_string(z.re)
         << (z.im >= 0 ? "+" : "") << to_string(z.im) << "i, closed form=" << to_string(cf.re) << (cf.im >= 0 ? "+" : "") << to_string(cf.im) << "i";
      first = os.str();
    }
  }
  return {re_bad == 0 && im_bad == 0,
          "re mismatches " + std::to_string(re_bad) + "/200, im mismatches " + std::to_string(im_bad) + "/200" + first};
}

Outcome projective_examples() {
  int checked = 0;
  for (int n = 1; n <= 5; ++n) {
    const VarietyModel p = VarietyModel::proj_space(n);
    for (const auto& mult : multiplicity_maps(-2, 2, 3)) {
      const FormalComplex e = trivial_sum(p, mult, line(0));
      if (!is_ulrich_object(e, Mode::direct).passed || !is_ulrich_object(e, Mode::sheafwise).passed)
        return {false, "sum of shifts of O rejected on " + p.spec()};
      ++checked;
    }
    for (int k = -(n + 2); k <= n + 2; ++k) {
      if (k == 0) continue;
      const auto e = FormalComplex::single(p, line(k));
      for (Mode m : {Mode::direct, Mode::sheafwise}) {
        const UlrichVerdict v = is_ulrich_object(e, m);
        bool witnessed = false;
        for (const auto& c : v.criteria) witnessed = witnessed || c.witness.has_value();
        if (v.passed || !witnessed) return {false, "O(" + std::to_string(k) + ") on " + p.spec() + " not rejected with witness"};
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " objects"};
}

Outcome quadric_product_examples() {
  const VarietyModel pp = VarietyModel::product(1, 1);
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      const bool expected = (a == 1 && b == 0) || (a == 0 && b == 1);
      if (is_ulrich_sheaf(line(a, b), pp).passed != expected)
        return {false, "O(" + std::to_string(a) + "," + std::to_string(b) + ") verdict wrong"};
      if (is_ulrich_object(FormalComplex::single(pp, line(a, b)), Mode::both).passed != expected)
        return {false, "object verdict wrong at O(" + std::to_string(a) + "," + std::to_string(b) + ")"};
    }
  const VarietyModel q3 = VarietyModel::quadric(3);
  const SheafDescriptor s = Spinor{};
  const auto h0 = sheaf_column(s, q3, 0)[0];
  if (!is_ulrich_sheaf(s, q3).passed) return {false, "spinor on Q3 rejected"};
  if (h0 != 4 || h0 != q3.deg() * rank(s, q3)) return {false, "h0(S) = " + std::to_string(h0)};
  for (int k = -6; k <= 6; ++k)
    if (Rational(sheaf_column(s, q3, k)[0]) != (k >= 0 ? oracle::spinor_q3_hilbert(k) : Rational(0))) return {false, "spinor sections differ from Hilbert polynomial"};
  return {true, "49 bidegrees; Q3 spinor h0 = 4 = deg * rk"};
}

/// Kunneth oracle: h^k(O(a,b)(t)) on P^1 x P^1 from two projective-line columns.
std::vector<std::int64_t> kunneth_oracle(int a, int b, int t) {
  const auto x = oracle::projective(1, a + t), y = oracle::projective(1, b + t);
  std::vector<std::int64_t> out(3, 0);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) out[static_cast<std::size_t>(i + j)] += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
  return out;
}

Outcome kunneth_product() {
  const VarietyModel p1 = VarietyModel::proj_space(1);
  const VarietyModel pp = VarietyModel::product(1, 1);
  const auto maps = multiplicity_maps(-1, 1, 3);
  int checked = 0;
  for (const auto& me : maps)
    for (const auto& mf : maps) {
      std::int64_t size = 0;
      for (const auto& [d, m] : me) size += m;
      for (const auto& [d, m] : mf) size += m;
      if (size > 4) continue;
      for (ProductSide side : {ProductSide::TwistSecond, ProductSide::TwistFirst}) {
        const FormalComplex prod = external_product(trivial_sum(p1, me, line(0)), trivial_sum(p1, mf, line(0)), side);
        const SheafDescriptor spinor_line = side == ProductSide::TwistSecond ? line(0, 1) : line(1, 0);
        // Expected: sum over (p, q) of O(spinor)[-(p+q)] with multiplicity m_p n_q.
        std::map<int, std::int64_t> expected;
        for (const auto& [p, m] : me)
          for (const auto& [q, n] : mf) expected[p + q] += m * n;
        if (!(hyper_table(prod).table == hyper_table(trivial_sum(pp, expected, spinor_line)).table)) return {false, "table differs from spinor-line sum"};
        const auto& lb = spinor_line.as<LineBundle>().twists;
        const Window w = default_window(2);
        const CohomologyTable got = hyper_table(prod, w).table;
        for (int t = w.lo; t <= w.hi; ++t) {
          for (int total = -4; total <= 6; ++total) {
            std::int64_t want = 0;
            for (const auto& [deg, m] : expected) {
              const int i = total - deg;
              if (i >= 0 && i <= 2) want += m * kunneth_oracle(lb[0], lb[1], t)[static_cast<std::size_t>(i)];
            }
            if (got.at(total, t) != want) return {false, "Kunneth oracle mismatch"};
          }
        }
        if (!is_ulrich_object(prod, Mode::both).passed) return {false, "product not Ulrich"};
        const auto dec = quadric_decompose(prod);
        const auto& own = side == ProductSide::TwistSecond ? dec.minus : dec.plus;
        const auto& other = side == ProductSide::TwistSecond ? dec.plus : dec.minus;
        std::map<int, std::int64_t> own_nz, other_nz;
        for (const auto& [i, m] : own)
          if (m) own_nz[i] = m;
        for (const auto& [i, m] : other)
          if (m) other_nz[i] = m;
        if (own_nz != expected || !other_nz.empty()) return {false, "decomposition is not the expected spinor-line sum"};
        ++checked;
      }
    }
  return {true, std::to_string(checked) + " products"};
}

std::vector<VarietyModel> agreement_models() {
  return {VarietyModel::proj_space(1), VarietyModel::proj_space(2), VarietyModel::proj_space(3), VarietyModel::quadric(2),
          VarietyModel::quadric(3),    VarietyModel::product(1, 1), VarietyModel::product(1, 2), VarietyModel::elliptic(3),
          VarietyModel::elliptic(5),   VarietyModel::surface(4, Rational(0), 2)};
}

SheafDescriptor random_sheaf(const VarietyModel& m, std::mt19937& rng) {
  std::uniform_int_distribution<int> tw(-2, 2), coin(0, 1), r(1, 2);
  if (m.is<ProductProj>()) return line(tw(rng), tw(rng));
  if (m.is<Quadric>() && m.as<Quadric>().n == 3 && coin(rng)) return Spinor{SpinorSign::none, tw(rng)};
  if (m.is<Quadric>() && m.as<Quadric>().n == 2 && coin(rng)) return Spinor{coin(rng) ? SpinorSign::plus : SpinorSign::minus, tw(rng)};
  if (m.is<EllipticCurve>()) return SemistableEC{r(rng), m.deg() * r(rng) + tw(rng), coin(rng) == 1};
  if (surface_data(m)) return abstract_ulrich_sheaf(m, r(rng));
  return line(tw(rng));
}

Outcome mode_agreement() {
  std::mt19937 rng(106);
  std::uniform_int_distribution<int> deg(-2, 2), count(1, 3);
  const auto models = agreement_models();
  int disagreements = 0, total = 0, passed = 0;
  for (int n = 0; n < 600; ++n) {
    const VarietyModel& m = models[static_cast<std::size_t>(n) % models.size()];
    std::map<int, SheafDescriptor> sheaves;
    for (int i = count(rng); i > 0; --i) sheaves.emplace(deg(rng), random_sheaf(m, rng));
    const FormalComplex e(m, sheaves);
    const bool d = is_ulrich_object(e, Mode::direct).passed;
    const bool s = is_ulrich_object(e, Mode::sheafwise).passed;
    disagreements += d != s;
    passed += d;
    ++total;
  }
  return {disagreements == 0 && total >= 500,
          std::to_string(total) + " complexes, " + std::to_string(passed) + " Ulrich, " + std::to_string(disagreements) + " disagreements"};
}

Outcome two_out_of_three() {
  std::mt19937 rng(107);
  std::uniform_int_distribution<int> deg(-1, 1), role(0, 2);
  const auto models = agreement_models();
  int certified = 0;
  for (int n = 0; n < 100; ++n) {
    const VarietyModel& m = models[static_cast<std::size_t>(n) % models.size()];
    const FormalComplex a = FormalComplex::single(m, random_sheaf(m, rng), deg(rng));
    const FormalComplex b = FormalComplex::single(m, random_sheaf(m, rng), deg(rng));
    const FormalComplex sum = direct_sum(a, b);  // a -> a ⊕ b -> b
    const Window w = default_window(m.dim());
    const CohomologyTable te = hyper_table(a, w).table, tf = hyper_table(sum, w).table, tg = hyper_table(b, w).table;
    TriangleInput in{m.dim(), te, tf, tg, class_of(a), class_of(sum), class_of(b)};
    const int missing = role(rng);
    const CohomologyTable* third = nullptr;
    if (missing == 0) in.e.reset(), third = &te;
    if (missing == 1) in.f.reset(), third = &tf;
    if (missing == 2) in.g.reset(), third = &tg;
    const TriangleVerdict v = triangle_2of3(in);
    const bool direct = !ulrich_vanishing_witness(*third, m.dim()).has_value();
    if (!v.chi_additive || !*v.chi_additive) return {false, "chi additivity failed on " + m.spec()};
    if (v.status == TriangleStatus::CertifiedUlrich && !direct) return {false, "certified Ulrich but direct check fails"};
    if (v.status == TriangleStatus::NotUlrich) {
      if (direct) return {false, "certified non-Ulrich but direct check passes"};
      if (third->at(v.witness->i, v.witness->t) != v.witness->h) return {false, "witness disagrees with direct table"};
    }
    certified += v.status != TriangleStatus::Undetermined;
  }
  return {true, "100 triangles, " + std::to_string(certified) + " certified, all chi-additive"};
}

Outcome elliptic_existence() {
  for (int d = 3; d <= 10; ++d) {
    const VarietyModel e = VarietyModel::elliptic(d);
    if (!elliptic_witness(e).verdict.passed) return {false, "witness fails at d=" + std::to_string(d)};
    const GateResult g = generator_gate(std::vector<SheafDescriptor>{line(1)}, e);
    if (g.verdict != GateVerdict::DeficientRank || g.rank != 1 || g.needed != 2) return {false, "gate wrong at d=" + std::to_string(d)};
  }
  return {true, "d = 3..10"};
}

Outcome pushforward_decomposition() {
  int fixtures = 0;
  for (int n = 1; n <= 5; ++n) {
    const VarietyModel p = VarietyModel::proj_space(n);
    for (const auto& mult : multiplicity_maps(-2, 2, 3)) {
      const FormalComplex e = trivial_sum(p, mult, line(0));
      const auto m = pn_decompose(e);
      if (m != mult) return {false, "multiplicities differ on " + p.spec()};
      if (!(hyper_table(pn_reconstruct(p, m)).table == hyper_table(e).table)) return {false, "reconstruction differs on " + p.spec()};
      ++fixtures;
    }
  }
  for (const auto& model : {VarietyModel::quadric(2), VarietyModel::product(1, 1)}) {
    const auto rep = pushforward_finite(FormalComplex::single(model, line(0, 1)), VarietyModel::proj_space(2));
    if (!rep.trivialized || rep.multiplicities != std::map<int, std::int64_t>{{0, 2}} || !rep.multiplicities_exact)
      return {false, "pushforward of O(0,1) from " + model.spec()};
  }
  return {true, std::to_string(fixtures) + " projective fixtures; pi_* O(0,1) = O^2"};
}

Outcome not_in_heart() {
  int checked = 0;
  const std::vector<VarietyModel> surfaces = {VarietyModel::surface(4, Rational(0), 2), VarietyModel::surface(2, Rational(-1), 1),
                                              VarietyModel::surface(9, Rational(-2), 1), VarietyModel::surface(5, Rational(1), 3)};
  for (const auto& x : surfaces)
    for (int r1 = 1; r1 <= 3; ++r1)
      for (int r2 = 1; r2 <= 3; ++r2) {
        const FormalComplex e = yoneda_build(abstract_ulrich_sheaf(x, r1), abstract_ulrich_sheaf(x, r2), 2, ExtWitness::asserted, x);
        for (auto c : {SlopeConvention::paper_literal, SlopeConvention::normalized})
          for (int s4 = -16; s4 <= 16; ++s4) {
            const HeartResult h = heart_gate(e, Rational(s4, 4), c);
            if (h.verdict != HeartVerdict::NotInHeart || h.reason != HeartReason::equal_slope) return {false, "heart gate passed a Yoneda object"};
            ++checked;
          }
      }
  return {true, std::to_string(checked) + " (object, s, convention) cases"};
}

Outcome oracle_hygiene() {
  int tables = 0;
  auto check = [&](const SheafDescriptor& d, const VarietyModel& m) {
    const CohomologyTable t = sheaf_table(d, m);
    ++tables;
    return hrr_consistent(t, class_of(d, m));
  };
  for (int n = 1; n <= 5; ++n)
    for (int k = -8; k <= 8; ++k)
      if (!check(line(k), VarietyModel::proj_space(n))) return {false, "HRR on P^" + std::to_string(n)};
  for (int n = 2; n <= 6; ++n)
    for (int k = -6; k <= 6; ++k)
      if (!check(line(k), VarietyModel::quadric(n))) return {false, "HRR on Q^" + std::to_string(n)};
  for (int k = -6; k <= 6; ++k) {
    if (!check(Spinor{SpinorSign::none, k}, VarietyModel::quadric(3))) return {false, "HRR for Q3 spinor"};
    if (!check(Spinor{SpinorSign::plus, k}, VarietyModel::quadric(2)) || !check(Spinor{SpinorSign::minus, k}, VarietyModel::quadric(2)))
      return {false, "HRR for Q2 spinors"};
  }
  for (auto [n1, n2] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}})
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b)
        if (!check(line(a, b), VarietyModel::product(n1, n2))) return {false, "HRR on a product"};
  for (int d = 3; d <= 8; ++d)
    for (int r = 1; r <= 3; ++r)
      for (int deg = -6; deg <= 6; ++deg)
        for (std::optional<bool> flag : {std::optional<bool>{}, std::optional<bool>{true}, std::optional<bool>{false}}) {
          if (flag && deg % r != 0) continue;
          if (!flag && deg % (r * d) == 0) continue;  // a degree-zero twist needs the type
          if (!check(SemistableEC{r, deg, flag}, VarietyModel::elliptic(d))) return {false, "HRR on an elliptic curve"};
        }
  for (int n = 1; n <= 4; ++n) {
    const VarietyModel p = VarietyModel::proj_space(n);
    for (int k = -10; k <= 10; ++k) {
      const auto a = sheaf_column(line(k), p, 0), b = sheaf_column(line(-k - n - 1), p, 0);
      for (int i = 0; i <= n; ++i)
        if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(n - i)]) return {false, "Serre symmetry on P^" + std::to_string(n)};
    }
  }
  return {true, std::to_string(tables) + " oracle tables HRR-consistent; Serre symmetry n <= 4, |k| <= 10"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Ulrich Chern class closed form", chern_polynomial},
      {"central charge equals closed form", central_charge_closed_form},
      {"projective-space examples", projective_examples},
      {"quadric and product examples", quadric_product_examples},
      {"external products give spinor lines", kunneth_product},
      {"direct and sheafwise modes agree", mode_agreement},
      {"2-out-of-3 on split triangles", two_out_of_three},
      {"elliptic witness and K0 gate", elliptic_existence},
      {"pushforward and decomposition", pushforward_decomposition},
      {"Yoneda objects outside the heart", not_in_heart},
      {"oracle hygiene", oracle_hygiene},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s criterion %zu: %s (%s) [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
