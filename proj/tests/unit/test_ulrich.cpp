#include <gtest/gtest.h>

#include <random>

#include "ulrich_kit/generators.hpp"
#include "ulrich_kit/ulrich.hpp"

using namespace ulrich_kit;

namespace {

const VarietyModel P2 = VarietyModel::proj_space(2);
const VarietyModel Q2 = VarietyModel::quadric(2);
const VarietyModel Q3 = VarietyModel::quadric(3);
const VarietyModel P1xP1 = VarietyModel::product(1, 1);
const VarietyModel X = VarietyModel::surface(4, Rational(0), 2);

std::optional<Witness> first_witness(const UlrichVerdict& v) {
  for (const auto& c : v.criteria)
    if (c.witness) return c.witness;
  return std::nullopt;
}

}  // namespace

TEST(Initialized, FrozenValues) {
  EXPECT_TRUE(is_initialized(line(0), P2, 9).initialized);
  EXPECT_TRUE(is_initialized(line(0), P2, 9).global);
  const auto neg = is_initialized(line(-1), P2, 9);
  EXPECT_FALSE(neg.initialized);
  EXPECT_EQ(*neg.witness, (Witness{0, 0, 0}));
  EXPECT_TRUE(is_initialized(Spinor{}, Q3, 11).initialized);
  const auto pos = is_initialized(line(2), P2, 9);
  EXPECT_EQ(*pos.witness, (Witness{0, -1, 3}));
}

TEST(UlrichSheaf, StructureSheafOnProjectiveSpaces) {
  for (int n = 1; n <= 5; ++n) {
    const VarietyModel p = VarietyModel::proj_space(n);
    const UlrichVerdict v = is_ulrich_sheaf(line(0), p);
    EXPECT_TRUE(v.passed) << n;
    EXPECT_EQ(sheaf_column(line(0), p, 0)[0], 1);
  }
}

TEST(UlrichSheaf, Rulings) {
  for (const SheafDescriptor& d : {line(1, 0), line(0, 1)}) {
    EXPECT_TRUE(is_ulrich_sheaf(d, P1xP1).passed);
    EXPECT_EQ(sheaf_column(d, P1xP1, 0)[0], 2);
  }
  EXPECT_TRUE(is_ulrich_sheaf(Spinor{SpinorSign::plus, 0}, Q2).passed);
  EXPECT_TRUE(is_ulrich_sheaf(Spinor{SpinorSign::minus, 0}, Q2).passed);
}

TEST(UlrichSheaf, TwistFailsWithWitness) {
  const UlrichVerdict v = is_ulrich_sheaf(line(1), P2);
  EXPECT_FALSE(v.passed);
  EXPECT_EQ(v.criteria.front().name, "twisted-vanishing");
  EXPECT_EQ(*v.criteria.front().witness, (Witness{0, -1, 1}));
}

TEST(UlrichSheaf, OnlyTrivialTwistOnProjectiveSpace) {
  for (int n = 1; n <= 5; ++n)
    for (int k = -(n + 2); k <= n + 2; ++k) EXPECT_EQ(is_ulrich_sheaf(line(k), VarietyModel::proj_space(n)).passed, k == 0) << n << " " << k;
}

TEST(UlrichSheaf, Spinor) {
  const UlrichVerdict v = is_ulrich_sheaf(Spinor{}, Q3);
  EXPECT_TRUE(v.passed);
  EXPECT_EQ(sheaf_column(Spinor{}, Q3, 0)[0], Q3.deg() * 2);
  EXPECT_FALSE(is_ulrich_sheaf(Spinor{SpinorSign::none, 1}, Q3).passed);
}

TEST(UlrichSheaf, PassedIffNoWitness) {
  for (int k = -3; k <= 3; ++k)
    for (const SheafDescriptor& d : {line(k), line(k, 1 - k)}) {
      const VarietyModel& m = d.as<LineBundle>().twists.size() == 2 ? P1xP1 : P2;
      const UlrichVerdict v = is_ulrich_sheaf(d, m);
      EXPECT_EQ(v.passed, !first_witness(v).has_value());
    }
}

TEST(UlrichSheaf, AbstractSurfaceSheaf) {
  for (int r = 1; r <= 4; ++r) {
    const SheafDescriptor u = abstract_ulrich_sheaf(X, r);
    EXPECT_TRUE(is_ulrich_sheaf(u, X).passed);
    EXPECT_EQ(sheaf_column(u, X, 0)[0], 4 * r);
    EXPECT_TRUE(hrr_consistent(*u.as<AbstractSheaf>().table, class_of(u, X)));
  }
}

TEST(UlrichObject, ProjectiveSums) {
  const VarietyModel p3 = VarietyModel::proj_space(3);
  const FormalComplex e(p3, {{0, line(0)}, {2, line(0)}});
  for (Mode m : {Mode::direct, Mode::sheafwise, Mode::both}) EXPECT_TRUE(is_ulrich_object(e, m).passed);
}

TEST(UlrichObject, GluedYoneda) {
  const SheafDescriptor u = abstract_ulrich_sheaf(X, 1);
  const FormalComplex e = yoneda_build(u, u, 2, ExtWitness::asserted, X);
  const UlrichVerdict v = is_ulrich_object(e, Mode::both);
  EXPECT_TRUE(v.passed);
  EXPECT_EQ(v.criteria.front().note, "certificate ExactByVanishing");
}

TEST(UlrichObject, BadDegreeIsReported) {
  const FormalComplex e(P2, {{0, line(0)}, {1, line(1)}});
  const UlrichVerdict v = is_ulrich_object(e, Mode::sheafwise);
  EXPECT_FALSE(v.passed);
  bool found = false;
  for (const auto& c : v.criteria)
    if (c.witness) {
      EXPECT_EQ(c.complex_degree, 1);
      found = true;
    }
  EXPECT_TRUE(found);
  EXPECT_FALSE(is_ulrich_object(e, Mode::both).passed);
}

TEST(UlrichObject, ModeAgreementOnRandomComplexes) {
  std::mt19937 rng(5);
  const std::vector<VarietyModel> models = {P2, Q2, Q3, P1xP1, VarietyModel::elliptic(3)};
  std::uniform_int_distribution<int> deg(-2, 2), tw(-2, 2), count(1, 3), sign(0, 1);
  for (int n = 0; n < 200; ++n) {
    const VarietyModel& m = models[static_cast<std::size_t>(n) % models.size()];
    std::map<int, SheafDescriptor> sheaves;
    for (int i = count(rng); i > 0; --i) {
      SheafDescriptor s = line(tw(rng));
      if (m.is<Quadric>() && m.as<Quadric>().n == 3 && sign(rng)) s = Spinor{SpinorSign::none, tw(rng)};
      if (m.is<Quadric>() && m.as<Quadric>().n == 2 && sign(rng)) s = Spinor{sign(rng) ? SpinorSign::plus : SpinorSign::minus, tw(rng)};
      if (m.is<ProductProj>()) s = line(tw(rng), tw(rng));
      if (m.is<EllipticCurve>()) s = SemistableEC{1, 3 + tw(rng), sign(rng) == 1};
      sheaves.emplace(deg(rng), s);
    }
    const FormalComplex e(m, sheaves);
    EXPECT_NO_THROW(is_ulrich_object(e, Mode::both)) << m.spec();
  }
}

TEST(Decompose, Projective) {
  const VarietyModel p6 = VarietyModel::proj_space(6);
  EXPECT_EQ(pn_decompose(FormalComplex::single(P2, 3 * line(0))), (std::map<int, std::int64_t>{{0, 3}}));
  const FormalComplex e(p6, {{0, line(0)}, {5, 2 * line(0)}});
  const auto m = pn_decompose(e);
  EXPECT_EQ(m, (std::map<int, std::int64_t>{{0, 1}, {5, 2}}));
  EXPECT_EQ(hyper_table(pn_reconstruct(p6, m)).table, hyper_table(e).table);
}

TEST(Decompose, ProjectiveRejectsNonUlrich) {
  try {
    pn_decompose(FormalComplex::single(P2, line(1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUlrich);
  }
}

TEST(Decompose, QuadricThreefold) {
  const auto d = quadric_decompose(FormalComplex::single(Q3, Spinor{}));
  EXPECT_EQ(d.spinor, (std::map<int, std::int64_t>{{0, 1}}));
  const FormalComplex e(Q3, {{0, Spinor{}}, {-2, 3 * SheafDescriptor(Spinor{})}});
  EXPECT_EQ(hyper_table(quadric_reconstruct(Q3, quadric_decompose(e))).table, hyper_table(e).table);
}

TEST(Decompose, QuadricSurfaceSigns) {
  const auto d = quadric_decompose(FormalComplex::single(P1xP1, line(1, 0) + line(0, 1)));
  EXPECT_EQ(d.plus, (std::map<int, std::int64_t>{{0, 1}}));
  EXPECT_EQ(d.minus, (std::map<int, std::int64_t>{{0, 1}}));
  const auto shifted = quadric_decompose(FormalComplex::single(P1xP1, line(1, 0), 1));
  EXPECT_EQ(shifted.plus, (std::map<int, std::int64_t>{{1, 1}}));
  EXPECT_TRUE(shifted.minus.empty());
  const FormalComplex e(Q2, {{0, Spinor{SpinorSign::minus, 0}}, {2, 2 * SheafDescriptor(Spinor{SpinorSign::plus, 0})}});
  EXPECT_EQ(hyper_table(quadric_reconstruct(Q2, quadric_decompose(e))).table, hyper_table(e).table);
}

TEST(ExtDimension, FrozenValues) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(ext_dimension(line(0), line(0), 0, VarietyModel::proj_space(n)), 1);
  EXPECT_EQ(ext_dimension(line(0, 1), line(1, 0), 2, P1xP1), 0);
  const VarietyModel e3 = VarietyModel::elliptic(3);
  EXPECT_EQ(ext_dimension(line(1), SemistableEC{1, 0, false}, 1, e3), 3);
  EXPECT_EQ(ext_dimension(line(0, 1), line(1, 0), 1, P1xP1), 0);
  EXPECT_EQ(ext_dimension(line(1, 0), line(0, 1), 1, P1xP1), 0);
  EXPECT_EQ(ext_dimension(line(2, 0), line(0, 0), 1, P1xP1), 1);
}

TEST(ExtDimension, SerreDualityHoldsOnLineBundles) {
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int k = 0; k <= 3; ++k) EXPECT_NO_THROW(ext_dimension(line(a), line(b), k, VarietyModel::proj_space(3)));
}

TEST(ExtDimension, NoDualRule) {
  try {
    ext_dimension(AbstractSheaf{1, std::nullopt, std::nullopt, "A"}, line(0), 0, P2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoDualRule);
  }
}

TEST(Yoneda, ComputedZeroExtOnProduct) {
  try {
    yoneda_build(line(0, 1), line(1, 0), 2, ExtWitness::computed, P1xP1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroExt);
  }
}

TEST(Yoneda, AssertedOnSurface) {
  const SheafDescriptor f = abstract_ulrich_sheaf(X, 1), g = abstract_ulrich_sheaf(X, 2);
  const FormalComplex e = yoneda_build(f, g, 2, ExtWitness::asserted, X);
  EXPECT_EQ(e.sheaves().at(0), f);
  EXPECT_EQ(e.sheaves().at(-1), g);
  EXPECT_TRUE(is_ulrich_object(e, Mode::sheafwise).passed);
  EXPECT_TRUE(is_ulrich_object(e, Mode::direct).passed);
  EXPECT_EQ(class_of(e).r(), 1 - 2);
}

TEST(Yoneda, Guards) {
  const SheafDescriptor u = abstract_ulrich_sheaf(X, 1);
  const auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Parse;
  };
  EXPECT_EQ(kind_of([&] { yoneda_build(u, u, 1, ExtWitness::asserted, X); }), ErrorKind::DegenerateExtension);
  EXPECT_EQ(kind_of([&] { yoneda_build(u, u, 3, ExtWitness::asserted, X); }), ErrorKind::ZeroExt);
  EXPECT_EQ(kind_of([&] { yoneda_build(line(1), line(0), 2, ExtWitness::asserted, P2); }), ErrorKind::NotUlrichInput);
}
