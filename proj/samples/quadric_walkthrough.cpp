// Spinor bundles on Q^3 and their restriction to Q^2 = P^1 x P^1.
#include <iostream>

#include "ulrich_kit.hpp"

using namespace ulrich_kit;

int main() {
  const VarietyModel q3 = VarietyModel::quadric(3);
  const SheafDescriptor spinor = Spinor{};

  std::cout << "h^i(S(t)) on " << q3.spec() << ":\n" << to_json(sheaf_table(spinor, q3, Window{-6, 2})).dump(2) << "\n";

  const UlrichVerdict v = is_ulrich_sheaf(spinor, q3);
  std::cout << "S Ulrich: " << std::boolalpha << v.passed << "\n";

  const FormalComplex e(q3, {{0, spinor}, {-1, 2 * spinor}});
  const QuadricDecomposition d = quadric_decompose(e);
  for (const auto& [deg, m] : d.spinor) std::cout << "  S^" << m << " in degree " << deg << "\n";

  const RestrictionReport r = restrict_hyperplane(FormalComplex::single(q3, spinor));
  std::cout << "restriction to " << r.restricted.model().spec() << ": " << to_string(r.restricted.sheaves().at(0))
            << (r.restricted_witness ? " (not Ulrich)" : " (Ulrich twists vanish)") << "\n";

  const NumClass c = class_of(spinor, q3);
  std::cout << "ch(S) = " << c.to_string() << ", chi(S) = " << to_string(euler_char(c)) << "\n";
}
