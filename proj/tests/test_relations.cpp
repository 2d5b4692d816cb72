#include <doctest.h>

#include "wcalc/errors.hpp"
#include "wcalc/relations.hpp"

using namespace wcalc;

namespace {
Verdict rel(const WeightSequence& M, const WeightSequence& N, const char* r,
            std::optional<ExponentSequence> phi = std::nullopt) {
  return compare(M, N, RelationId::parse(r, phi), 512);
}
}  // namespace

TEST_CASE("Gevrey order") {
  const WeightSequence g1 = WeightSequence::gevrey(1.0), g2 = WeightSequence::gevrey(2.0);
  const WeightSequence gh = WeightSequence::gevrey(0.5);
  CHECK(rel(g1, g2, "preceq").is_holds());
  const Verdict back = rel(g2, g1, "preceq");
  REQUIRE(back.is_fails());
  CHECK(back.witness.has_value());
  CHECK(rel(g1, gh, "preceq").is_fails());
  CHECK(rel(g1, g2, "triangle").is_holds());
  CHECK(rel(g1, g1, "approx").is_holds());
  CHECK(rel(g1, g1, "triangle").is_fails());
  CHECK(rel(g1, g2, "pointwise_le").is_holds());
  CHECK(rel(g2, g1, "pointwise_le").is_fails());
  CHECK(rel(g1, g2, "quotient_le").is_holds());
}

TEST_CASE("constant multiples are equivalent") {
  const WeightSequence g = WeightSequence::gevrey(1.0);
  const WeightSequence s = WeightSequence::scaled(g, ExponentSequence::linear(), 5.0);
  CHECK(rel(g, s, "approx").is_holds());
  CHECK(rel(s, g, "preceq").is_holds());
  // with Phi = j^2 the scaling is no longer a geometric factor
  const WeightSequence q = WeightSequence::scaled(g, ExponentSequence::power(2.0), 2.0);
  CHECK(rel(q, g, "preceq").is_fails());
  CHECK(rel(q, g, "preceq_phi", ExponentSequence::power(2.0)).is_holds());
}

TEST_CASE("phi constancy over a scaled family") {
  const WeightSequence g = WeightSequence::gevrey(1.0);
  const ExponentSequence phi = ExponentSequence::power(2.0);
  std::vector<WeightSequence> fam;
  for (double c : {0.5, 1.0, 2.0}) fam.push_back(WeightSequence::scaled(g, phi, c));
  CHECK(compare_phi_constancy(fam, phi, 256).is_holds());
}

TEST_CASE("relation ids") {
  CHECK_THROWS_AS(RelationId::parse("preceq_phi"), InvalidParameter);
  CHECK_THROWS_AS(RelationId::parse("nope"), InvalidParameter);
  CHECK(RelationId::parse("approx").name() == "approx");
}
