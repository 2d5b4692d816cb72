#include <doctest.h>

#include <cmath>

#include "wcalc/errors.hpp"
#include "wcalc/witness.hpp"

using namespace wcalc;

TEST_CASE("theta derivative bound dominates N_k") {
  for (const WeightSequence& N : {WeightSequence::gevrey(1.0), WeightSequence::gevrey(2.0)})
    for (std::size_t k = 0; k <= 50; ++k) CHECK(theta_derivative_log_bound(N, k, k + 64) >= N.log_term(k));
  CHECK_THROWS_AS(theta_derivative_log_bound(WeightSequence::gevrey(1.0), 5, 10), InvalidParameter);
}

TEST_CASE("theta rejects non log-convex sequences") {
  const WeightSequence bad = WeightSequence::table_log({0, 0, 3, 3.5, 7, 12, 18, 25, 33, 42, 52, 63, 75, 88, 102, 117,
                                                        133, 150, 168, 187, 207, 228, 250, 273, 297, 322});
  CHECK_THROWS_AS(theta_eval(bad, 0.0, 20), PreconditionFailed);
}

TEST_CASE("theta at zero is a positive real sum") {
  const auto z = theta_eval(WeightSequence::gevrey(1.0), 0.0, 40);
  CHECK(z.real() > 0.0);
  CHECK(z.imag() == doctest::Approx(0.0));
}

TEST_CASE("bounds from CSV") {
  const DerivBounds b = DerivBounds::from_csv("j,log_bound\n1,0.5\n0,0\n2,1.5\n");
  REQUIRE(b.bounds.size() == 3);
  CHECK(b.bounds[1] == 0.5);
  CHECK_THROWS_AS(DerivBounds::from_csv("0,0\n2,1\n"), InvalidParameter);
  CHECK_THROWS_AS(DerivBounds::from_csv("0,0\n0,1\n"), InvalidParameter);
  const DerivBounds j = DerivBounds::from_json(b.to_json());
  CHECK(j.bounds == b.bounds);
}

TEST_CASE("seminorm is a sup over j") {
  const DerivBounds f = DerivBounds::synthetic({0.0, 1.0, 3.0}, "f");
  const WeightSequence M = WeightSequence::gevrey(1.0);
  const double s = seminorm(f, M, ExponentSequence::linear(), 1.0);
  CHECK(s == doctest::Approx(3.0 - std::log(2.0)));
  CHECK_THROWS_AS(seminorm(f, M, ExponentSequence::linear(), 0.0), InvalidParameter);
}

TEST_CASE("membership of factorial bounds") {
  std::vector<double> lf(257);
  for (std::size_t j = 0; j <= 256; ++j) lf[j] = std::lgamma(j + 1.0);
  const MembershipReport r = classify_membership(DerivBounds::synthetic(lf, "fact"), WeightMatrix::ptt(1.0, 2.0),
                                                 ExponentSequence::linear(), {0.5, 1.0, 2.0}, {0.5, 1.0, 2.0});
  CHECK(r.roumieu.is_holds());
  CHECK(r.beurling.is_holds());
  CHECK(r.cells.size() == 9);
}
