#include <cmath>
#include <set>
#include <vector>

#include "ball_system.hpp"
#include "doctest.h"
#include "group.hpp"

using namespace frk;

namespace {

std::set<std::uint64_t> ball_at(const LPSystem& sys, std::size_t i, std::uint64_t center) {
  std::set<std::uint64_t> out;
  for (std::uint64_t x = 0; x < sys.group()->size(); ++x)
    if (sys.primal_family().contains(i, center, x)) out.insert(x);
  return out;
}

}  // namespace

TEST_CASE("breakpoints are divisors of the diameter") {
  const auto sys = LPSystem::build(Group::cyclic(12, 2));
  CHECK(sys.scales().primal == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(sys.dual_scale(0) == Rational(1, 12));
  CHECK(sys.dual_scale(5) == Rational(1));

  const auto fld = LPSystem::build(Group::finite_field(3, 2, {1, 0, 1}, 2));
  CHECK(fld.scales().primal == std::vector<std::int64_t>{1, 9});
}

TEST_CASE("ball membership on Z_6") {
  const auto sys = LPSystem::build(Group::cyclic(6, 1));
  CHECK(ball_at(sys, 0, 0) == std::set<std::uint64_t>{0});
  CHECK(ball_at(sys, 1, 0) == std::set<std::uint64_t>{0, 3});
  CHECK(ball_at(sys, 2, 0) == std::set<std::uint64_t>{0, 2, 3, 4});
  CHECK(ball_at(sys, 3, 0) == std::set<std::uint64_t>{0, 1, 2, 3, 4, 5});
  CHECK(ball_at(sys, 2, 1) == std::set<std::uint64_t>{1, 3, 4, 5});  // translate by 1

  CHECK(sys.ball_size(2) == 4);
  CHECK(sys.dual_ball_mass(2) == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("balls are subgroups exactly when the divisor lcm stays admitted") {
  const auto sys = LPSystem::build(Group::cyclic(12, 1));
  // Scales 1,2,3,4,6,12; lcm of admitted divisors: 1,2,6,12,12,12.
  CHECK(sys.ball_is_subgroup(0));
  CHECK(sys.ball_is_subgroup(1));
  CHECK_FALSE(sys.ball_is_subgroup(2));
  CHECK_FALSE(sys.ball_is_subgroup(3));
  CHECK_FALSE(sys.ball_is_subgroup(4));
  CHECK(sys.ball_is_subgroup(5));
  CHECK(sys.subgroup_index(1) == 2);

  // Prime powers: every ball is a subgroup.
  const auto nine = LPSystem::build(Group::cyclic(9, 2));
  for (std::size_t i = 0; i < nine.scale_count(); ++i) CHECK(nine.ball_is_subgroup(i));
}

TEST_CASE("entry scales and scale lookup") {
  const auto sys = LPSystem::build(Group::cyclic(12, 1));
  CHECK(sys.primal_entry_scale(6) == 2);
  CHECK(sys.primal_entry_scale(8) == 3);
  CHECK(sys.dual_entry_scale(6) == Rational(1, 6));
  CHECK(sys.primal_index_for(5.0) == 3);   // scale 4
  CHECK(sys.primal_index_for(12.0) == 5);
  CHECK(sys.primal_index_for(0.5) == -1);
}

TEST_CASE("structure constants are exactly one for fields and prime powers") {
  for (const auto& g : {Group::cyclic(9, 2), Group::cyclic(27, 1), Group::cyclic(125, 1),
                        Group::prime_field(7, 2), Group::finite_field(3, 2, {1, 0, 1}, 2)}) {
    const auto sys = LPSystem::build(g);
    CHECK(sys.constants().c1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sys.constants().c2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sys.constants().c3 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("structure constants of Z_6 show the composite defect") {
  const auto sys = LPSystem::build(Group::cyclic(6, 1));
  // |B_3| = 4 against rho = 3; the cutoff at rho = 3 has averaged mass 10/6.
  CHECK(sys.constants().c1 == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(sys.constants().c2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sys.constants().c3 == doctest::Approx(5.0 / 3.0).epsilon(1e-12));

  const LPConstants redo = compute_system_constants(sys);
  CHECK(redo.c1 == sys.constants().c1);
  CHECK(redo.c2 == sys.constants().c2);
  CHECK(redo.c3 == sys.constants().c3);
}

TEST_CASE("axioms hold on representative groups") {
  for (const auto& g : {Group::cyclic(6, 2), Group::cyclic(9, 1), Group::cyclic(30, 1),
                        Group::finite_field(3, 2, {1, 0, 1}, 1)}) {
    const auto sys = LPSystem::build(g);
    const Report rep = verify_axioms(sys);
    CHECK(rep.passed());
    for (const auto& r : rep.records()) {
      INFO(r.check << " " << r.scale << " " << r.params);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("a corrupted family fails the axiom checker") {
  const auto g = Group::cyclic(6, 1);
  const auto sys = LPSystem::build(g);

  // Smuggle center+1 into the smallest ball: breaks symmetry and nesting.
  class Skewed final : public BallFamily {
   public:
    explicit Skewed(const LPSystem& sys) : sys_(sys) {}
    std::size_t scale_count() const override { return sys_.scale_count(); }
    bool contains(std::size_t i, std::uint64_t c, std::uint64_t x) const override {
      if (i == 0 && x == sys_.group()->add(c, 1)) return true;
      return sys_.primal_family().contains(i, c, x);
    }

   private:
    const LPSystem& sys_;
  };

  Report rep("Z_6^1", 1, 0);
  verify_family_axioms(rep, *g, Skewed(sys), "primal", AxiomCheckOptions{});
  CHECK_FALSE(rep.passed());
  const ReportRecord* nesting = rep.find("axiom.nesting");
  REQUIRE(nesting != nullptr);
  CHECK_FALSE(nesting->pass);
  const ReportRecord* symmetry = rep.find("axiom.symmetry");
  REQUIRE(symmetry != nullptr);
  CHECK_FALSE(symmetry->pass);
}

TEST_CASE("stored constants satisfy their defining inequalities") {
  for (const auto& g :
       {Group::cyclic(6, 1), Group::cyclic(12, 2), Group::cyclic(9, 2), Group::prime_field(5, 2)}) {
    const auto sys = LPSystem::build(g);
    const Report rep = verify_conditions(sys);
    CHECK(rep.passed());
  }
}

TEST_CASE("dual ball sets coincide with primal ball sets at equal index") {
  const auto sys = LPSystem::build(Group::cyclic(12, 1));
  for (std::size_t i = 0; i < sys.scale_count(); ++i) {
    for (std::uint64_t x = 0; x < 12; ++x)
      CHECK(sys.primal_family().contains(i, 0, x) == sys.dual_family().contains(i, 0, x));
  }
}
