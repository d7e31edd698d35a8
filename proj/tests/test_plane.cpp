#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <set>
#include <vector>

#include "dgz/field.hpp"
#include "dgz/plane.hpp"
#include "dgz/rng.hpp"
#include "doctest.h"

using dgz::Fel;
using dgz::FieldCtx;
using dgz::ProjLine;
using dgz::ProjPoint;

TEST_CASE("points are canonicalized to a first-nonzero pivot of 1") {
  auto F = FieldCtx::get(3, 1, 12);
  Fel g = F->generator();
  ProjPoint P = dgz::make_point(*F, g, F->mul(g, g), F->zero());
  CHECK(P.c[0] == F->one());
  CHECK(P.c[1] == g);
  CHECK(P.c[2] == F->zero());
  ProjPoint Q = dgz::make_point(*F, F->one(), g, F->zero());
  CHECK(P == Q);
  ProjPoint R = dgz::make_point(*F, F->zero(), F->zero(), g);
  CHECK(R.c[2] == F->one());
  CHECK_THROWS_AS(dgz::make_point(*F, F->zero(), F->zero(), F->zero()),
                  std::invalid_argument);
  CHECK_THROWS_AS(dgz::make_line(*F, F->zero(), F->zero(), F->zero()),
                  std::invalid_argument);
}

TEST_CASE("definition degree of a point is the lcm of coordinate degrees") {
  auto F = FieldCtx::get(3, 1, 12);
  ProjPoint P = dgz::make_point(*F, F->one(), F->one(), F->zero());
  CHECK(P.def_degree == 1);
  Fel s = F->subfield_generator(2);
  ProjPoint Q = dgz::make_point(*F, F->one(), s, F->zero());
  CHECK(Q.def_degree == 2);
  ProjPoint R = dgz::make_point(*F, s, F->one(), F->zero());
  CHECK(R.def_degree == 2);  // canonicalization divides through by s
  ProjPoint S = dgz::make_point(*F, F->one(), s, F->subfield_generator(3));
  CHECK(S.def_degree == 6);
}

TEST_CASE("point enumeration has the projective plane cardinality") {
  auto F2 = FieldCtx::get(2, 1, 12);
  auto F3 = FieldCtx::get(3, 1, 12);
  auto F4 = FieldCtx::get(2, 2, 12);
  CHECK(dgz::enumerate_points(*F2, 1).size() == 7);
  CHECK(dgz::enumerate_points(*F2, 2).size() == 21);
  CHECK(dgz::enumerate_points(*F3, 1).size() == 13);
  CHECK(dgz::enumerate_points(*F3, 2).size() == 91);
  CHECK(dgz::enumerate_points(*F4, 1).size() == 21);
  CHECK(dgz::enumerate_points(*F4, 2).size() == 273);

  auto pts = dgz::enumerate_points(*F3, 2);
  std::set<ProjPoint> seen(pts.begin(), pts.end());
  CHECK(seen.size() == pts.size());
  std::size_t rational = 0;
  for (const ProjPoint& P : pts) {
    CHECK(2 % P.def_degree == 0);
    if (P.def_degree == 1) ++rational;
  }
  CHECK(rational == 13);
}

TEST_CASE("incidence, joins and meets respect duality") {
  auto F = FieldCtx::get(3, 1, 12);
  dgz::SeededRng rng(11);
  for (int i = 0; i < 200; ++i) {
    ProjPoint A = dgz::random_point(*F, 2, rng);
    ProjPoint B = dgz::random_point(*F, 2, rng);
    if (A == B) continue;
    ProjLine l = dgz::line_through(*F, A, B);
    CHECK(dgz::incident(*F, A, l));
    CHECK(dgz::incident(*F, B, l));
    ProjPoint C = dgz::random_point(*F, 2, rng);
    if (C == A || C == B) continue;
    if (!dgz::incident(*F, C, l)) {
      ProjLine m = dgz::line_through(*F, A, C);
      CHECK(dgz::meet(*F, l, m) == A);
    }
  }
  ProjPoint A = dgz::make_point(*F, F->one(), F->one(), F->one());
  CHECK_THROWS_AS(dgz::line_through(*F, A, A), std::invalid_argument);
}

TEST_CASE("the pencil through a point over F_2 is the frozen set") {
  auto F = FieldCtx::get(2, 1, 12);
  ProjPoint P = dgz::make_point(*F, F->zero(), F->one(), F->zero());
  auto pencil = dgz::pencil_through(*F, P, 1);
  REQUIRE(pencil.size() == 3);
  std::set<std::array<std::uint32_t, 3>> duals;
  for (const ProjLine& l : pencil) {
    CHECK(dgz::incident(*F, P, l));
    duals.insert({l.u[0].v, l.u[1].v, l.u[2].v});
  }
  std::set<std::array<std::uint32_t, 3>> expect = {
      {1, 0, 0}, {0, 0, 1}, {1, 0, 1}};
  CHECK(duals == expect);
}

TEST_CASE("pencils have size q^k + 1 and cover exactly the lines through P") {
  auto F = FieldCtx::get(3, 1, 12);
  dgz::SeededRng rng(5);
  for (std::uint32_t k : {1u, 2u}) {
    ProjPoint P = dgz::random_point(*F, k, rng);
    auto pencil = dgz::pencil_through(*F, P, k);
    CHECK(pencil.size() == F->subfield_order(k) + 1);
    std::set<ProjLine> seen(pencil.begin(), pencil.end());
    CHECK(seen.size() == pencil.size());
    for (const ProjLine& l : pencil) CHECK(dgz::incident(*F, P, l));
  }
  // A degree-2 point has no F_3-pencil.
  dgz::SeededRng rng2(17);
  auto deg2 = dgz::sample_points_of_exact_degree(*F, 2, 1, rng2);
  CHECK_THROWS_AS(dgz::pencil_through(*F, deg2[0], 1), std::invalid_argument);
}

TEST_CASE("line basis and second point") {
  auto F = FieldCtx::get(3, 1, 12);
  dgz::SeededRng rng(23);
  for (int i = 0; i < 100; ++i) {
    ProjPoint A = dgz::random_point(*F, 2, rng);
    ProjPoint B = dgz::random_point(*F, 2, rng);
    if (A == B) continue;
    ProjLine l = dgz::line_through(*F, A, B);
    auto basis = dgz::line_basis(*F, l);
    CHECK(basis[0] != basis[1]);
    CHECK(dgz::incident(*F, basis[0], l));
    CHECK(dgz::incident(*F, basis[1], l));
    ProjPoint S = dgz::second_point_on(*F, l, A);
    CHECK(S != A);
    CHECK(dgz::incident(*F, S, l));
  }
}

TEST_CASE("random points are canonical, in range and deterministic") {
  auto F = FieldCtx::get(2, 2, 12);
  dgz::SeededRng rng_a(42);
  dgz::SeededRng rng_b(42);
  for (int i = 0; i < 200; ++i) {
    ProjPoint P = dgz::random_point(*F, 3, rng_a);
    ProjPoint Q = dgz::random_point(*F, 3, rng_b);
    CHECK(P == Q);
    CHECK(3 % P.def_degree == 0);
    int piv = P.c[0] != F->zero() ? 0 : (P.c[1] != F->zero() ? 1 : 2);
    CHECK(P.c[piv] == F->one());
  }
}

TEST_CASE("exact-degree sampling returns distinct points of that degree") {
  auto F = FieldCtx::get(3, 1, 12);
  dgz::SeededRng rng(42);
  auto pts = dgz::sample_points_of_exact_degree(*F, 3, 40, rng);
  REQUIRE(pts.size() == 40);
  std::set<ProjPoint> seen(pts.begin(), pts.end());
  CHECK(seen.size() == 40);
  for (const ProjPoint& P : pts) CHECK(P.def_degree == 3);
}
