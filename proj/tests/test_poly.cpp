#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <utility>
#include <vector>

#include "dgz/field.hpp"
#include "dgz/plane.hpp"
#include "dgz/poly.hpp"
#include "dgz/rng.hpp"
#include "doctest.h"

using dgz::BinForm;
using dgz::Fel;
using dgz::FieldCtx;
using dgz::Mat3;
using dgz::Mono;
using dgz::TriPoly;
using dgz::UniPoly;

namespace {

Fel rand_fel(const FieldCtx& F, dgz::SeededRng& rng) {
  std::uint64_t r = rng.bounded(F.order());
  return r == 0 ? F.zero() : F.exp(r - 1);
}

TriPoly rand_poly(const FieldCtx& F, dgz::SeededRng& rng, int max_deg,
                  int terms) {
  TriPoly f = TriPoly::zero(F);
  for (int i = 0; i < terms; ++i) {
    Mono m{std::uint16_t(rng.bounded(max_deg + 1)),
           std::uint16_t(rng.bounded(max_deg + 1)),
           std::uint16_t(rng.bounded(max_deg + 1))};
    f.add_term(m, rand_fel(F, rng));
  }
  f.refresh_degree();
  return f;
}

TriPoly rand_form(const FieldCtx& F, dgz::SeededRng& rng, std::uint32_t d) {
  TriPoly f = TriPoly::zero(F);
  for (std::uint16_t a = 0; a <= d; ++a) {
    for (std::uint16_t b = 0; a + b <= d; ++b) {
      f.add_term(Mono{a, b, std::uint16_t(d - a - b)}, rand_fel(F, rng));
    }
  }
  f.refresh_degree();
  return f;
}

Mat3 rand_invertible(const FieldCtx& F, dgz::SeededRng& rng) {
  for (;;) {
    Mat3 M;
    for (auto& row : M)
      for (auto& e : row) e = rand_fel(F, rng);
    if (!F.is_zero(dgz::det3(F, M))) return M;
  }
}

UniPoly rand_monic(const FieldCtx& F, dgz::SeededRng& rng, int deg) {
  std::vector<Fel> c(deg + 1);
  for (int i = 0; i < deg; ++i) c[i] = rand_fel(F, rng);
  c[deg] = F.one();
  return UniPoly(F, std::move(c));
}

}  // namespace

TEST_CASE("grevlex term order matches the frozen degree-2 chain") {
  auto F = FieldCtx::get(3, 1, 12);
  TriPoly f = TriPoly::zero(*F);
  std::vector<Mono> chain = {{2, 0, 0}, {1, 1, 0}, {0, 2, 0},
                             {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  for (const Mono& m : chain) f.add_term(m, F->one());
  f.refresh_degree();
  std::size_t i = 0;
  for (const auto& [m, c] : f.terms()) {
    REQUIRE(i < chain.size());
    CHECK(m.a == chain[i].a);
    CHECK(m.b == chain[i].b);
    CHECK(m.c == chain[i].c);
    ++i;
  }
  CHECK(i == 6);
  CHECK(f.lead().first.a == 2);  // x^2 leads
}

TEST_CASE("ring arithmetic basics") {
  auto F = FieldCtx::get(2, 1, 12);
  TriPoly x = TriPoly::variable(*F, 0);
  TriPoly y = TriPoly::variable(*F, 1);
  TriPoly s = x + y;
  CHECK((s * s) == (x * x + y * y));  // freshman's dream in char 2
  CHECK((s - s).is_zero());
  CHECK(s.degree() == 1);
  CHECK((s * s).degree() == 2);
  CHECK((s * s).is_homogeneous());
  CHECK(TriPoly::zero(*F).degree() == -1);

  auto F3 = FieldCtx::get(3, 1, 12);
  TriPoly u = TriPoly::variable(*F3, 0) + TriPoly::variable(*F3, 1) +
              TriPoly::variable(*F3, 2);
  TriPoly cube = u * u * u;
  TriPoly expect = TriPoly::monomial(*F3, Mono{3, 0, 0}, F3->one()) +
                   TriPoly::monomial(*F3, Mono{0, 3, 0}, F3->one()) +
                   TriPoly::monomial(*F3, Mono{0, 0, 3}, F3->one());
  CHECK(cube == expect);  // cubing is the Frobenius in char 3
}

TEST_CASE("evaluation agrees with the term expansion") {
  auto F = FieldCtx::get(3, 1, 12);
  dgz::SeededRng rng(3);
  for (int round = 0; round < 200; ++round) {
    TriPoly f = rand_poly(*F, rng, 4, 6);
    Fel x = rand_fel(*F, rng), y = rand_fel(*F, rng), z = rand_fel(*F, rng);
    Fel direct = F->zero();
    for (const auto& [m, cf] : f.terms()) {
      Fel t = F->mul(cf, F->mul(F->pow(x, m.a),
                                F->mul(F->pow(y, m.b), F->pow(z, m.c))));
      direct = F->add(direct, t);
    }
    CHECK(f.evaluate(x, y, z) == direct);
  }
}

TEST_CASE("derivatives satisfy the Leibniz rule and kill p-th powers") {
  auto F = FieldCtx::get(3, 1, 12);
  TriPoly x = TriPoly::variable(*F, 0);
  CHECK((x * x * x).derivative(0).is_zero());
  TriPoly x2y = TriPoly::monomial(*F, Mono{2, 1, 0}, F->one());
  CHECK(x2y.derivative(0) ==
        TriPoly::monomial(*F, Mono{1, 1, 0}, Fel{2}));
  dgz::SeededRng rng(9);
  for (int round = 0; round < 100; ++round) {
    TriPoly f = rand_poly(*F, rng, 3, 4);
    TriPoly g = rand_poly(*F, rng, 3, 4);
    for (int i = 0; i < 3; ++i) {
      CHECK((f * g).derivative(i) ==
            f.derivative(i) * g + f * g.derivative(i));
    }
  }
}

TEST_CASE("exact trivariate division and its failure mode") {
  auto F = FieldCtx::get(3, 1, 12);
  TriPoly x = TriPoly::variable(*F, 0);
  TriPoly y = TriPoly::variable(*F, 1);
  TriPoly num = x * x - y * y;
  TriPoly den = x - y;
  CHECK(dgz::exact_divide(num, den) == x + y);
  TriPoly bad = x * x + y * TriPoly::variable(*F, 2);
  CHECK_THROWS_AS(dgz::exact_divide(bad, x), dgz::NonDivisibleError);

  dgz::SeededRng rng(19);
  for (int round = 0; round < 100; ++round) {
    TriPoly f = rand_poly(*F, rng, 3, 4);
    TriPoly g = rand_poly(*F, rng, 3, 4);
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(dgz::exact_divide(f * g, g) == f);
  }
}

TEST_CASE("linear substitution follows the row convention and composes") {
  auto F = FieldCtx::get(3, 1, 12);
  TriPoly x = TriPoly::variable(*F, 0);
  Mat3 swap = dgz::mat_identity(*F);
  std::swap(swap[0], swap[1]);
  CHECK(dgz::substitute_linear(x, swap) == TriPoly::variable(*F, 1));

  dgz::SeededRng rng(27);
  for (int round = 0; round < 40; ++round) {
    TriPoly f = rand_form(*F, rng, 3);
    Mat3 A = rand_invertible(*F, rng);
    Mat3 B = rand_invertible(*F, rng);
    TriPoly lhs = dgz::substitute_linear(f, dgz::mat_mul(*F, A, B));
    TriPoly rhs = dgz::substitute_linear(dgz::substitute_linear(f, A), B);
    CHECK(lhs == rhs);
    // Pointwise consistency: (f . A)(v) = f(Av).
    std::array<Fel, 3> v = {rand_fel(*F, rng), rand_fel(*F, rng),
                            rand_fel(*F, rng)};
    std::array<Fel, 3> Av = dgz::mat_vec(*F, A, v);
    CHECK(dgz::substitute_linear(f, A).evaluate(v[0], v[1], v[2]) ==
          f.evaluate(Av[0], Av[1], Av[2]));
  }
}

TEST_CASE("matrix inverse and determinant") {
  auto F = FieldCtx::get(2, 2, 12);
  dgz::SeededRng rng(31);
  Mat3 I = dgz::mat_identity(*F);
  for (int round = 0; round < 200; ++round) {
    Mat3 A = rand_invertible(*F, rng);
    Mat3 B = rand_invertible(*F, rng);
    CHECK(dgz::mat_mul(*F, A, dgz::mat_inverse(*F, A)) == I);
    CHECK(dgz::mat_mul(*F, dgz::mat_inverse(*F, A), A) == I);
    CHECK(dgz::det3(*F, dgz::mat_mul(*F, A, B)) ==
          F->mul(dgz::det3(*F, A), dgz::det3(*F, B)));
  }
  Mat3 sing{};  // the zero matrix
  CHECK_THROWS_AS(dgz::mat_inverse(*F, sing), dgz::Error);
}

TEST_CASE("line restriction of a quadric matches hand computation") {
  auto F = FieldCtx::get(2, 1, 12);
  // f = x^2 + xz restricted to the line through A = (0:0:1), B = (1:0:0)
  // parametrized as sA + tB = (t, 0, s) gives t^2 + ts.
  TriPoly f = TriPoly::monomial(*F, Mono{2, 0, 0}, F->one()) +
              TriPoly::monomial(*F, Mono{1, 0, 1}, F->one());
  dgz::ProjPoint A = dgz::make_point(*F, F->zero(), F->zero(), F->one());
  dgz::ProjPoint B = dgz::make_point(*F, F->one(), F->zero(), F->zero());
  BinForm g = dgz::restrict_to_line(f, A, B);
  REQUIRE(g.degree() == 2);
  CHECK(g.at(0) == F->zero());
  CHECK(g.at(1) == F->one());
  CHECK(g.at(2) == F->one());
  CHECK(g.val_t() == 1);

  // Restriction evaluates pointwise: g(s, t) = f(sA + tB).
  dgz::SeededRng rng(37);
  auto F3 = FieldCtx::get(3, 1, 12);
  for (int round = 0; round < 50; ++round) {
    TriPoly h = rand_form(*F3, rng, 4);
    if (h.is_zero()) continue;
    dgz::ProjPoint P = dgz::random_point(*F3, 2, rng);
    dgz::ProjPoint Q = dgz::random_point(*F3, 2, rng);
    if (P == Q) continue;
    BinForm r = dgz::restrict_to_line(h, P, Q);
    Fel s = rand_fel(*F3, rng), t = rand_fel(*F3, rng);
    Fel xx = F3->add(F3->mul(s, P.c[0]), F3->mul(t, Q.c[0]));
    Fel yy = F3->add(F3->mul(s, P.c[1]), F3->mul(t, Q.c[1]));
    Fel zz = F3->add(F3->mul(s, P.c[2]), F3->mul(t, Q.c[2]));
    Fel direct = F3->zero();
    for (std::uint32_t j = 0; j <= r.degree(); ++j) {
      direct = F3->add(direct,
                       F3->mul(r.at(j), F3->mul(F3->pow(s, r.degree() - j),
                                                F3->pow(t, j))));
    }
    CHECK(h.evaluate(xx, yy, zz) == direct);
  }
}

TEST_CASE("univariate division, gcd and p-th roots") {
  auto F = FieldCtx::get(3, 1, 12);
  dgz::SeededRng rng(41);
  for (int round = 0; round < 1000; ++round) {
    UniPoly a = rand_monic(*F, rng, 1 + int(rng.bounded(6)));
    UniPoly b = rand_monic(*F, rng, 1 + int(rng.bounded(4)));
    auto [qt, rm] = dgz::divmod(a, b);
    CHECK(a == qt * b + rm);
    CHECK(rm.degree() < b.degree());
    CHECK(dgz::exact_divide(a * b, b) == a);
  }

  // gcd(x^2 - 1, x^2 + x + 1) = x + 2 over F_3 (both share the root 1).
  UniPoly f(*F, {Fel{2}, Fel{0}, Fel{1}});
  UniPoly g(*F, {Fel{1}, Fel{1}, Fel{1}});
  UniPoly d = dgz::gcd(f, g);
  CHECK(d == UniPoly(*F, {Fel{2}, Fel{1}}));
  CHECK_THROWS_AS(dgz::gcd(UniPoly(*F), UniPoly(*F)), std::invalid_argument);

  auto F2 = FieldCtx::get(2, 1, 12);
  // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2.
  UniPoly h(*F2, {F2->one(), F2->zero(), F2->one(), F2->zero(), F2->one()});
  UniPoly r = dgz::pth_root(h);
  CHECK(r == UniPoly(*F2, {F2->one(), F2->one(), F2->one()}));
  CHECK_THROWS_AS(dgz::pth_root(UniPoly(*F2, {F2->one(), F2->one()})),
                  dgz::Error);
}

TEST_CASE("squarefree decomposition reconstructs its input") {
  auto F2 = FieldCtx::get(2, 1, 12);
  UniPoly h(*F2, {F2->one(), F2->zero(), F2->one(), F2->zero(), F2->one()});
  auto dec = dgz::squarefree_decompose(h);
  REQUIRE(dec.parts.size() == 1);
  CHECK(dec.parts[0].multiplicity == 2);
  CHECK(dec.parts[0].factor ==
        UniPoly(*F2, {F2->one(), F2->one(), F2->one()}));

  for (std::uint32_t pm : {2u, 3u}) {
    auto F = FieldCtx::get(pm, 1, 12);
    dgz::SeededRng rng(43 + pm);
    for (int round = 0; round < 300; ++round) {
      UniPoly prod(*F, {rand_fel(*F, rng)});
      if (prod.is_zero()) prod = UniPoly(*F, {F->one()});
      int nf = 1 + int(rng.bounded(3));
      for (int i = 0; i < nf; ++i) {
        UniPoly fac = rand_monic(*F, rng, 1 + int(rng.bounded(3)));
        std::uint32_t mult = 1 + std::uint32_t(rng.bounded(5));
        for (std::uint32_t j = 0; j < mult; ++j) prod = prod * fac;
      }
      auto d = dgz::squarefree_decompose(prod);
      UniPoly rebuilt(*F, {d.content});
      std::uint32_t last = 0;
      for (const auto& part : d.parts) {
        CHECK(part.multiplicity > last);
        last = part.multiplicity;
        CHECK(part.factor.lc() == F->one());
        CHECK(part.factor.degree() >= 1);
        // Squarefree: coprime to its (necessarily nonzero) derivative.
        UniPoly der = part.factor.derivative();
        CHECK(!der.is_zero());
        CHECK(dgz::gcd(part.factor, der).degree() == 0);
        for (std::uint32_t j = 0; j < part.multiplicity; ++j)
          rebuilt = rebuilt * part.factor;
      }
      // Pairwise coprime.
      for (std::size_t i = 0; i < d.parts.size(); ++i)
        for (std::size_t j = i + 1; j < d.parts.size(); ++j)
          CHECK(dgz::gcd(d.parts[i].factor, d.parts[j].factor).degree() == 0);
      CHECK(rebuilt == prod);
    }
  }
}

TEST_CASE("multiplicity profiles of binary forms") {
  auto F2 = FieldCtx::get(2, 1, 12);
  BinForm g(*F2, 4);  // s^4 + s^2 t^2 + t^4 = (s^2 + st + t^2)^2
  g.at(0) = F2->one();
  g.at(2) = F2->one();
  g.at(4) = F2->one();
  auto prof = dgz::multiplicity_profile(g);
  REQUIRE(prof.size() == 1);
  CHECK(prof[0] == std::pair<std::uint32_t, std::uint32_t>{2, 2});

  BinForm st(*F2, 2);  // s t: two simple roots (1:0) and (0:1)
  st.at(1) = F2->one();
  auto prof2 = dgz::multiplicity_profile(st);
  REQUIRE(prof2.size() == 1);
  CHECK(prof2[0] == std::pair<std::uint32_t, std::uint32_t>{1, 2});

  auto F3 = FieldCtx::get(3, 1, 12);
  BinForm cube(*F3, 3);  // (s + t)^3 = s^3 + t^3 in char 3
  cube.at(0) = F3->one();
  cube.at(3) = F3->one();
  auto prof3 = dgz::multiplicity_profile(cube);
  REQUIRE(prof3.size() == 1);
  CHECK(prof3[0] == std::pair<std::uint32_t, std::uint32_t>{3, 1});

  BinForm mix(*F3, 5);  // s^2 t^3
  mix.at(3) = F3->one();
  auto prof4 = dgz::multiplicity_profile(mix);
  REQUIRE(prof4.size() == 2);
  CHECK(prof4[0] == std::pair<std::uint32_t, std::uint32_t>{2, 1});
  CHECK(prof4[1] == std::pair<std::uint32_t, std::uint32_t>{3, 1});

  // Root count weighted by multiplicity always equals the degree.
  dgz::SeededRng rng(53);
  for (int round = 0; round < 300; ++round) {
    std::uint32_t d = 1 + std::uint32_t(rng.bounded(8));
    BinForm h(*F3, d);
    bool nonzero = false;
    for (std::uint32_t j = 0; j <= d; ++j) {
      h.at(j) = rand_fel(*F3, rng);
      nonzero = nonzero || !F3->is_zero(h.at(j));
    }
    if (!nonzero) continue;
    std::uint64_t total = 0;
    for (auto [mult, count] : dgz::multiplicity_profile(h))
      total += std::uint64_t(mult) * count;
    CHECK(total == d);
  }
}

TEST_CASE("extended gcd returns Bezout cofactors") {
  auto F = FieldCtx::get(2, 1, 12);
  dgz::SeededRng rng(71);
  auto rand_upoly = [&](int max_deg) {
    std::vector<Fel> c(std::uint32_t(rng.bounded(max_deg + 1)) + 1);
    for (Fel& x : c) x = rand_fel(*F, rng);
    return UniPoly(*F, std::move(c));
  };
  int nontrivial = 0;
  for (int round = 0; round < 200; ++round) {
    UniPoly a = rand_upoly(6), b = rand_upoly(6);
    if (a.is_zero() && b.is_zero()) continue;
    dgz::XgcdResult r = dgz::xgcd(a, b);
    CHECK(r.g == dgz::gcd(a, b));
    CHECK(r.u * a + r.v * b == r.g);
    if (r.g.degree() > 0) ++nontrivial;
    // Force a known common factor to exercise nonconstant gcds.
    UniPoly m(*F, {F->one(), F->one(), F->one()});  // 1 + t + t^2
    dgz::XgcdResult s = dgz::xgcd(a * m, b * m);
    if (!a.is_zero() || !b.is_zero()) {
      CHECK(s.u * (a * m) + s.v * (b * m) == s.g);
      CHECK(dgz::divmod(s.g, m).second.is_zero());
    }
  }
  CHECK_THROWS_AS(dgz::xgcd(UniPoly(*F), UniPoly(*F)), std::invalid_argument);
}

TEST_CASE("resultants detect shared roots and multiply over products") {
  auto F = FieldCtx::get(3, 1, 12);
  dgz::SeededRng rng(72);
  auto rand_upoly = [&](int deg) {
    std::vector<Fel> c(std::uint32_t(deg) + 1);
    for (Fel& x : c) x = rand_fel(*F, rng);
    c.back() = F->is_zero(c.back()) ? F->one() : c.back();
    return UniPoly(*F, std::move(c));
  };

  // Res(x - a, x - b) = b - a up to the defining order convention:
  // Res(f, g) = lc(f)^{deg g} prod g over the roots of f.
  for (int round = 0; round < 50; ++round) {
    Fel a = rand_fel(*F, rng), b = rand_fel(*F, rng);
    UniPoly fa(*F, {F->neg(a), F->one()});
    UniPoly fb(*F, {F->neg(b), F->one()});
    CHECK(dgz::resultant(fa, fb) == F->sub(a, b));
    CHECK(F->is_zero(dgz::resultant(fa, fa)));
  }

  // Res(f, g) = lc(f)^{deg g} prod_{f(r)=0} g(r): check against an
  // explicitly split f.
  for (int round = 0; round < 100; ++round) {
    Fel r1 = rand_fel(*F, rng), r2 = rand_fel(*F, rng);
    Fel s = rand_fel(*F, rng);
    if (F->is_zero(s)) s = F->one();
    UniPoly f = UniPoly(*F, {F->neg(r1), F->one()}) *
                UniPoly(*F, {F->neg(r2), F->one()});
    f = f.scalar_mul(s);
    UniPoly g = rand_upoly(int(rng.bounded(4)) + 1);
    Fel expect = F->mul(F->pow(s, std::uint64_t(g.degree())),
                        F->mul(g.evaluate(r1), g.evaluate(r2)));
    CHECK(dgz::resultant(f, g) == expect);
  }

  // Multiplicativity in the first argument.
  for (int round = 0; round < 50; ++round) {
    UniPoly f = rand_upoly(int(rng.bounded(3)) + 1);
    UniPoly h = rand_upoly(int(rng.bounded(3)) + 1);
    UniPoly g = rand_upoly(int(rng.bounded(3)) + 1);
    CHECK(dgz::resultant(f * h, g) ==
          F->mul(dgz::resultant(f, g), dgz::resultant(h, g)));
  }

  CHECK_THROWS_AS(dgz::resultant(UniPoly(*F), UniPoly(*F, {F->one()})),
                  std::invalid_argument);
}

TEST_CASE("interpolation reproduces sampled polynomials") {
  auto F = FieldCtx::get(2, 1, 12);
  dgz::SeededRng rng(73);
  for (int round = 0; round < 100; ++round) {
    std::vector<Fel> c(std::uint32_t(rng.bounded(9)) + 1);
    for (Fel& x : c) x = rand_fel(*F, rng);
    UniPoly f(*F, std::move(c));
    std::vector<std::pair<Fel, Fel>> pts;
    std::uint32_t n = std::uint32_t(std::max(f.degree(), 0)) + 1 +
                      std::uint32_t(rng.bounded(3));
    pts.emplace_back(F->zero(), f.evaluate(F->zero()));
    for (std::uint32_t i = 0; pts.size() < n; ++i)
      pts.emplace_back(F->exp(i), f.evaluate(F->exp(i)));
    CHECK(dgz::interpolate(*F, pts) == f);
  }
  std::vector<std::pair<Fel, Fel>> dup{{F->one(), F->one()},
                                       {F->one(), F->zero()}};
  CHECK_THROWS_AS(dgz::interpolate(*F, dup), std::invalid_argument);
}
