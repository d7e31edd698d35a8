#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <string>
#include <vector>

#include "dgz/curve.hpp"
#include "dgz/field.hpp"
#include "dgz/galois.hpp"
#include "dgz/plane.hpp"
#include "dgz/rng.hpp"
#include "doctest.h"

using dgz::Curve;
using dgz::FieldCtx;
using dgz::ProjPoint;
using dgz::Verdict;

TEST_CASE("fibers from a rational center are uniform and divide deg_pi") {
  Curve C = Curve::build(3);
  const FieldCtx& F = C.ctx();
  ProjPoint P = dgz::make_point(F, F.zero(), F.one(), F.zero());
  REQUIRE(!C.on_curve(P));
  for (std::uint32_t k : {1u, 2u}) {
    for (const dgz::ProjLine& l : dgz::pencil_through(F, P, k)) {
      dgz::FiberProfile fp = dgz::fiber_profile(C, P, l);
      CHECK(fp.deg_pi == 18);
      CHECK(fp.center_order == 0);
      CHECK(!fp.center_index.has_value());
      REQUIRE(!fp.entries.empty());
      std::uint64_t total = 0;
      for (auto [e, cnt] : fp.entries) {
        CHECK(18 % e == 0);
        CHECK(e == fp.entries[0].first);  // transitivity-compatible
        total += std::uint64_t(e) * cnt;
      }
      CHECK(total == 18);
    }
  }
}

TEST_CASE("fiber profile requires incidence") {
  Curve C = Curve::build(3);
  const FieldCtx& F = C.ctx();
  ProjPoint P = dgz::make_point(F, F.zero(), F.one(), F.zero());
  dgz::ProjLine l = dgz::make_line(F, F.zero(), F.one(), F.zero());
  REQUIRE(!dgz::incident(F, P, l));
  CHECK_THROWS_AS(dgz::fiber_profile(C, P, l), std::invalid_argument);
}

TEST_CASE("negative certificate at a singular point of the q = 3 curve") {
  Curve C = Curve::build(3);
  const auto& sing = C.singular_points(2);
  REQUIRE(!sing.empty());
  dgz::NegativeCertificate cert = dgz::negative_certificate(C, sing[0]);
  CHECK(cert.deg_pi == 16);  // degree 18 minus multiplicity 2
  CHECK(cert.found);
  REQUIRE(cert.witness.has_value());
  const dgz::Obstruction& w = *cert.witness;
  CHECK((w.reason == "index-not-divisor" || w.reason == "non-uniform"));
  if (w.reason == "index-not-divisor") {
    CHECK(w.bad_index > 0);
    CHECK(16 % w.bad_index != 0);
  }
  CHECK(w.profile.deg_pi == 16);
  CHECK(cert.lines_scanned >= 1);
}

TEST_CASE("decisions for q = 3: rational Galois, singular not") {
  Curve C = Curve::build(3);
  const FieldCtx& F = C.ctx();

  ProjPoint P = dgz::make_point(F, F.one(), F.one(), F.one());
  dgz::Decision dp = dgz::decide(C, P);
  CHECK(dp.verdict == Verdict::Galois);
  CHECK(!dp.negative.found);
  REQUIRE(dp.positive.has_value());
  CHECK(dp.positive->pass);
  CHECK(dp.positive->deg_pi == 18);
  CHECK(dp.positive->group.size() == 18);

  const auto& sing = C.singular_points(2);
  dgz::Decision ds = dgz::decide(C, sing[1]);
  CHECK(ds.verdict == Verdict::NotGalois);
  CHECK(ds.negative.found);
  CHECK(!ds.positive.has_value());
}

TEST_CASE("decisions for q = 2: every rational point is Galois, every "
          "degree-2 point is not") {
  Curve C = Curve::build(2);
  const FieldCtx& F = C.ctx();
  for (const ProjPoint& P : dgz::enumerate_points(F, 2)) {
    CAPTURE(P.c[0].v);
    CAPTURE(P.c[1].v);
    CAPTURE(P.c[2].v);
    dgz::Decision d = dgz::decide(C, P);
    if (P.def_degree == 1) {
      CHECK(d.verdict == Verdict::Galois);
      REQUIRE(d.positive.has_value());
      CHECK(d.positive->deg_pi == 4);
    } else {
      CHECK(d.verdict == Verdict::NotGalois);
    }
  }
}

TEST_CASE("sampled high-degree points of the q = 3 curve are not Galois") {
  Curve C = Curve::build(3);
  const FieldCtx& F = C.ctx();
  dgz::SeededRng rng(89);
  for (std::uint32_t k : {3u, 4u}) {
    auto pts = dgz::sample_points_of_exact_degree(F, k, 3, rng);
    for (const ProjPoint& P : pts) {
      dgz::Decision d = dgz::decide(C, P);
      CHECK(d.verdict == Verdict::NotGalois);
    }
  }
}

TEST_CASE("verdict names are stable") {
  CHECK(std::string(dgz::verdict_name(Verdict::Galois)) == "galois");
  CHECK(std::string(dgz::verdict_name(Verdict::NotGalois)) == "not-galois");
  CHECK(std::string(dgz::verdict_name(Verdict::Inconclusive)) ==
        "inconclusive");
}

TEST_CASE("theorem scan for q = 2 finds exactly the seven rational points") {
  Curve C = Curve::build(2);
  dgz::ScanOptions opts;
  opts.samples_per_degree = 5;
  dgz::ScanReport rep = dgz::theorem_scan(C, opts);
  CHECK(rep.q == 2);
  CHECK(rep.expected_galois == 7);
  CHECK(rep.galois == 7);
  CHECK(rep.inconclusive == 0);
  CHECK(rep.scanned == 21 + 10);
  CHECK(rep.not_galois == rep.scanned - 7);
  CHECK(rep.pass);
  std::uint64_t sampled = 0;
  for (const dgz::ScanRow& row : rep.rows) {
    if (row.sampled) {
      ++sampled;
      CHECK(row.def_degree >= 3);
    }
    CHECK((row.decision.verdict == Verdict::Galois) ==
          (row.def_degree == 1));
  }
  CHECK(sampled == 10);
}

TEST_CASE("theorem scan for q = 3 finds exactly the thirteen rational "
          "points") {
  Curve C = Curve::build(3);
  dgz::ScanOptions opts;
  opts.samples_per_degree = 4;
  dgz::ScanReport rep = dgz::theorem_scan(C, opts);
  CHECK(rep.expected_galois == 13);
  CHECK(rep.galois == 13);
  CHECK(rep.inconclusive == 0);
  CHECK(rep.scanned == 91 + 8);
  CHECK(rep.pass);
}

TEST_CASE("fibers at algebraic pencil parameters are reproducible from "
          "their serialized description") {
  Curve C = Curve::build(2);
  const FieldCtx& F = C.ctx();
  dgz::ScanOptions opts;
  opts.samples_per_degree = 5;
  dgz::ScanReport rep = dgz::theorem_scan(C, opts);
  REQUIRE(rep.pass);

  std::uint64_t algebraic = 0;
  for (const dgz::ScanRow& row : rep.rows) {
    if (!row.decision.negative.witness) continue;
    const dgz::Obstruction& w = *row.decision.negative.witness;
    if (!w.profile.algebraic) continue;
    ++algebraic;
    const dgz::AlgebraicFiber& af = *w.profile.algebraic;

    // The frame is centered on the refuted point and the modulus is a
    // nonconstant polynomial over the working field.
    ProjPoint center =
        dgz::make_point(F, af.frame[0][1], af.frame[1][1], af.frame[2][1]);
    CHECK(center == row.point);
    CHECK(af.param_degree >= 2);
    CHECK(af.modulus.size() == af.param_degree + 1);

    // Recomputing from (frame, modulus) alone reproduces the profile.
    dgz::FiberProfile fresh =
        dgz::algebraic_fiber_profile(C, af.frame, af.modulus);
    CHECK(fresh.entries == w.profile.entries);
    CHECK(fresh.center_order == w.profile.center_order);
    CHECK(fresh.center_index == w.profile.center_index);
    CHECK(fresh.deg_pi == w.profile.deg_pi);

    // The profile really obstructs a Galois covering.
    std::set<std::uint32_t> idx;
    for (auto [e, cnt] : fresh.entries) idx.insert(e);
    if (fresh.center_index) idx.insert(*fresh.center_index);
    bool bad_divisor = false;
    for (std::uint32_t e : idx) bad_divisor = bad_divisor || fresh.deg_pi % e;
    CHECK((idx.size() > 1 || bad_divisor));

    // Indices still sum to the projection degree.
    std::uint64_t total = fresh.center_index.value_or(0);
    for (auto [e, cnt] : fresh.entries) total += std::uint64_t(e) * cnt;
    CHECK(total == fresh.deg_pi);
  }
  // The working field cannot see these fibers any other way; the scan
  // relies on them, so they must occur.
  CHECK(algebraic > 0);

  // A tampered modulus that mixes fiber classes is rejected.
  for (const dgz::ScanRow& row : rep.rows) {
    if (!row.decision.negative.witness) continue;
    const dgz::Obstruction& w = *row.decision.negative.witness;
    if (!w.profile.algebraic) continue;
    const dgz::AlgebraicFiber& af = *w.profile.algebraic;
    dgz::UniPoly m(F, af.modulus);
    // Multiply by t: parameter 0 belongs to an unramified class here, so
    // either the mixture splits or the profile changes; both reject.
    dgz::UniPoly mixed = m * dgz::UniPoly(F, {F.zero(), F.one()});
    bool rejected = false;
    try {
      dgz::FiberProfile fp =
          dgz::algebraic_fiber_profile(C, af.frame, mixed.coeffs());
      rejected = !(fp.entries == w.profile.entries);
    } catch (const dgz::Error&) {
      rejected = true;
    }
    CHECK(rejected);
    break;
  }
}

TEST_CASE("negative certificates record when multiple points are read as "
          "single places") {
  // q = 3: the witness at a singular point runs through singular points,
  // so the unibranch reading is load-bearing and recorded.
  Curve C3 = Curve::build(3);
  const FieldCtx& F3 = C3.ctx();
  std::vector<ProjPoint> sing = C3.singular_points(2);
  REQUIRE(!sing.empty());
  dgz::NegativeCertificate s_cert = dgz::negative_certificate(C3, sing[0]);
  REQUIRE(s_cert.found);
  CHECK(s_cert.unibranch_assumption);

  // Sampled far points at q = 3 get witness lines through the singular
  // locus, so the flag is set there as well.
  dgz::SeededRng rng(7);
  auto far3 = dgz::sample_points_of_exact_degree(F3, 3, 2, rng);
  for (const ProjPoint& P : far3) {
    dgz::Decision dec = dgz::decide(C3, P);
    REQUIRE(dec.verdict == Verdict::NotGalois);
    CHECK(dec.negative.unibranch_assumption ==
          [&] {
            const auto& prof = dec.negative.witness->profile;
            if (prof.algebraic) return true;  // not expected at q = 3
            for (const ProjPoint& S : sing)
              if (dgz::incident(F3, S, prof.line)) return true;
            return false;
          }());
  }

  // q = 2: the curve is smooth, so no fiber can involve a multiple point
  // and the flag stays clear on every certificate of the scan.
  Curve C2 = Curve::build(2);
  dgz::ScanOptions opts;
  opts.samples_per_degree = 5;
  dgz::ScanReport rep = dgz::theorem_scan(C2, opts);
  for (const dgz::ScanRow& row : rep.rows)
    CHECK(!row.decision.negative.unibranch_assumption);
}
