// Deciding whether a point of the plane is a Galois point of the curve:
// whether the projection from it makes the function field extension
// Galois. Negative certificates exhibit a line whose fiber ramification
// is incompatible with a Galois covering (a Galois deck group acts
// transitively on each fiber, so all ramification indices in a fiber
// agree and divide the projection degree). Positive certificates count
// projection-compatible curve automorphisms up to the projection degree
// (pgl.hpp). Both routes are exact; Inconclusive is a first-class result
// and fails a scan.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgz/curve.hpp"
#include "dgz/pgl.hpp"
#include "dgz/plane.hpp"

namespace dgz {

// A fiber of the projection whose line is not rational over the working
// field. In the coordinates of `frame` (an invertible matrix whose middle
// column is the center P), the lines through P other than z = 0 are
// x = t z; `modulus` is a squarefree polynomial in t (low-degree first)
// cutting out the parameters of the fiber class. The profile attached to
// such a fiber is valid for every root of the modulus.
struct AlgebraicFiber {
  Mat3 frame;
  std::vector<Fel> modulus;
  std::uint32_t param_degree = 0;  // degree of the modulus
};

// Ramification data of one fiber of the projection from P: the line l
// through P, the local intersection orders at the curve points of l away
// from P (as (order, count) pairs), and the contribution of the center
// place when P itself lies on the curve and l is its tangent. When the
// line lives over an extension outside the working field it is described
// by `algebraic` instead and `line` is left empty.
struct FiberProfile {
  ProjLine line;
  std::uint32_t center_order = 0;         // I(P, C . l); 0 off the curve
  std::uint32_t center_multiplicity = 0;  // mult_P(C)
  std::optional<std::uint32_t> center_index;  // center_order - mult, if > 0
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
  std::uint64_t deg_pi = 0;
  std::optional<AlgebraicFiber> algebraic;
};

// mult_p must equal multiplicity_at(C, P).multiplicity; requires P on l.
FiberProfile fiber_profile(const Curve& C, const ProjPoint& P,
                           std::uint32_t mult_p, const ProjLine& l);
FiberProfile fiber_profile(const Curve& C, const ProjPoint& P,
                           const ProjLine& l);

// Recomputes the profile of an algebraic fiber class from its serialized
// description alone: the frame (middle column = center) and the modulus
// coefficients, low-degree first. Throws Error when the data does not
// describe a fiber class of the curve (non-squarefree or mixed modulus,
// singular frame).
FiberProfile algebraic_fiber_profile(const Curve& C, const Mat3& frame,
                                     const std::vector<Fel>& modulus);

struct Obstruction {
  FiberProfile profile;
  // "index-not-divisor": some ramification index does not divide deg_pi
  // (bad_index holds it); "non-uniform": a fiber mixes distinct indices.
  std::string reason;
  std::uint32_t bad_index = 0;
};

struct NegativeOptions {
  // Pencils over F_{q^k} are scanned for every k | L compatible with the
  // point's field of definition while q^k + 1 stays within this cap.
  std::uint32_t pencil_line_cap = 4200;
  std::uint32_t line_samples = 24;  // extra seeded lines per degree below
  std::uint32_t sample_ext_min = 3;
  std::uint32_t sample_ext_max = 4;
  std::uint64_t seed = 42;
  // When set, a final exhaustive stage profiles every remaining ramified
  // fiber of the pencil through algebraic parameter values (those not
  // rational over the working field), so that no witness can hide beyond
  // the scanned lines. decide() enables this as a last resort.
  bool algebraic_stage = false;
};

struct NegativeCertificate {
  ProjPoint point;
  std::uint64_t deg_pi = 0;
  std::uint64_t lines_scanned = 0;
  bool found = false;
  std::optional<Obstruction> witness;
  // True when reading the witness fiber as ramification data treats a
  // multiple point of the curve (the center or a point of the fiber) as
  // carrying a single place; the curves built here have only such
  // singularities, but the reading is recorded as an assumption.
  bool unibranch_assumption = false;
};

// Searches lines through P in a deterministic priority order (tangent at
// P, lines to the singular points, pencils by ascending extension degree,
// then seeded extra lines, then optionally the algebraic-parameter stage)
// and stops at the first fiber whose ramification pattern obstructs a
// Galois covering.
NegativeCertificate negative_certificate(const Curve& C, const ProjPoint& P,
                                         const NegativeOptions& opts = {});

enum class Verdict { Galois, NotGalois, Inconclusive };

const char* verdict_name(Verdict v);

struct DecideOptions {
  NegativeOptions negative;
  std::uint32_t stab_ext_bound = 2;  // positive route tries e = 1..bound
};

struct Decision {
  Verdict verdict = Verdict::Inconclusive;
  NegativeCertificate negative;
  std::optional<PositiveCertificate> positive;
};

// Negative route over rational lines first; if no obstruction is found,
// positive certificates are attempted for each candidate extension degree
// compatible with the point's field of definition. When both fail, the
// negative route is rerun with the exhaustive algebraic-parameter stage
// before the decision falls back to Inconclusive.
Decision decide(const Curve& C, const ProjPoint& P,
                const DecideOptions& opts = {});

struct ScanOptions {
  DecideOptions decide;
  std::uint32_t samples_per_degree = 50;
  std::uint32_t sample_ext_min = 3;
  std::uint32_t sample_ext_max = 4;
  std::uint64_t seed = 42;
};

struct ScanRow {
  ProjPoint point;
  std::uint32_t def_degree = 0;
  bool sampled = false;
  Decision decision;
};

struct ScanReport {
  std::uint32_t q = 0;
  std::uint32_t L = 0;
  ScanOptions options;
  std::uint64_t scanned = 0;
  std::uint64_t galois = 0;
  std::uint64_t not_galois = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t expected_galois = 0;  // q^2 + q + 1
  bool pass = false;
  std::vector<ScanRow> rows;
};

// Exhaustive decision over P^2(F_{q^2}) (which contains P^2(F_q)), plus
// seeded samples of points of definition degree 3 and 4. Passes exactly
// when the Galois points found are the points of P^2(F_q), with no
// inconclusive results.
ScanReport theorem_scan(const Curve& C, const ScanOptions& opts = {});

}  // namespace dgz
