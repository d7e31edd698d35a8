// Points and lines of P^2 over subfields of the working field.
// A point is stored by its canonical representative: coordinates scaled so
// the first nonzero one equals 1. Lines are stored the same way in dual
// coordinates (u0, u1, u2), incidence being u . P = 0. def_degree is the
// least k | L with all coordinates in F_{q^k}.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dgz/field.hpp"

namespace dgz {

struct ProjPoint {
  std::array<Fel, 3> c{};
  std::uint32_t def_degree = 1;
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.c == b.c;
  }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
    return a.c < b.c;
  }
};

struct ProjLine {
  std::array<Fel, 3> u{};
  std::uint32_t def_degree = 1;
  friend bool operator==(const ProjLine& a, const ProjLine& b) {
    return a.u == b.u;
  }
  friend bool operator<(const ProjLine& a, const ProjLine& b) {
    return a.u < b.u;
  }
};

// Throws std::invalid_argument on the zero triple.
ProjPoint make_point(const FieldCtx& F, Fel x, Fel y, Fel z);
ProjLine make_line(const FieldCtx& F, Fel u0, Fel u1, Fel u2);

bool incident(const FieldCtx& F, const ProjPoint& P, const ProjLine& l);

// Line through two distinct points (dual cross product).
ProjLine line_through(const FieldCtx& F, const ProjPoint& A, const ProjPoint& B);
// Intersection of two distinct lines.
ProjPoint meet(const FieldCtx& F, const ProjLine& a, const ProjLine& b);

// All q^{2k} + q^k + 1 points of P^2(F_{q^k}) in deterministic order:
// shape classes (1:a:b), (0:1:c), (0:0:1), coordinates running through
// enumerate_subfield(k) lexicographically within a class.
std::vector<ProjPoint> enumerate_points(const FieldCtx& F, std::uint32_t k);

// The q^k + 1 lines of P^2(F_{q^k}) through P, sorted by dual coordinates.
// Requires P to be defined over F_{q^k}.
std::vector<ProjLine> pencil_through(const FieldCtx& F, const ProjPoint& P,
                                     std::uint32_t k);

// Deterministic basis of the point row space of l: two distinct points
// spanning the line.
std::array<ProjPoint, 2> line_basis(const FieldCtx& F, const ProjLine& l);

// Second parametrization point for l: the first basis point not equal to P.
// Requires incident(P, l).
ProjPoint second_point_on(const FieldCtx& F, const ProjLine& l,
                          const ProjPoint& P);

class SeededRng;

// Uniform random point of P^2(F_{q^k}).
ProjPoint random_point(const FieldCtx& F, std::uint32_t k, SeededRng& rng);

// `count` distinct points whose definition degree is exactly k, by
// rejection sampling; throws Error if the class cannot supply them.
std::vector<ProjPoint> sample_points_of_exact_degree(const FieldCtx& F,
                                                     std::uint32_t k,
                                                     std::size_t count,
                                                     SeededRng& rng);

}  // namespace dgz
