// PGL_3 machinery over subfields of the working field, and exact tests
// for whether a matrix substitution preserves the curve's defining form
// up to a scalar.
//
// A PglElt stores the unique representative of its projective class whose
// first nonzero entry in row-major order is 1. Matrices act on points as
// column vectors and on polynomials by row substitution, so that
// pgl_apply(AB, P) = pgl_apply(A, pgl_apply(B, P)) and
// substitute_linear(f, AB) = substitute_linear(substitute_linear(f, A), B).

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dgz/curve.hpp"
#include "dgz/field.hpp"
#include "dgz/plane.hpp"
#include "dgz/poly.hpp"

namespace dgz {

struct PglElt {
  Mat3 M{};
  friend bool operator==(const PglElt& a, const PglElt& b) {
    return a.M == b.M;
  }
  friend bool operator<(const PglElt& a, const PglElt& b) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (a.M[i][j] < b.M[i][j]) return true;
        if (b.M[i][j] < a.M[i][j]) return false;
      }
    return false;
  }
};

// Scale so the first nonzero row-major entry is 1; throws Error on the
// zero matrix, and make_pgl additionally rejects singular matrices.
Mat3 normalize_matrix(const FieldCtx& F, const Mat3& M);
PglElt make_pgl(const FieldCtx& F, const Mat3& M);
PglElt pgl_mul(const FieldCtx& F, const PglElt& A, const PglElt& B);
PglElt pgl_inverse(const FieldCtx& F, const PglElt& A);
ProjPoint pgl_apply(const FieldCtx& F, const PglElt& A, const ProjPoint& P);
// Smallest k | L with every entry in F_{q^k}.
std::uint32_t pgl_def_degree(const FieldCtx& F, const PglElt& A);

// All elements of PGL_3(F_{q^k}) in a deterministic order. Throws Error
// when the group order exceeds 10^7.
std::vector<PglElt> enumerate_pgl(const FieldCtx& F, std::uint32_t k);

// Symbolic test: the scalar lambda with substitute_linear(f, M) equal to
// lambda f, or nullopt. Exact on full coefficient vectors.
std::optional<Fel> preserves_curve(const Curve& C, const Mat3& M);

// Exact scalar-invariance test backed by a value table. For a form f of
// degree d and matrices over F_{q^t} with q^t >= d + 1, agreement of
// substitute_linear(f, A) with lambda f on the (d+1) x (d+1) grid of the
// chart z = 1 is equivalent to the polynomial identity (iterated
// univariate interpolation), so the check is exact, not probabilistic.
class InvarianceTable {
 public:
  InvarianceTable(const Curve& C, std::uint32_t t);
  std::uint32_t t() const { return t_; }
  // Matrix entries must lie in F_{q^t}.
  std::optional<Fel> check(const Mat3& A) const;

 private:
  Fel value_at(Fel x, Fel y, Fel z) const;
  std::size_t elem_index(Fel x) const;
  const FieldCtx* F_;
  std::uint32_t t_ = 0, d_ = 0;
  std::uint64_t step_ = 0;       // log stride of the F_{q^t} generator
  std::size_t S_ = 0;            // q^t
  std::vector<Fel> els_;         // enumerate_subfield(t)
  std::vector<Fel> values_;      // f over enumerate_points(t)
  std::vector<Fel> grid_;        // f on the (d+1)^2 chart grid
};

// Smallest t with t | L, e | t, and q^t >= degree + 1 (the table size
// needed to certify matrices with entries in F_{q^e}).
std::uint32_t table_extension_degree(const Curve& C, std::uint32_t e);

// Shared, lazily built tables keyed by (field, q, t).
const InvarianceTable& invariance_table(const Curve& C, std::uint32_t t);

struct GroupInvariance {
  std::uint32_t k = 0;
  std::uint64_t group_order = 0;
  std::uint64_t preserved = 0;
  bool pass = false;
};

// Checks that every element of PGL_3(F_{q^k}) fixes the curve up to a
// scalar.
GroupInvariance verify_group_invariance(const Curve& C, std::uint32_t k);

// Projection-compatible candidate automorphisms for the projection away
// from P: conjugates T U T^{-1} of the maps U fixing the projection
// coordinates, with U parametrized over F_{q^e} by (gamma, delta, beta),
// delta nonzero — q^{2e} (q^e - 1) candidates. T carries (0:1:0) to P.
std::vector<Mat3> projection_stabilizer_candidates(const Curve& C,
                                                   const ProjPoint& P,
                                                   std::uint32_t e);

struct PositiveCertificate {
  ProjPoint center;
  std::uint32_t ext_degree = 0;   // e of the candidate parametrization
  std::uint64_t deg_pi = 0;       // degree of the projection from center
  std::uint64_t candidate_count = 0;
  std::uint64_t preservers = 0;   // candidates fixing the curve
  bool closed = false;            // preserver set closed under product
  bool symbolic_ok = false;       // each preserver re-checked symbolically
  bool pass = false;
  std::vector<PglElt> group;      // the preservers, sorted
  std::vector<PglElt> generators; // greedy generating subset
};

// Certifies the projection from P as a Galois covering: the preserver
// count must reach deg_pi exactly and close under multiplication; each
// preserver is then re-verified against the full coefficient vector.
PositiveCertificate positive_certificate(const Curve& C, const ProjPoint& P,
                                         std::uint32_t e);

}  // namespace dgz
