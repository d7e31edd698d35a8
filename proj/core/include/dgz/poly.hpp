// Polynomial arithmetic over a FieldCtx working field.
//
//   TriPoly  sparse polynomial in x, y, z; terms ordered graded reverse
//            lexicographically with x > y > z, leading term first.
//   BinForm  homogeneous binary form g(s, t), dense by t-exponent; the
//            parameter (1:0) corresponds to point A of a line restriction
//            f(sA + tB), so restriction code can pin a chosen point there.
//   UniPoly  dense univariate polynomial, low-degree first.
//
// Matrices act on polynomials by row substitution: (f . M)(v) = f(Mv),
// i.e. variable i is replaced by row i of M applied to (x, y, z). This
// matches the action of M on points as column vectors, and gives
// (f . M) . N = f . (MN).

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "dgz/field.hpp"
#include "dgz/plane.hpp"

namespace dgz {

struct NonDivisibleError : Error {
  using Error::Error;
};

struct Mono {
  std::uint16_t a = 0, b = 0, c = 0;
  std::uint32_t total() const { return std::uint32_t(a) + b + c; }
  friend bool operator==(const Mono& x, const Mono& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c;
  }
};

// Graded reverse lexicographic descending order (x > y > z): higher total
// degree first; on ties the monomial with the smaller exponent in the
// last differing variable, scanning z, y, x, comes first.
struct GrevlexGreater {
  bool operator()(const Mono& x, const Mono& y) const {
    std::uint32_t dx = x.total(), dy = y.total();
    if (dx != dy) return dx > dy;
    if (x.c != y.c) return x.c < y.c;
    if (x.b != y.b) return x.b < y.b;
    return false;
  }
};

using Mat3 = std::array<std::array<Fel, 3>, 3>;

Fel det3(const FieldCtx& F, const Mat3& M);
Mat3 mat_mul(const FieldCtx& F, const Mat3& A, const Mat3& B);
std::array<Fel, 3> mat_vec(const FieldCtx& F, const Mat3& M,
                           const std::array<Fel, 3>& v);
Mat3 mat_transpose(const Mat3& M);
// Inverse via the adjugate; throws Error on a singular matrix.
Mat3 mat_inverse(const FieldCtx& F, const Mat3& M);
Mat3 mat_identity(const FieldCtx& F);

class TriPoly {
 public:
  using TermMap = std::map<Mono, Fel, GrevlexGreater>;

  explicit TriPoly(const FieldCtx* F = nullptr) : F_(F) {}
  static TriPoly zero(const FieldCtx& F) { return TriPoly(&F); }
  static TriPoly constant(const FieldCtx& F, Fel c);
  static TriPoly monomial(const FieldCtx& F, Mono m, Fel c);
  // variable(F, 0) = x, 1 = y, 2 = z.
  static TriPoly variable(const FieldCtx& F, int i);

  const FieldCtx& ctx() const { return *F_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  // -1 for the zero polynomial.
  int degree() const { return degree_; }
  bool is_homogeneous() const;
  Fel coeff(Mono m) const;
  std::pair<Mono, Fel> lead() const;  // throws on zero

  TriPoly operator+(const TriPoly& o) const;
  TriPoly operator-(const TriPoly& o) const;
  TriPoly operator*(const TriPoly& o) const;
  TriPoly scalar_mul(Fel c) const;
  friend bool operator==(const TriPoly& a, const TriPoly& b) {
    return a.terms_ == b.terms_;
  }

  Fel evaluate(Fel x, Fel y, Fel z) const;
  Fel evaluate(const ProjPoint& P) const {
    return evaluate(P.c[0], P.c[1], P.c[2]);
  }
  // Formal partial derivative, i in {0, 1, 2}.
  TriPoly derivative(int i) const;
  TriPoly map_coeffs(const std::function<Fel(Fel)>& f) const;

  // Internal: insert/accumulate a term, dropping zeros.
  void add_term(Mono m, Fel c);
  void refresh_degree();

 private:
  const FieldCtx* F_;
  TermMap terms_;
  int degree_ = -1;
};

// Quotient of an exact division; throws NonDivisibleError when the
// remainder of multivariate long division is nonzero.
TriPoly exact_divide(const TriPoly& num, const TriPoly& den);

// (f . M)(v) = f(Mv); see the convention note above.
TriPoly substitute_linear(const TriPoly& f, const Mat3& M);

class BinForm {
 public:
  BinForm(const FieldCtx& F, std::uint32_t degree)
      : F_(&F), coeffs_(degree + 1, Fel{}) {}
  const FieldCtx& ctx() const { return *F_; }
  std::uint32_t degree() const { return std::uint32_t(coeffs_.size() - 1); }
  // Coefficient of s^{d-j} t^j.
  Fel& at(std::uint32_t j) { return coeffs_[j]; }
  Fel at(std::uint32_t j) const { return coeffs_[j]; }
  bool is_zero() const;
  // Order of vanishing at parameter (1:0), i.e. the t-adic valuation.
  // Throws on the zero form.
  std::uint32_t val_t() const;
  friend bool operator==(const BinForm& a, const BinForm& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  const FieldCtx* F_;
  std::vector<Fel> coeffs_;
};

// g(s, t) = f(sA + tB) for a homogeneous f; the zero form results exactly
// when f vanishes on the whole line AB. Requires A != B.
BinForm restrict_to_line(const TriPoly& f, const ProjPoint& A,
                         const ProjPoint& B);

class UniPoly {
 public:
  explicit UniPoly(const FieldCtx& F) : F_(&F) {}
  UniPoly(const FieldCtx& F, std::vector<Fel> coeffs);
  const FieldCtx& ctx() const { return *F_; }
  const std::vector<Fel>& coeffs() const { return c_; }
  int degree() const { return int(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Fel lc() const;
  Fel coeff(std::uint32_t i) const {
    return i < c_.size() ? c_[i] : Fel{};
  }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scalar_mul(Fel s) const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.c_ == b.c_;
  }

  UniPoly monic() const;
  UniPoly derivative() const;
  Fel evaluate(Fel x) const;

 private:
  const FieldCtx* F_;
  std::vector<Fel> c_;  // low first, no trailing zeros
};

// Quotient and remainder; divisor must be nonzero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly exact_divide(const UniPoly& a, const UniPoly& b);
// Monic gcd; gcd(0, 0) is an error.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

// g = u a + v b with g the monic gcd. gcd(0, 0) is an error.
struct XgcdResult {
  UniPoly g, u, v;
};
XgcdResult xgcd(const UniPoly& a, const UniPoly& b);

// Resultant of two nonzero polynomials (zero exactly when they share a
// root over the closure). Throws on a zero input.
Fel resultant(const UniPoly& a, const UniPoly& b);

// The unique polynomial of degree < points.size() through the given
// (x, y) pairs; the x values must be distinct.
UniPoly interpolate(const FieldCtx& F,
                    const std::vector<std::pair<Fel, Fel>>& points);
// Inverse of h |-> h^p; requires every exponent with a nonzero
// coefficient to be divisible by p.
UniPoly pth_root(const UniPoly& f);

struct SqfPart {
  std::uint32_t multiplicity = 0;
  UniPoly factor;  // monic, nonconstant
};

// g = content * prod factor_i^{multiplicity_i} with pairwise coprime
// squarefree monic factors and strictly increasing multiplicities.
struct SqfDecomp {
  Fel content;
  std::vector<SqfPart> parts;
};

// Characteristic-p squarefree decomposition (derivative-zero layers are
// unwrapped through p-th roots). Throws on the zero polynomial.
SqfDecomp squarefree_decompose(const UniPoly& g);

// Multiset {(multiplicity, number of distinct projective roots over the
// closure with that multiplicity)}, sorted by multiplicity. The parameter
// (1:0) root is read off the t-adic valuation, (0:1) off the degree
// deficit of the dehomogenization, interior roots off the squarefree
// decomposition. Sum of multiplicity * count = degree. Throws on zero.
std::vector<std::pair<std::uint32_t, std::uint32_t>> multiplicity_profile(
    const BinForm& g);

}  // namespace dgz
