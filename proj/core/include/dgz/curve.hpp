// Construction and local analysis of the plane curve studied here: the
// quotient of two Moore-style determinants in x, y, z built from q-power
// columns. For q = p^m the defining form has degree q^3 - q^2 and
// coefficients in F_q (embedded in the working field F_{q^L}).

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgz/field.hpp"
#include "dgz/plane.hpp"
#include "dgz/poly.hpp"

namespace dgz {

// det of the 3x3 matrix whose row for each variable v in {x, y, z} is
// (v^{q^exps[0]}, v^{q^exps[1]}, v^{q^exps[2]}) — a 6-term polynomial.
TriPoly moore_det(const FieldCtx& F, std::uint32_t q,
                  const std::array<std::uint32_t, 3>& exps);

class Curve {
 public:
  // Supported q: 2, 3, 4. L is the working-field extension degree over
  // F_q; its divisors are the extension degrees the library can touch.
  static Curve build(std::uint32_t q, std::uint32_t L = 12);

  const FieldCtx& ctx() const { return *F_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t degree() const { return deg_; }
  const TriPoly& f() const { return f_; }
  const TriPoly& partial(int i) const { return partials_[i]; }

  bool on_curve(const ProjPoint& P) const {
    return F_->is_zero(f_.evaluate(P));
  }
  // All three partials vanish and P lies on the curve; for a plane curve
  // this is exactly multiplicity >= 2.
  bool is_singular_at(const ProjPoint& P) const;

  // Singular points defined over F_{q^k}, cached per k, in the
  // enumerate_points order.
  const std::vector<ProjPoint>& singular_points(std::uint32_t k) const;

 private:
  Curve() = default;
  const FieldCtx* F_ = nullptr;
  std::uint32_t q_ = 0, deg_ = 0;
  TriPoly f_;
  std::array<TriPoly, 3> partials_;
  mutable std::map<std::uint32_t, std::vector<ProjPoint>> singular_cache_;
};

// Invertible matrix with P as column `col` and standard basis vectors as
// the other two columns, chosen deterministically (first valid pair).
Mat3 complete_to_basis(const FieldCtx& F, const ProjPoint& P, int col);

struct TangentData {
  ProjPoint point;
  std::uint32_t multiplicity = 0;  // 0 when the point is off the curve
  // Whether the degree-`multiplicity` tangent cone is a single line to
  // the full power. When it is, that line and its exponent follow.
  bool cone_splits = false;
  std::optional<ProjLine> tangent;
  std::uint32_t tangent_exponent = 0;
};

TangentData multiplicity_at(const Curve& C, const ProjPoint& Q);

// Intersection order I(Q, C . l) of the curve with a line at Q, the
// t-adic valuation of the restriction parametrized with Q at (1:0).
// Requires incident(Q, l); returns 0 when Q is off the curve.
std::uint32_t intersection_order(const Curve& C, const ProjPoint& Q,
                                 const ProjLine& l);

struct FactCheck {
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::uint64_t scanned = 0;
  std::uint64_t violations = 0;
  std::string note;
};

struct FactOptions {
  std::uint32_t samples_per_degree = 50;
  std::uint32_t sample_ext_min = 3;
  std::uint32_t sample_ext_max = 4;
  std::uint32_t smooth_k_max = 2;
  std::uint64_t seed = 42;
};

struct FactReport {
  std::vector<FactCheck> checks;
  bool all_pass = true;  // over the checks that ran
};

// Mechanical verification of the curve's structural facts:
//   construction         degree, homogeneity, F_q coefficients, and the
//                        determinant product identity
//   rational-points      no F_q-rational points on the curve
//   singular-locus       singular set over F_{q^2} equals the points of
//                        definition degree exactly 2
//   singular-samples     no singular points among sampled points of
//                        definition degree 3 and 4
//   singular-line-orders every singular point has multiplicity q-1, a
//                        single-line tangent cone over F_q with contact
//                        order q, and order q-1 on all other lines of its
//                        F_{q^2}-pencil
//   smooth-tangent-orders tangent contact order >= q at every smooth
//                        curve point over F_{q^k}, k <= smooth_k_max
// The scan-based checks need a curve with singular structure; they are
// skipped for q = 2 (fact scans require q > 2).
FactReport verify_facts(const Curve& C, const FactOptions& opts = {});

}  // namespace dgz
