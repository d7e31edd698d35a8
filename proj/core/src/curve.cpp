#include "dgz/curve.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dgz/rng.hpp"

namespace dgz {

TriPoly moore_det(const FieldCtx& F, std::uint32_t q,
                  const std::array<std::uint32_t, 3>& exps) {
  std::array<std::uint16_t, 3> e;
  for (int j = 0; j < 3; ++j) {
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < exps[j]; ++i) v *= q;
    if (v > 0xFFFF) throw Error("moore_det: exponent too large");
    e[j] = std::uint16_t(v);
  }
  struct Perm {
    int s[3];
    bool even;
  };
  static const Perm kPerms[6] = {
      {{0, 1, 2}, true},  {{1, 2, 0}, true},  {{2, 0, 1}, true},
      {{0, 2, 1}, false}, {{2, 1, 0}, false}, {{1, 0, 2}, false}};
  TriPoly out(&F);
  Fel pos = F.one(), neg = F.neg(F.one());
  for (const Perm& perm : kPerms) {
    Mono m{e[perm.s[0]], e[perm.s[1]], e[perm.s[2]]};
    out.add_term(m, perm.even ? pos : neg);
  }
  return out;
}

Curve Curve::build(std::uint32_t q, std::uint32_t L) {
  std::uint32_t p, m;
  switch (q) {
    case 2: p = 2; m = 1; break;
    case 3: p = 3; m = 1; break;
    case 4: p = 2; m = 2; break;
    default:
      throw std::invalid_argument("supported base field sizes are 2, 3, 4");
  }
  Curve C;
  C.F_ = FieldCtx::get(p, m, L).get();  // the get() cache owns the context
  C.q_ = q;
  C.deg_ = q * q * q - q * q;

  TriPoly d1 = moore_det(*C.F_, q, {0, 1, 3});
  TriPoly d2 = moore_det(*C.F_, q, {0, 1, 2});
  C.f_ = exact_divide(d1, d2);

  if (C.f_.degree() != int(C.deg_) || !C.f_.is_homogeneous())
    throw Error("curve self-check failed: wrong degree");
  for (const auto& [mono, coef] : C.f_.terms())
    if (!C.F_->in_subfield(coef, 1))
      throw Error("curve self-check failed: coefficient outside F_q");
  if (!(d2 * C.f_ == d1))
    throw Error("curve self-check failed: determinant identity");

  for (int i = 0; i < 3; ++i) C.partials_[i] = C.f_.derivative(i);
  return C;
}

bool Curve::is_singular_at(const ProjPoint& P) const {
  if (!on_curve(P)) return false;
  for (int i = 0; i < 3; ++i)
    if (!F_->is_zero(partials_[i].evaluate(P))) return false;
  return true;
}

const std::vector<ProjPoint>& Curve::singular_points(std::uint32_t k) const {
  auto it = singular_cache_.find(k);
  if (it != singular_cache_.end()) return it->second;
  std::vector<ProjPoint> sing;
  for (const ProjPoint& P : enumerate_points(*F_, k))
    if (is_singular_at(P)) sing.push_back(P);
  return singular_cache_.emplace(k, std::move(sing)).first->second;
}

Mat3 complete_to_basis(const FieldCtx& F, const ProjPoint& P, int col) {
  if (col < 0 || col > 2)
    throw std::invalid_argument("basis column index not in 0..2");
  int others[2];
  int slot = 0;
  for (int c = 0; c < 3; ++c)
    if (c != col) others[slot++] = c;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Mat3 M{};
      for (int r = 0; r < 3; ++r) M[r][col] = P.c[r];
      M[i][others[0]] = F.one();
      M[j][others[1]] = F.one();
      if (!F.is_zero(det3(F, M))) return M;
    }
  throw Error("complete_to_basis: no completion found");
}

namespace {

// Decide whether the binary form h of degree m >= 1 equals
// lambda (alpha x + beta y)^m, returning the dual pair (alpha, beta).
// The candidate beta is read off one coefficient through the p-adic
// structure of m, then the factorization is verified exactly.
std::optional<std::array<Fel, 2>> split_cone(const FieldCtx& F,
                                             const BinForm& h) {
  std::uint32_t m = h.degree();
  std::uint64_t p = F.p();
  if (F.is_zero(h.at(0))) {
    for (std::uint32_t j = 0; j < m; ++j)
      if (!F.is_zero(h.at(j))) return std::nullopt;
    return std::array<Fel, 2>{F.zero(), F.one()};
  }
  Fel lambda = h.at(0);
  std::uint32_t mo = m, k = 0;
  while (mo % p == 0) {
    mo /= std::uint32_t(p);
    ++k;
  }
  std::uint32_t pk = 1;
  for (std::uint32_t i = 0; i < k; ++i) pk *= std::uint32_t(p);
  // (x + beta y)^m = (x^{p^k} + beta^{p^k} y^{p^k})^{mo}; the coefficient
  // of x^{m-p^k} y^{p^k} is mo * beta^{p^k}.
  Fel beta = F.div(h.at(pk), F.mul(lambda, F.from_residue(mo % p)));
  for (std::uint32_t i = 0; i < k; ++i) beta = F.pth_root(beta);
  std::vector<Fel> pw{F.one()};
  for (std::uint32_t i = 0; i < m; ++i) {
    std::vector<Fel> nxt(pw.size() + 1, Fel{});
    for (std::size_t j = 0; j < nxt.size(); ++j) {
      Fel acc{};
      if (j < pw.size()) acc = pw[j];
      if (j >= 1) acc = F.add(acc, F.mul(beta, pw[j - 1]));
      nxt[j] = acc;
    }
    pw = std::move(nxt);
  }
  for (std::uint32_t j = 0; j <= m; ++j)
    if (!(h.at(j) == F.mul(lambda, pw[j]))) return std::nullopt;
  return std::array<Fel, 2>{F.one(), beta};
}

}  // namespace

TangentData multiplicity_at(const Curve& C, const ProjPoint& Q) {
  const FieldCtx& F = C.ctx();
  std::uint32_t d = C.degree();
  Mat3 M = complete_to_basis(F, Q, 2);
  TriPoly g = substitute_linear(C.f(), M);

  std::uint32_t max_c = 0;
  for (const auto& [m, c] : g.terms()) max_c = std::max(max_c, std::uint32_t(m.c));
  TangentData td;
  td.point = Q;
  td.multiplicity = d - max_c;
  if (td.multiplicity == 0) return td;

  BinForm cone(F, td.multiplicity);
  for (const auto& [m, c] : g.terms())
    if (std::uint32_t(m.c) == max_c) cone.at(m.b) = c;

  auto dual = split_cone(F, cone);
  if (!dual) return td;
  td.cone_splits = true;
  std::array<Fel, 3> ug{(*dual)[0], (*dual)[1], F.zero()};
  std::array<Fel, 3> uo = mat_vec(F, mat_transpose(mat_inverse(F, M)), ug);
  td.tangent = make_line(F, uo[0], uo[1], uo[2]);
  td.tangent_exponent = td.multiplicity;
  return td;
}

std::uint32_t intersection_order(const Curve& C, const ProjPoint& Q,
                                 const ProjLine& l) {
  const FieldCtx& F = C.ctx();
  if (!incident(F, Q, l))
    throw std::invalid_argument("intersection_order: point not on line");
  ProjPoint B = second_point_on(F, l, Q);
  BinForm g = restrict_to_line(C.f(), Q, B);
  if (g.is_zero()) throw Error("intersection_order: line lies on the curve");
  return g.val_t();
}

FactReport verify_facts(const Curve& C, const FactOptions& opts) {
  const FieldCtx& F = C.ctx();
  std::uint32_t q = C.q();
  FactReport rep;

  {
    FactCheck c{"construction", true, false, 4, 0, ""};
    TriPoly d1 = moore_det(F, q, {0, 1, 3});
    TriPoly d2 = moore_det(F, q, {0, 1, 2});
    if (C.f().degree() != int(q * q * q - q * q)) ++c.violations;
    if (!C.f().is_homogeneous()) ++c.violations;
    bool coeffs_ok = true;
    for (const auto& [m, co] : C.f().terms())
      if (!F.in_subfield(co, 1)) coeffs_ok = false;
    if (!coeffs_ok) ++c.violations;
    if (!(d2 * C.f() == d1)) ++c.violations;
    c.pass = c.violations == 0;
    c.note = "degree " + std::to_string(C.degree());
    rep.checks.push_back(std::move(c));
  }

  {
    FactCheck c{"rational-points", true, false, 0, 0, ""};
    for (const ProjPoint& P : enumerate_points(F, 1)) {
      ++c.scanned;
      if (C.on_curve(P)) ++c.violations;
    }
    c.pass = c.violations == 0;
    rep.checks.push_back(std::move(c));
  }

  if (q == 2) {
    for (const char* name : {"singular-locus", "singular-samples",
                             "singular-line-orders", "smooth-tangent-orders"})
      rep.checks.push_back(
          {name, true, true, 0, 0, "fact scans require q > 2"});
  } else {
    {
      FactCheck c{"singular-locus", true, false, 0, 0, ""};
      const auto& sing = C.singular_points(2);
      std::set<ProjPoint> sing_set(sing.begin(), sing.end());
      for (const ProjPoint& P : enumerate_points(F, 2)) {
        ++c.scanned;
        bool expected = P.def_degree == 2;
        if (sing_set.count(P) != std::size_t(expected)) ++c.violations;
      }
      c.pass = c.violations == 0;
      c.note = "singular points: " + std::to_string(sing.size());
      rep.checks.push_back(std::move(c));
    }
    {
      FactCheck c{"singular-samples", true, false, 0, 0, ""};
      SeededRng rng(opts.seed);
      for (std::uint32_t k = opts.sample_ext_min; k <= opts.sample_ext_max;
           ++k) {
        if (F.L() % k != 0) continue;
        auto pts =
            sample_points_of_exact_degree(F, k, opts.samples_per_degree, rng);
        for (const ProjPoint& P : pts) {
          ++c.scanned;
          if (C.is_singular_at(P)) ++c.violations;
        }
      }
      c.pass = c.violations == 0;
      rep.checks.push_back(std::move(c));
    }
    {
      FactCheck c{"singular-line-orders", true, false, 0, 0, ""};
      const auto& sing = C.singular_points(2);
      for (const ProjPoint& Q : sing) {
        TangentData td = multiplicity_at(C, Q);
        ++c.scanned;
        if (td.multiplicity != q - 1) ++c.violations;
        ++c.scanned;
        bool cone_ok = td.cone_splits && td.tangent &&
                       td.tangent->def_degree == 1 &&
                       td.tangent_exponent == q - 1;
        if (!cone_ok) ++c.violations;
        if (!td.tangent) continue;
        bool tangent_seen = false;
        for (const ProjLine& l : pencil_through(F, Q, 2)) {
          ++c.scanned;
          std::uint32_t ord = intersection_order(C, Q, l);
          bool is_tan = l == *td.tangent;
          tangent_seen = tangent_seen || is_tan;
          if (ord != (is_tan ? q : q - 1)) ++c.violations;
        }
        if (!tangent_seen) ++c.violations;
      }
      c.pass = c.violations == 0;
      c.note = "singular points: " + std::to_string(sing.size());
      rep.checks.push_back(std::move(c));
    }
    {
      FactCheck c{"smooth-tangent-orders", true, false, 0, 0, ""};
      std::uint64_t smooth = 0;
      for (std::uint32_t k = 1; k <= opts.smooth_k_max; ++k) {
        if (F.L() % k != 0) continue;
        for (const ProjPoint& P : enumerate_points(F, k)) {
          if (P.def_degree != k) continue;  // each point visited once
          if (!C.on_curve(P) || C.is_singular_at(P)) continue;
          ++smooth;
          ++c.scanned;
          TangentData td = multiplicity_at(C, P);
          if (!(td.multiplicity == 1 && td.tangent &&
                intersection_order(C, P, *td.tangent) >= q))
            ++c.violations;
        }
      }
      c.pass = c.violations == 0;
      c.note = "smooth points scanned: " + std::to_string(smooth);
      rep.checks.push_back(std::move(c));
    }
  }

  for (const FactCheck& c : rep.checks)
    if (!c.skipped && !c.pass) rep.all_pass = false;
  return rep;
}

}  // namespace dgz
