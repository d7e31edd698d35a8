#include "dgz/pgl.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dgz {

Mat3 normalize_matrix(const FieldCtx& F, const Mat3& M) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!F.is_zero(M[i][j])) {
        Fel s = F.inv(M[i][j]);
        Mat3 R;
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) R[r][c] = F.mul(M[r][c], s);
        return R;
      }
  throw std::invalid_argument("normalize_matrix: zero matrix");
}

PglElt make_pgl(const FieldCtx& F, const Mat3& M) {
  if (F.is_zero(det3(F, M))) throw std::invalid_argument("make_pgl: singular matrix");
  return PglElt{normalize_matrix(F, M)};
}

PglElt pgl_mul(const FieldCtx& F, const PglElt& A, const PglElt& B) {
  return PglElt{normalize_matrix(F, mat_mul(F, A.M, B.M))};
}

PglElt pgl_inverse(const FieldCtx& F, const PglElt& A) {
  return PglElt{normalize_matrix(F, mat_inverse(F, A.M))};
}

ProjPoint pgl_apply(const FieldCtx& F, const PglElt& A, const ProjPoint& P) {
  auto w = mat_vec(F, A.M, P.c);
  return make_point(F, w[0], w[1], w[2]);
}

std::uint32_t pgl_def_degree(const FieldCtx& F, const PglElt& A) {
  for (std::uint32_t k = 1; k < F.L(); ++k) {
    if (F.L() % k != 0) continue;
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i)
      for (int j = 0; j < 3 && ok; ++j)
        if (!F.in_subfield(A.M[i][j], k)) ok = false;
    if (ok) return k;
  }
  return F.L();
}

std::vector<PglElt> enumerate_pgl(const FieldCtx& F, std::uint32_t k) {
  std::uint64_t Q = F.subfield_order(k);
  if (Q > 100) throw Error("enumerate_pgl: group too large to enumerate");
  std::uint64_t q3 = Q * Q * Q;
  std::uint64_t order = (q3 - 1) * (q3 - Q) * (Q * Q);  // |GL_3|/(Q-1)
  if (order > 10'000'000)
    throw Error("enumerate_pgl: group too large to enumerate");

  auto els = F.enumerate_subfield(k);
  std::size_t S = els.size();
  std::vector<PglElt> out;
  out.reserve(order);
  for (int pos = 0; pos < 9; ++pos) {
    std::uint64_t count = 1;
    for (int i = pos + 1; i < 9; ++i) count *= S;
    for (std::uint64_t n = 0; n < count; ++n) {
      Mat3 M{};
      M[pos / 3][pos % 3] = F.one();
      std::uint64_t rem = n;
      for (int slot = 8; slot > pos; --slot) {
        M[slot / 3][slot % 3] = els[rem % S];
        rem /= S;
      }
      if (!F.is_zero(det3(F, M))) out.push_back(PglElt{M});
    }
  }
  if (out.size() != order) throw Error("enumerate_pgl: order mismatch");
  return out;
}

std::optional<Fel> preserves_curve(const Curve& C, const Mat3& M) {
  const FieldCtx& F = C.ctx();
  TriPoly g = substitute_linear(C.f(), M);
  const TriPoly& f = C.f();
  if (g.term_count() != f.term_count() || g.degree() != f.degree())
    return std::nullopt;
  Fel lambda = F.div(g.lead().second, f.lead().second);
  if (g == f.scalar_mul(lambda)) return lambda;
  return std::nullopt;
}

InvarianceTable::InvarianceTable(const Curve& C, std::uint32_t t)
    : F_(&C.ctx()), t_(t), d_(C.degree()) {
  const FieldCtx& F = *F_;
  els_ = F.enumerate_subfield(t);
  S_ = els_.size();
  if (S_ < std::size_t(d_) + 1)
    throw std::invalid_argument(
        "invariance table needs q^t >= degree + 1 grid values");
  step_ = (F.units()) / (S_ - 1);

  const TriPoly& f = C.f();
  auto points = enumerate_points(F, t);
  values_.resize(points.size());
  std::vector<Fel> xp(d_ + 1), yp(d_ + 1), zp(d_ + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& c = points[i].c;
    xp[0] = yp[0] = zp[0] = F.one();
    for (std::uint32_t e = 1; e <= d_; ++e) {
      xp[e] = F.mul(xp[e - 1], c[0]);
      yp[e] = F.mul(yp[e - 1], c[1]);
      zp[e] = F.mul(zp[e - 1], c[2]);
    }
    Fel acc{};
    for (const auto& [m, co] : f.terms())
      acc = F.add(acc, F.mul(F.mul(co, xp[m.a]), F.mul(yp[m.b], zp[m.c])));
    values_[i] = acc;
  }

  grid_.resize(std::size_t(d_ + 1) * (d_ + 1));
  for (std::uint32_t i = 0; i <= d_; ++i)
    for (std::uint32_t j = 0; j <= d_; ++j)
      grid_[std::size_t(i) * (d_ + 1) + j] =
          value_at(els_[i], els_[j], F.one());
}

std::size_t InvarianceTable::elem_index(Fel x) const {
  if (F_->is_zero(x)) return 0;
  std::uint64_t l = F_->log(x);
  if (l % step_ != 0) throw Error("invariance table: value outside F_{q^t}");
  return 1 + std::size_t(l / step_);
}

Fel InvarianceTable::value_at(Fel x, Fel y, Fel z) const {
  const FieldCtx& F = *F_;
  // Canonicalize (x : y : z) and rescale by pivot^d.
  Fel piv;
  std::size_t idx;
  if (!F.is_zero(x)) {
    piv = x;
    Fel ix = F.inv(x);
    idx = elem_index(F.mul(y, ix)) * S_ + elem_index(F.mul(z, ix));
  } else if (!F.is_zero(y)) {
    piv = y;
    idx = S_ * S_ + elem_index(F.mul(z, F.inv(y)));
  } else if (!F.is_zero(z)) {
    piv = z;
    idx = S_ * S_ + S_;
  } else {
    throw Error("invariance table: zero projective triple");
  }
  return F.mul(F.pow(piv, d_), values_[idx]);
}

std::optional<Fel> InvarianceTable::check(const Mat3& A) const {
  const FieldCtx& F = *F_;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!F.in_subfield(A[i][j], t_))
        throw std::invalid_argument(
            "invariance table: matrix entry outside F_{q^t}");
  std::optional<Fel> lambda;
  for (std::uint32_t i = 0; i <= d_; ++i) {
    Fel u = els_[i];
    // Row-constant pieces of A (u, v, 1)^T.
    Fel r0 = F.add(F.mul(A[0][0], u), A[0][2]);
    Fel r1 = F.add(F.mul(A[1][0], u), A[1][2]);
    Fel r2 = F.add(F.mul(A[2][0], u), A[2][2]);
    for (std::uint32_t j = 0; j <= d_; ++j) {
      Fel v = els_[j];
      Fel fP = grid_[std::size_t(i) * (d_ + 1) + j];
      Fel w0 = F.add(r0, F.mul(A[0][1], v));
      Fel w1 = F.add(r1, F.mul(A[1][1], v));
      Fel w2 = F.add(r2, F.mul(A[2][1], v));
      Fel fAP = value_at(w0, w1, w2);
      if (!lambda) {
        if (F.is_zero(fP)) {
          if (!F.is_zero(fAP)) return std::nullopt;
          continue;
        }
        if (F.is_zero(fAP)) return std::nullopt;
        lambda = F.div(fAP, fP);
      } else if (!(fAP == F.mul(*lambda, fP))) {
        return std::nullopt;
      }
    }
  }
  if (!lambda) throw Error("invariance table: form vanished on the grid");
  return lambda;
}

std::uint32_t table_extension_degree(const Curve& C, std::uint32_t e) {
  const FieldCtx& F = C.ctx();
  for (std::uint32_t t = e; t <= F.L(); ++t) {
    if (t % e != 0 || F.L() % t != 0) continue;
    // q^t >= degree + 1, watching for overflow via repeated division.
    std::uint64_t need = C.degree() + 1, qq = F.q();
    std::uint64_t have = 1;
    bool enough = false;
    for (std::uint32_t i = 0; i < t && !enough; ++i) {
      have *= qq;
      if (have >= need) enough = true;
    }
    if (enough) return t;
  }
  throw Error("no working-field extension can host the invariance grid");
}

const InvarianceTable& invariance_table(const Curve& C, std::uint32_t t) {
  static std::mutex mu;
  static std::map<std::tuple<const FieldCtx*, std::uint32_t, std::uint32_t>,
                  std::unique_ptr<InvarianceTable>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(&C.ctx(), C.q(), t);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<InvarianceTable>(C, t)).first;
  return *it->second;
}

GroupInvariance verify_group_invariance(const Curve& C, std::uint32_t k) {
  GroupInvariance gi;
  gi.k = k;
  const InvarianceTable& table =
      invariance_table(C, table_extension_degree(C, k));
  auto group = enumerate_pgl(C.ctx(), k);
  gi.group_order = group.size();
  for (const PglElt& A : group)
    if (table.check(A.M)) ++gi.preserved;
  gi.pass = gi.preserved == gi.group_order;
  return gi;
}

std::vector<Mat3> projection_stabilizer_candidates(const Curve& C,
                                                   const ProjPoint& P,
                                                   std::uint32_t e) {
  const FieldCtx& F = C.ctx();
  if (e == 0 || F.L() % e != 0)
    throw std::invalid_argument(
        "stabilizer candidates need an extension degree dividing L");
  Mat3 T = complete_to_basis(F, P, 1);
  Mat3 Ti = mat_inverse(F, T);
  auto els = F.enumerate_subfield(e);
  std::vector<Mat3> out;
  out.reserve(els.size() * els.size() * (els.size() - 1));
  for (const Fel& delta : els) {
    if (F.is_zero(delta)) continue;
    for (const Fel& gamma : els)
      for (const Fel& beta : els) {
        Mat3 U{};
        U[0][0] = F.one();
        U[1][0] = gamma;
        U[1][1] = delta;
        U[1][2] = beta;
        U[2][2] = F.one();
        out.push_back(mat_mul(F, mat_mul(F, T, U), Ti));
      }
  }
  return out;
}

namespace {

// Greedy generator selection: walk the sorted group, adding any element
// not yet generated and closing under multiplication.
std::vector<PglElt> pick_generators(const FieldCtx& F,
                                    const std::vector<PglElt>& group) {
  std::vector<PglElt> gens;
  std::set<PglElt> generated;
  generated.insert(make_pgl(F, mat_identity(F)));
  for (const PglElt& A : group) {
    if (generated.count(A)) continue;
    gens.push_back(A);
    // Close the generated set under right-multiplication by gens.
    std::vector<PglElt> frontier(generated.begin(), generated.end());
    generated.insert(A);
    frontier.push_back(A);
    while (!frontier.empty()) {
      PglElt g = frontier.back();
      frontier.pop_back();
      for (const PglElt& h : gens) {
        PglElt gh = pgl_mul(F, g, h);
        if (generated.insert(gh).second) frontier.push_back(gh);
        PglElt hg = pgl_mul(F, h, g);
        if (generated.insert(hg).second) frontier.push_back(hg);
      }
    }
  }
  return gens;
}

}  // namespace

PositiveCertificate positive_certificate(const Curve& C, const ProjPoint& P,
                                         std::uint32_t e) {
  const FieldCtx& F = C.ctx();
  PositiveCertificate cert;
  cert.center = P;
  cert.ext_degree = e;
  std::uint32_t me = std::lcm(e, P.def_degree);
  if (F.L() % me != 0)
    throw std::invalid_argument(
        "positive_certificate: extension degree outside the working field");

  TangentData td = multiplicity_at(C, P);
  cert.deg_pi = C.degree() - td.multiplicity;

  const InvarianceTable& table =
      invariance_table(C, table_extension_degree(C, me));
  auto candidates = projection_stabilizer_candidates(C, P, e);
  cert.candidate_count = candidates.size();

  std::vector<PglElt> kept;
  for (const Mat3& A : candidates)
    if (table.check(A)) kept.push_back(PglElt{normalize_matrix(F, A)});
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  cert.preservers = kept.size();
  cert.group = kept;

  if (cert.preservers == cert.deg_pi) {
    std::set<PglElt> members(kept.begin(), kept.end());
    cert.closed = true;
    for (const PglElt& A : kept) {
      for (const PglElt& B : kept)
        if (!members.count(pgl_mul(F, A, B))) {
          cert.closed = false;
          break;
        }
      if (!cert.closed) break;
    }
    cert.symbolic_ok = true;
    for (const PglElt& A : kept)
      if (!preserves_curve(C, A.M)) {
        cert.symbolic_ok = false;
        break;
      }
    if (cert.closed && cert.symbolic_ok)
      cert.generators = pick_generators(F, kept);
  }
  cert.pass = cert.preservers == cert.deg_pi && cert.closed && cert.symbolic_ok;
  return cert;
}

}  // namespace dgz
