#include "dgz/galois.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dgz/rng.hpp"

namespace dgz {

FiberProfile fiber_profile(const Curve& C, const ProjPoint& P,
                           std::uint32_t mult_p, const ProjLine& l) {
  const FieldCtx& F = C.ctx();
  if (!incident(F, P, l))
    throw std::invalid_argument("fiber_profile: center not on line");
  FiberProfile fp;
  fp.line = l;
  fp.center_multiplicity = mult_p;
  fp.deg_pi = C.degree() - mult_p;

  ProjPoint B = second_point_on(F, l, P);
  BinForm g = restrict_to_line(C.f(), P, B);
  if (g.is_zero()) throw Error("fiber_profile: line lies on the curve");
  std::uint32_t a = g.val_t();
  if (a < mult_p) throw Error("fiber_profile: contact below multiplicity");
  fp.center_order = a;
  if (a > mult_p) fp.center_index = a - mult_p;

  std::uint32_t d = g.degree();
  BinForm h(F, d - a);
  for (std::uint32_t j = 0; j + a <= d; ++j) h.at(j) = g.at(j + a);
  if (d > a) fp.entries = multiplicity_profile(h);

  std::uint64_t total = fp.center_index.value_or(0);
  for (const auto& [e, cnt] : fp.entries) total += std::uint64_t(e) * cnt;
  if (total != fp.deg_pi)
    throw Error("fiber_profile: ramification indices do not sum to deg_pi");
  return fp;
}

FiberProfile fiber_profile(const Curve& C, const ProjPoint& P,
                           const ProjLine& l) {
  return fiber_profile(C, P, multiplicity_at(C, P).multiplicity, l);
}

namespace {

// The Galois obstruction test for one fiber: every ramification index
// must divide deg_pi (checked first, ascending), and all indices in the
// fiber must agree.
std::optional<Obstruction> obstruction_of(const FiberProfile& fp) {
  std::set<std::uint32_t> indices;
  for (const auto& [e, cnt] : fp.entries) indices.insert(e);
  if (fp.center_index) indices.insert(*fp.center_index);
  for (std::uint32_t e : indices)
    if (fp.deg_pi % e != 0) return Obstruction{fp, "index-not-divisor", e};
  if (indices.size() > 1) return Obstruction{fp, "non-uniform", 0};
  return std::nullopt;
}

// ---------------------------------------------------------------------
// Fibers at algebraic pencil parameters.
//
// With the center moved to (0 : 1 : 0), the lines through it other than
// z = 0 are x = t z, and the fiber over t0 away from the center consists
// of the roots of G(t0, y) where G(t, y) is the transformed curve
// equation dehomogenized at z = 1; the root multiplicities are the local
// intersection orders, and the contact at the center is
// deg(C) - deg_y G(t0, .). Parameters t0 outside the working field are
// handled exactly by computing modulo a squarefree modulus M(t): the
// quotient ring F[t]/(M) is a product of fields, and whenever a zero
// test or an inversion distinguishes its factors, the modulus is split
// (dynamic evaluation) and the work redone per factor. A profile
// computed without splits is simultaneously valid for every root of M.
// ---------------------------------------------------------------------

// Carries a proper monic factor of the modulus discovered mid-run.
struct SplitNeeded {
  UniPoly factor;
};

// Arithmetic in F[t]/(M); elements are polynomials reduced mod M.
struct KCtx {
  const FieldCtx& F;
  UniPoly M;  // monic, degree >= 1

  UniPoly reduce(const UniPoly& a) const { return divmod(a, M).second; }

  // Zero test for a reduced element; throws SplitNeeded when the answer
  // differs between factors of M.
  bool is_zero(const UniPoly& a) const {
    if (a.is_zero()) return true;
    UniPoly g = gcd(a, M);
    if (g.degree() == 0) return false;
    if (g.degree() == M.degree()) return true;
    throw SplitNeeded{g};
  }

  UniPoly inv(const UniPoly& a) const {
    XgcdResult r = xgcd(a, M);
    if (r.g.degree() == 0) return reduce(r.u);
    if (r.g.degree() == M.degree())
      throw Error("quotient ring: inverse of zero");
    throw SplitNeeded{r.g};
  }

  UniPoly mul(const UniPoly& a, const UniPoly& b) const {
    return reduce(a * b);
  }
};

// Dense polynomial in y over F[t]/(M), low degree first, trimmed.
using KPoly = std::vector<UniPoly>;

KPoly ktrim(const KCtx& K, KPoly v) {
  while (!v.empty() && K.is_zero(v.back())) v.pop_back();
  return v;
}

int kdeg(const KPoly& v) { return int(v.size()) - 1; }

KPoly kderivative(const KCtx& K, const KPoly& f) {
  KPoly r;
  for (std::size_t i = 1; i < f.size(); ++i) {
    Fel s = K.F.from_residue(i % K.F.p());
    r.push_back(f[i].scalar_mul(s));
  }
  return ktrim(K, r);
}

// Quotient and remainder; b must be trimmed and nonzero.
std::pair<KPoly, KPoly> kdivmod(const KCtx& K, KPoly a, const KPoly& b) {
  UniPoly ilc = K.inv(b.back());
  KPoly q;
  if (a.size() >= b.size())
    q.assign(a.size() - b.size() + 1, UniPoly(K.F));
  while (a.size() >= b.size()) {
    UniPoly c = K.mul(a.back(), ilc);
    std::size_t k = a.size() - b.size();
    q[k] = c;
    for (std::size_t j = 0; j + 1 < b.size(); ++j)
      a[k + j] = a[k + j] - K.mul(c, b[j]);
    a.pop_back();  // the top coefficient cancels exactly
    while (!a.empty() && K.is_zero(a.back())) a.pop_back();
  }
  return {std::move(q), std::move(a)};
}

KPoly kgcd(const KCtx& K, KPoly x, KPoly y) {
  while (!y.empty()) {
    KPoly r = kdivmod(K, x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) throw Error("quotient ring: gcd of two zero polynomials");
  UniPoly ilc = K.inv(x.back());
  for (UniPoly& c : x) c = K.mul(c, ilc);
  return x;
}

KPoly kexact_divide(const KCtx& K, KPoly a, const KPoly& b) {
  auto [q, r] = kdivmod(K, std::move(a), b);
  if (!r.empty()) throw Error("quotient ring: division leaves a remainder");
  return std::move(q);
}

// Root-multiplicity profile of f over the closure: out[m] accumulates the
// number of distinct roots of multiplicity m * scale. Characteristic-p
// squarefree decomposition; when the derivative vanishes, f(y) = h(y^p)
// and the roots of f correspond one-to-one to those of h with p-fold
// multiplicities, so no coefficient roots are ever needed.
void kprofile_rec(const KCtx& K, const KPoly& f, std::uint32_t scale,
                  std::map<std::uint32_t, std::uint32_t>& out) {
  if (kdeg(f) <= 0) return;
  KPoly fp = kderivative(K, f);
  if (fp.empty()) {
    std::uint64_t p = K.F.p();
    KPoly h;
    for (std::size_t i = 0; i < f.size(); i += p) h.push_back(f[i]);
    kprofile_rec(K, h, scale * std::uint32_t(p), out);
    return;
  }
  KPoly c = kgcd(K, f, fp);
  KPoly w = kexact_divide(K, f, c);
  std::uint32_t i = 1;
  std::uint32_t limit = std::uint32_t(kdeg(f)) + 2;
  while (kdeg(w) > 0) {
    if (i > limit)
      throw Error("quotient ring: squarefree decomposition diverged");
    KPoly y = kgcd(K, w, c);
    KPoly fac = kexact_divide(K, w, y);
    if (kdeg(fac) > 0) out[i * scale] += std::uint32_t(kdeg(fac));
    w = std::move(y);
    c = kexact_divide(K, c, w);
    ++i;
  }
  if (kdeg(c) > 0) kprofile_rec(K, c, scale, out);
}

// The pencil through P in frame coordinates: coeff[b](t) is the y^b
// coefficient of the transformed, dehomogenized curve equation after
// unwrapping y-power layers (G(t, y) = A(t, y^layer) with the derivative
// of A in y nonzero); ramified collects every parameter whose fiber can
// ramify (squarefree, monic).
struct PencilData {
  Mat3 frame;
  std::vector<UniPoly> coeff;
  std::uint32_t layer = 1;
  UniPoly ramified;

  explicit PencilData(const FieldCtx& F) : ramified(F) {}
};

PencilData build_pencil(const Curve& C, const ProjPoint& P) {
  const FieldCtx& F = C.ctx();
  PencilData pd(F);
  pd.frame = complete_to_basis(F, P, 1);
  TriPoly g = substitute_linear(C.f(), pd.frame);
  std::uint32_t d = C.degree();

  std::vector<std::vector<Fel>> cf(d + 1, std::vector<Fel>(d + 1, Fel{}));
  for (const auto& [m, c] : g.terms()) cf[m.b][m.a] = F.add(cf[m.b][m.a], c);
  pd.coeff.clear();
  for (std::uint32_t b = 0; b <= d; ++b)
    pd.coeff.emplace_back(F, std::move(cf[b]));

  const std::uint64_t p = F.p();
  for (;;) {
    while (!pd.coeff.empty() && pd.coeff.back().is_zero()) pd.coeff.pop_back();
    if (pd.coeff.size() <= 1)
      throw Error("pencil sweep: projection degenerates");
    bool deriv_zero = true;
    for (std::size_t b = 1; b < pd.coeff.size(); ++b)
      if (b % p != 0 && !pd.coeff[b].is_zero()) {
        deriv_zero = false;
        break;
      }
    if (!deriv_zero) break;
    std::vector<UniPoly> half;
    for (std::size_t b = 0; b < pd.coeff.size(); b += p)
      half.push_back(pd.coeff[b]);
    pd.coeff = std::move(half);
    pd.layer *= std::uint32_t(p);
  }

  std::uint32_t n = std::uint32_t(pd.coeff.size()) - 1;
  std::vector<UniPoly> dy;
  for (std::uint32_t b = 1; b <= n; ++b)
    dy.push_back(pd.coeff[b].scalar_mul(F.from_residue(b % p)));
  while (!dy.empty() && dy.back().is_zero()) dy.pop_back();
  std::uint32_t ny = std::uint32_t(dy.size()) - 1;

  // Res_y(A, dA/dy) by evaluation and interpolation, skipping parameter
  // values where either polynomial drops y-degree. Nonzero because the
  // transformed equation stays irreducible, hence coprime to its nonzero
  // y-derivative of smaller y-degree.
  UniPoly W(F, {F.one()});
  if (n >= 2) {
    std::uint32_t dt = 0;
    for (const UniPoly& cb : pd.coeff)
      dt = std::max(dt, std::uint32_t(std::max(cb.degree(), 0)));
    std::uint64_t need = std::uint64_t(2) * n * dt + 1;
    std::vector<std::pair<Fel, Fel>> samples;
    std::uint64_t tried = 0;
    const std::uint64_t total = F.units() + 1;
    while (samples.size() < need && tried < total) {
      Fel t0 = tried == 0 ? Fel{} : F.exp(tried - 1);
      ++tried;
      if (F.is_zero(pd.coeff[n].evaluate(t0))) continue;
      if (F.is_zero(dy[ny].evaluate(t0))) continue;
      std::vector<Fel> av, bv;
      for (const UniPoly& cb : pd.coeff) av.push_back(cb.evaluate(t0));
      for (const UniPoly& cb : dy) bv.push_back(cb.evaluate(t0));
      Fel r = resultant(UniPoly(F, std::move(av)), UniPoly(F, std::move(bv)));
      samples.emplace_back(t0, r);
    }
    if (samples.size() < need)
      throw Error("pencil sweep: working field too small to interpolate");
    W = interpolate(F, samples);
    if (W.is_zero())
      throw Error("pencil sweep: vanishing discriminant resultant");
  }

  UniPoly special = W;
  if (pd.coeff[n].degree() >= 1) special = special * pd.coeff[n];
  pd.ramified = UniPoly(F, {F.one()});
  if (special.degree() >= 1) {
    SqfDecomp dec = squarefree_decompose(special);
    for (const SqfPart& part : dec.parts)
      pd.ramified = pd.ramified * part.factor;
  }
  return pd;
}

// Profile of the fiber class cut out by the squarefree modulus M; valid
// for every root of M, or SplitNeeded is thrown.
FiberProfile profile_block(const Curve& C, const PencilData& pd,
                           std::uint32_t mult_p, const UniPoly& M) {
  const FieldCtx& F = C.ctx();
  KCtx K{F, M};
  KPoly A;
  for (const UniPoly& cb : pd.coeff) A.push_back(K.reduce(cb));
  A = ktrim(K, A);
  if (A.empty()) throw Error("pencil sweep: a pencil line lies on the curve");

  std::uint32_t d = C.degree();
  std::uint32_t contact = d - pd.layer * std::uint32_t(kdeg(A));
  FiberProfile fp;
  fp.center_multiplicity = mult_p;
  fp.deg_pi = d - mult_p;
  fp.center_order = contact;
  if (contact < mult_p)
    throw Error("pencil sweep: contact below multiplicity");
  if (contact > mult_p) fp.center_index = contact - mult_p;

  std::map<std::uint32_t, std::uint32_t> prof;
  kprofile_rec(K, A, pd.layer, prof);
  fp.entries.assign(prof.begin(), prof.end());

  std::uint64_t total = fp.center_index.value_or(0);
  for (const auto& [e, cnt] : fp.entries) total += std::uint64_t(e) * cnt;
  if (total != fp.deg_pi)
    throw Error("pencil sweep: ramification indices do not sum to deg_pi");

  fp.algebraic = AlgebraicFiber{pd.frame, M.coeffs(),
                                std::uint32_t(std::max(M.degree(), 0))};
  return fp;
}

// Exhaustive final stage: profiles every fiber of the pencil through P
// that can carry ramification and is not already a working-field line in
// disguise (degree-one parameter blocks are handed back to the ordinary
// line machinery for a rational-format witness). Deterministic: the
// worklist starts at the full ramified-parameter radical and splits are
// processed factor first.
std::optional<Obstruction> algebraic_sweep(const Curve& C, const ProjPoint& P,
                                           std::uint32_t mult_p,
                                           std::uint64_t& scanned) {
  const FieldCtx& F = C.ctx();
  PencilData pd = build_pencil(C, P);
  if (pd.ramified.degree() < 1) return std::nullopt;

  Mat3 dual_map = mat_transpose(mat_inverse(F, pd.frame));
  std::deque<UniPoly> work;
  work.push_back(pd.ramified);
  while (!work.empty()) {
    UniPoly M = work.front();
    work.pop_front();
    if (M.degree() == 1) {
      Fel t0 = F.neg(M.coeff(0));
      std::array<Fel, 3> u =
          mat_vec(F, dual_map, {F.one(), Fel{}, F.neg(t0)});
      ProjLine l = make_line(F, u[0], u[1], u[2]);
      ++scanned;
      FiberProfile fp = fiber_profile(C, P, mult_p, l);
      if (auto obs = obstruction_of(fp)) return obs;
      continue;
    }
    try {
      FiberProfile fp = profile_block(C, pd, mult_p, M);
      ++scanned;
      if (auto obs = obstruction_of(fp)) return obs;
    } catch (const SplitNeeded& s) {
      UniPoly rest = exact_divide(M, s.factor).monic();
      work.push_front(rest);
      work.push_front(s.factor);
    }
  }
  return std::nullopt;
}

// Whether the witness fiber passes through a multiple point of the curve
// away from the center (all such points lie in the working field).
bool fiber_meets_singular(const Curve& C, const Obstruction& obs) {
  const FieldCtx& F = C.ctx();
  const std::vector<ProjPoint>& sing = C.singular_points(2);
  if (sing.empty()) return false;
  if (!obs.profile.algebraic) {
    for (const ProjPoint& S : sing)
      if (incident(F, S, obs.profile.line)) return true;
    return false;
  }
  const AlgebraicFiber& af = *obs.profile.algebraic;
  Mat3 inv = mat_inverse(F, af.frame);
  UniPoly M(F, af.modulus);
  for (const ProjPoint& S : sing) {
    std::array<Fel, 3> c = mat_vec(F, inv, S.c);
    if (F.is_zero(c[2])) continue;  // only on the z = 0 line of the frame
    Fel t0 = F.div(c[0], c[2]);
    if (F.is_zero(M.evaluate(t0))) return true;
  }
  return false;
}

}  // namespace

FiberProfile algebraic_fiber_profile(const Curve& C, const Mat3& frame,
                                     const std::vector<Fel>& modulus) {
  const FieldCtx& F = C.ctx();
  UniPoly M(F, modulus);
  if (M.degree() < 1)
    throw Error("algebraic fiber: modulus must have positive degree");
  ProjPoint P = make_point(F, frame[0][1], frame[1][1], frame[2][1]);
  TangentData td = multiplicity_at(C, P);

  PencilData pd(F);
  pd.frame = frame;
  TriPoly g = substitute_linear(C.f(), frame);  // throws on a bad frame
  std::uint32_t d = C.degree();
  std::vector<std::vector<Fel>> cf(d + 1, std::vector<Fel>(d + 1, Fel{}));
  for (const auto& [m, c] : g.terms()) cf[m.b][m.a] = F.add(cf[m.b][m.a], c);
  for (std::uint32_t b = 0; b <= d; ++b)
    pd.coeff.emplace_back(F, std::move(cf[b]));
  const std::uint64_t p = F.p();
  for (;;) {
    while (!pd.coeff.empty() && pd.coeff.back().is_zero()) pd.coeff.pop_back();
    if (pd.coeff.size() <= 1)
      throw Error("algebraic fiber: projection degenerates");
    bool deriv_zero = true;
    for (std::size_t b = 1; b < pd.coeff.size(); ++b)
      if (b % p != 0 && !pd.coeff[b].is_zero()) {
        deriv_zero = false;
        break;
      }
    if (!deriv_zero) break;
    std::vector<UniPoly> half;
    for (std::size_t b = 0; b < pd.coeff.size(); b += p)
      half.push_back(pd.coeff[b]);
    pd.coeff = std::move(half);
    pd.layer *= std::uint32_t(p);
  }
  try {
    return profile_block(C, pd, td.multiplicity, M.monic());
  } catch (const SplitNeeded&) {
    throw Error("algebraic fiber: modulus does not cut one fiber class");
  }
}

NegativeCertificate negative_certificate(const Curve& C, const ProjPoint& P,
                                         const NegativeOptions& opts) {
  const FieldCtx& F = C.ctx();
  NegativeCertificate cert;
  cert.point = P;
  TangentData td = multiplicity_at(C, P);
  cert.deg_pi = C.degree() - td.multiplicity;

  std::set<ProjLine> seen;
  auto try_line = [&](const ProjLine& l) -> bool {
    if (!seen.insert(l).second) return false;
    ++cert.lines_scanned;
    FiberProfile fp = fiber_profile(C, P, td.multiplicity, l);
    auto obs = obstruction_of(fp);
    if (obs) {
      cert.witness = std::move(obs);
      cert.found = true;
    }
    return cert.found;
  };
  auto finish = [&]() -> NegativeCertificate& {
    if (cert.found)
      cert.unibranch_assumption =
          td.multiplicity >= 2 || fiber_meets_singular(C, *cert.witness);
    return cert;
  };

  // Priority 1: the tangent at P when P is a curve point with one.
  if (td.tangent && try_line(*td.tangent)) return finish();

  // Priority 2: lines joining P to the singular points.
  for (const ProjPoint& Q : C.singular_points(2)) {
    if (Q == P) continue;
    if (try_line(line_through(F, P, Q))) return finish();
  }

  // Priority 3: full pencils over F_{q^k}, ascending k.
  for (std::uint32_t k = 1; k <= F.L(); ++k) {
    if (F.L() % k != 0 || k % P.def_degree != 0) continue;
    if (F.subfield_order(k) + 1 > opts.pencil_line_cap) continue;
    for (const ProjLine& l : pencil_through(F, P, k))
      if (try_line(l)) return finish();
  }

  // Priority 4: seeded extra lines through sampled far points.
  SeededRng rng(opts.seed);
  for (std::uint32_t k = opts.sample_ext_min; k <= opts.sample_ext_max; ++k) {
    if (F.L() % k != 0) continue;
    std::uint32_t added = 0, attempts = 0;
    while (added < opts.line_samples && attempts < 100000) {
      ++attempts;
      ProjPoint B = random_point(F, k, rng);
      if (B == P) continue;
      ++added;
      if (try_line(line_through(F, P, B))) return finish();
    }
  }

  // Priority 5: every remaining fiber that can carry ramification, at
  // algebraic pencil parameters outside the working field.
  if (opts.algebraic_stage) {
    auto obs = algebraic_sweep(C, P, td.multiplicity, cert.lines_scanned);
    if (obs) {
      cert.witness = std::move(obs);
      cert.found = true;
    }
  }
  return finish();
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Galois: return "galois";
    case Verdict::NotGalois: return "not-galois";
    default: return "inconclusive";
  }
}

Decision decide(const Curve& C, const ProjPoint& P,
                const DecideOptions& opts) {
  Decision dec;
  NegativeOptions rational = opts.negative;
  rational.algebraic_stage = false;
  dec.negative = negative_certificate(C, P, rational);
  if (dec.negative.found) {
    dec.verdict = Verdict::NotGalois;
    return dec;
  }
  for (std::uint32_t e = 1; e <= opts.stab_ext_bound; ++e) {
    if (e % P.def_degree != 0) continue;
    if (C.ctx().L() % std::lcm(e, P.def_degree) != 0) continue;
    PositiveCertificate pos = positive_certificate(C, P, e);
    bool pass = pos.pass;
    dec.positive = std::move(pos);
    if (pass) {
      dec.verdict = Verdict::Galois;
      return dec;
    }
  }
  // Last resort: repeat the negative route with the exhaustive stage over
  // algebraic pencil parameters switched on.
  NegativeOptions full = opts.negative;
  full.algebraic_stage = true;
  dec.negative = negative_certificate(C, P, full);
  if (dec.negative.found) {
    dec.verdict = Verdict::NotGalois;
    return dec;
  }
  dec.verdict = Verdict::Inconclusive;
  return dec;
}

ScanReport theorem_scan(const Curve& C, const ScanOptions& opts) {
  const FieldCtx& F = C.ctx();
  ScanReport rep;
  rep.q = C.q();
  rep.L = F.L();
  rep.options = opts;
  rep.expected_galois = std::uint64_t(C.q()) * C.q() + C.q() + 1;

  auto run_point = [&](const ProjPoint& P, bool sampled) {
    ScanRow row;
    row.point = P;
    row.def_degree = P.def_degree;
    row.sampled = sampled;
    row.decision = decide(C, P, opts.decide);
    switch (row.decision.verdict) {
      case Verdict::Galois: ++rep.galois; break;
      case Verdict::NotGalois: ++rep.not_galois; break;
      case Verdict::Inconclusive: ++rep.inconclusive; break;
    }
    ++rep.scanned;
    rep.rows.push_back(std::move(row));
  };

  for (const ProjPoint& P : enumerate_points(F, 2)) run_point(P, false);

  SeededRng rng(opts.seed);
  for (std::uint32_t k = opts.sample_ext_min; k <= opts.sample_ext_max; ++k) {
    if (F.L() % k != 0) continue;
    for (const ProjPoint& P :
         sample_points_of_exact_degree(F, k, opts.samples_per_degree, rng))
      run_point(P, true);
  }

  bool ok = rep.inconclusive == 0;
  for (const ScanRow& row : rep.rows) {
    bool expect_galois = row.def_degree == 1;
    if (expect_galois != (row.decision.verdict == Verdict::Galois)) ok = false;
  }
  rep.pass = ok && rep.galois == rep.expected_galois;
  return rep;
}

}  // namespace dgz
