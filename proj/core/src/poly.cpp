#include "dgz/poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dgz {

namespace {

void require_same_ctx(const FieldCtx* a, const FieldCtx* b) {
  if (a != b)
    throw std::invalid_argument("polynomial operands use different fields");
}

// Dense storage for a homogeneous trivariate form of degree d: the
// coefficient of x^a y^b z^(d-a-b) lives at hoff(d, a) + b.
using Dense = std::vector<Fel>;

std::size_t hsize(std::uint32_t d) {
  return std::size_t(d + 1) * (d + 2) / 2;
}

std::size_t hoff(std::uint32_t d, std::uint32_t a) {
  return std::size_t(a) * (d + 1) - std::size_t(a) * (a - 1) / 2;
}

// h (degree k) times the linear form lin[0] x + lin[1] y + lin[2] z.
Dense mul_linear(const FieldCtx& F, const Dense& h, std::uint32_t k,
                 const std::array<Fel, 3>& lin) {
  Dense out(hsize(k + 1), Fel{});
  for (std::uint32_t a = 0; a <= k; ++a) {
    std::size_t src = hoff(k, a);
    std::size_t dst_same = hoff(k + 1, a);
    std::size_t dst_up = hoff(k + 1, a + 1);
    for (std::uint32_t b = 0; b + a <= k; ++b) {
      Fel v = h[src + b];
      if (F.is_zero(v)) continue;
      if (!F.is_zero(lin[0])) {
        Fel& o = out[dst_up + b];
        o = F.add(o, F.mul(v, lin[0]));
      }
      if (!F.is_zero(lin[1])) {
        Fel& o = out[dst_same + b + 1];
        o = F.add(o, F.mul(v, lin[1]));
      }
      if (!F.is_zero(lin[2])) {
        Fel& o = out[dst_same + b];
        o = F.add(o, F.mul(v, lin[2]));
      }
    }
  }
  return out;
}

// Substitute each variable of the degree-d form f by the corresponding row
// of M, via a doubly nested Horner scheme over rows of the exponent
// triangle, with a power table for the z-row.
Dense compose3(const FieldCtx& F, const Dense& f, std::uint32_t d,
               const Mat3& M) {
  std::vector<Dense> zpow(d + 1);
  zpow[0] = Dense{F.one()};
  for (std::uint32_t k = 1; k <= d; ++k)
    zpow[k] = mul_linear(F, zpow[k - 1], k - 1, M[2]);

  Dense res;
  bool first = true;
  for (std::int64_t a = d; a >= 0; --a) {
    std::uint32_t e = d - std::uint32_t(a);
    std::size_t row = hoff(d, std::uint32_t(a));
    Dense ga{f[row + e]};
    for (std::int64_t b = std::int64_t(e) - 1; b >= 0; --b) {
      std::uint32_t k = e - std::uint32_t(b);  // degree of ga after this step
      ga = mul_linear(F, ga, k - 1, M[1]);
      Fel cf = f[row + std::size_t(b)];
      if (!F.is_zero(cf)) {
        const Dense& zp = zpow[k];
        for (std::size_t i = 0; i < ga.size(); ++i)
          ga[i] = F.add(ga[i], F.mul(cf, zp[i]));
      }
    }
    if (first) {
      res = std::move(ga);
      first = false;
    } else {
      res = mul_linear(F, res, e - 1, M[0]);
      for (std::size_t i = 0; i < res.size(); ++i)
        res[i] = F.add(res[i], ga[i]);
    }
  }
  return res;
}

// Binary analog: dense degree-k binary form times (alpha s + beta t).
std::vector<Fel> mul_linear_bin(const FieldCtx& F, const std::vector<Fel>& h,
                                Fel alpha, Fel beta) {
  std::vector<Fel> out(h.size() + 1, Fel{});
  for (std::size_t j = 0; j < out.size(); ++j) {
    Fel acc{};
    if (j < h.size() && !F.is_zero(alpha)) acc = F.mul(h[j], alpha);
    if (j >= 1 && !F.is_zero(beta))
      acc = F.add(acc, F.mul(h[j - 1], beta));
    out[j] = acc;
  }
  return out;
}

std::vector<Fel> compose2(const FieldCtx& F, const Dense& f, std::uint32_t d,
                          const ProjPoint& A, const ProjPoint& B) {
  std::vector<std::vector<Fel>> zpow(d + 1);
  zpow[0] = {F.one()};
  for (std::uint32_t k = 1; k <= d; ++k)
    zpow[k] = mul_linear_bin(F, zpow[k - 1], A.c[2], B.c[2]);

  std::vector<Fel> res;
  bool first = true;
  for (std::int64_t a = d; a >= 0; --a) {
    std::uint32_t e = d - std::uint32_t(a);
    std::size_t row = hoff(d, std::uint32_t(a));
    std::vector<Fel> ga{f[row + e]};
    for (std::int64_t b = std::int64_t(e) - 1; b >= 0; --b) {
      std::uint32_t k = e - std::uint32_t(b);
      ga = mul_linear_bin(F, ga, A.c[1], B.c[1]);
      Fel cf = f[row + std::size_t(b)];
      if (!F.is_zero(cf)) {
        const auto& zp = zpow[k];
        for (std::size_t i = 0; i < ga.size(); ++i)
          ga[i] = F.add(ga[i], F.mul(cf, zp[i]));
      }
    }
    if (first) {
      res = std::move(ga);
      first = false;
    } else {
      res = mul_linear_bin(F, res, A.c[0], B.c[0]);
      for (std::size_t i = 0; i < res.size(); ++i)
        res[i] = F.add(res[i], ga[i]);
    }
  }
  return res;
}

}  // namespace

Fel det3(const FieldCtx& F, const Mat3& M) {
  auto minor = [&](int r1, int r2, int c1, int c2) {
    return F.sub(F.mul(M[r1][c1], M[r2][c2]), F.mul(M[r1][c2], M[r2][c1]));
  };
  Fel d = F.mul(M[0][0], minor(1, 2, 1, 2));
  d = F.sub(d, F.mul(M[0][1], minor(1, 2, 0, 2)));
  return F.add(d, F.mul(M[0][2], minor(1, 2, 0, 1)));
}

Mat3 mat_mul(const FieldCtx& F, const Mat3& A, const Mat3& B) {
  Mat3 C{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Fel s{};
      for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(A[i][k], B[k][j]));
      C[i][j] = s;
    }
  return C;
}

std::array<Fel, 3> mat_vec(const FieldCtx& F, const Mat3& M,
                           const std::array<Fel, 3>& v) {
  std::array<Fel, 3> w{};
  for (int i = 0; i < 3; ++i) {
    Fel s{};
    for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(M[i][k], v[k]));
    w[i] = s;
  }
  return w;
}

Mat3 mat_transpose(const Mat3& M) {
  Mat3 T;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) T[i][j] = M[j][i];
  return T;
}

Mat3 mat_inverse(const FieldCtx& F, const Mat3& M) {
  Fel d = det3(F, M);
  if (F.is_zero(d)) throw Error("inverse of a singular matrix");
  Fel id = F.inv(d);
  auto minor = [&](int r1, int r2, int c1, int c2) {
    return F.sub(F.mul(M[r1][c1], M[r2][c2]), F.mul(M[r1][c2], M[r2][c1]));
  };
  Mat3 A;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r1 = (j + 1) % 3, r2 = (j + 2) % 3;
      int c1 = (i + 1) % 3, c2 = (i + 2) % 3;
      // Cofactor expansion arranged so no explicit sign is needed: the
      // cyclic choice of rows/columns absorbs (-1)^{i+j}.
      A[i][j] = F.mul(minor(r1, r2, c1, c2), id);
    }
  return A;
}

Mat3 mat_identity(const FieldCtx& F) {
  Mat3 I{};
  I[0][0] = I[1][1] = I[2][2] = F.one();
  return I;
}

TriPoly TriPoly::constant(const FieldCtx& F, Fel c) {
  TriPoly r(&F);
  r.add_term(Mono{0, 0, 0}, c);
  return r;
}

TriPoly TriPoly::monomial(const FieldCtx& F, Mono m, Fel c) {
  TriPoly r(&F);
  r.add_term(m, c);
  return r;
}

TriPoly TriPoly::variable(const FieldCtx& F, int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("variable index not in 0..2");
  Mono m;
  if (i == 0) m.a = 1;
  if (i == 1) m.b = 1;
  if (i == 2) m.c = 1;
  return monomial(F, m, F.one());
}

bool TriPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  std::uint32_t d = terms_.begin()->first.total();
  for (const auto& [m, c] : terms_)
    if (m.total() != d) return false;
  return true;
}

Fel TriPoly::coeff(Mono m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Fel{} : it->second;
}

std::pair<Mono, Fel> TriPoly::lead() const {
  if (terms_.empty()) throw Error("leading term of the zero polynomial");
  return *terms_.begin();
}

void TriPoly::add_term(Mono m, Fel c) {
  if (F_->is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = F_->add(it->second, c);
    if (F_->is_zero(it->second)) terms_.erase(it);
  }
  refresh_degree();
}

void TriPoly::refresh_degree() {
  degree_ = terms_.empty() ? -1 : int(terms_.begin()->first.total());
}

TriPoly TriPoly::operator+(const TriPoly& o) const {
  require_same_ctx(F_, o.F_);
  TriPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

TriPoly TriPoly::operator-(const TriPoly& o) const {
  require_same_ctx(F_, o.F_);
  TriPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, F_->neg(c));
  return r;
}

TriPoly TriPoly::operator*(const TriPoly& o) const {
  require_same_ctx(F_, o.F_);
  TriPoly r(F_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Mono m{std::uint16_t(m1.a + m2.a), std::uint16_t(m1.b + m2.b),
             std::uint16_t(m1.c + m2.c)};
      r.add_term(m, F_->mul(c1, c2));
    }
  return r;
}

TriPoly TriPoly::scalar_mul(Fel c) const {
  TriPoly r(F_);
  if (F_->is_zero(c)) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, F_->mul(v, c));
  r.refresh_degree();
  return r;
}

Fel TriPoly::evaluate(Fel x, Fel y, Fel z) const {
  Fel acc{};
  for (const auto& [m, c] : terms_) {
    Fel t = c;
    if (m.a) t = F_->mul(t, F_->pow(x, m.a));
    if (m.b) t = F_->mul(t, F_->pow(y, m.b));
    if (m.c) t = F_->mul(t, F_->pow(z, m.c));
    acc = F_->add(acc, t);
  }
  return acc;
}

TriPoly TriPoly::derivative(int i) const {
  if (i < 0 || i > 2) throw std::invalid_argument("variable index not in 0..2");
  TriPoly r(F_);
  for (const auto& [m, c] : terms_) {
    std::uint16_t e = i == 0 ? m.a : i == 1 ? m.b : m.c;
    if (e == 0) continue;
    Fel s = F_->from_residue(e % F_->p());
    if (F_->is_zero(s)) continue;
    Mono n = m;
    if (i == 0) n.a--;
    if (i == 1) n.b--;
    if (i == 2) n.c--;
    r.add_term(n, F_->mul(c, s));
  }
  return r;
}

TriPoly TriPoly::map_coeffs(const std::function<Fel(Fel)>& f) const {
  TriPoly r(F_);
  for (const auto& [m, c] : terms_) r.add_term(m, f(c));
  return r;
}

TriPoly exact_divide(const TriPoly& num, const TriPoly& den) {
  if (den.is_zero()) throw std::invalid_argument("division by zero polynomial");
  const FieldCtx& F = den.ctx();
  TriPoly r = num;
  TriPoly q(&F);
  auto [md, cd] = den.lead();
  Fel icd = F.inv(cd);
  while (!r.is_zero()) {
    auto [mn, cn] = r.lead();
    if (mn.a < md.a || mn.b < md.b || mn.c < md.c)
      throw NonDivisibleError("polynomial division leaves a remainder");
    Mono qm{std::uint16_t(mn.a - md.a), std::uint16_t(mn.b - md.b),
            std::uint16_t(mn.c - md.c)};
    Fel qc = F.mul(cn, icd);
    q.add_term(qm, qc);
    for (const auto& [m, c] : den.terms()) {
      Mono t{std::uint16_t(m.a + qm.a), std::uint16_t(m.b + qm.b),
             std::uint16_t(m.c + qm.c)};
      r.add_term(t, F.neg(F.mul(c, qc)));
    }
  }
  return q;
}

TriPoly substitute_linear(const TriPoly& f, const Mat3& M) {
  const FieldCtx& F = f.ctx();
  TriPoly out(&F);
  if (f.is_zero()) return out;
  // Process each homogeneous component through the dense kernel.
  std::map<std::uint32_t, Dense> comps;
  for (const auto& [m, c] : f.terms()) {
    std::uint32_t d = m.total();
    auto [it, inserted] = comps.try_emplace(d);
    if (inserted) it->second.assign(hsize(d), Fel{});
    it->second[hoff(d, m.a) + m.b] = c;
  }
  for (const auto& [d, dense] : comps) {
    Dense comp = compose3(F, dense, d, M);
    for (std::uint32_t a = 0; a <= d; ++a)
      for (std::uint32_t b = 0; a + b <= d; ++b) {
        Fel c = comp[hoff(d, a) + b];
        if (!F.is_zero(c))
          out.add_term(Mono{std::uint16_t(a), std::uint16_t(b),
                            std::uint16_t(d - a - b)},
                       c);
      }
  }
  return out;
}

bool BinForm::is_zero() const {
  for (Fel c : coeffs_)
    if (!F_->is_zero(c)) return false;
  return true;
}

std::uint32_t BinForm::val_t() const {
  for (std::uint32_t j = 0; j < coeffs_.size(); ++j)
    if (!F_->is_zero(coeffs_[j])) return j;
  throw Error("t-adic valuation of the zero form");
}

BinForm restrict_to_line(const TriPoly& f, const ProjPoint& A,
                         const ProjPoint& B) {
  if (f.is_zero() || !f.is_homogeneous())
    throw std::invalid_argument(
        "line restriction requires a nonzero homogeneous polynomial");
  if (A == B)
    throw std::invalid_argument("line restriction requires distinct points");
  const FieldCtx& F = f.ctx();
  std::uint32_t d = std::uint32_t(f.degree());
  Dense dense(hsize(d), Fel{});
  for (const auto& [m, c] : f.terms()) dense[hoff(d, m.a) + m.b] = c;
  std::vector<Fel> out = compose2(F, dense, d, A, B);
  BinForm g(F, d);
  for (std::uint32_t j = 0; j <= d; ++j) g.at(j) = out[j];
  return g;
}

UniPoly::UniPoly(const FieldCtx& F, std::vector<Fel> coeffs)
    : F_(&F), c_(std::move(coeffs)) {
  while (!c_.empty() && F_->is_zero(c_.back())) c_.pop_back();
}

Fel UniPoly::lc() const {
  if (c_.empty()) throw Error("leading coefficient of the zero polynomial");
  return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  require_same_ctx(F_, o.F_);
  std::vector<Fel> r(std::max(c_.size(), o.c_.size()), Fel{});
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F_->add(i < c_.size() ? c_[i] : Fel{},
                   i < o.c_.size() ? o.c_[i] : Fel{});
  return UniPoly(*F_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  require_same_ctx(F_, o.F_);
  std::vector<Fel> r(std::max(c_.size(), o.c_.size()), Fel{});
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F_->sub(i < c_.size() ? c_[i] : Fel{},
                   i < o.c_.size() ? o.c_[i] : Fel{});
  return UniPoly(*F_, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  require_same_ctx(F_, o.F_);
  if (c_.empty() || o.c_.empty()) return UniPoly(*F_);
  std::vector<Fel> r(c_.size() + o.c_.size() - 1, Fel{});
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (F_->is_zero(c_[i])) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] = F_->add(r[i + j], F_->mul(c_[i], o.c_[j]));
  }
  return UniPoly(*F_, std::move(r));
}

UniPoly UniPoly::scalar_mul(Fel s) const {
  if (F_->is_zero(s)) return UniPoly(*F_);
  std::vector<Fel> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F_->mul(c_[i], s);
  return UniPoly(*F_, std::move(r));
}

UniPoly UniPoly::monic() const {
  if (c_.empty()) return *this;
  return scalar_mul(F_->inv(c_.back()));
}

UniPoly UniPoly::derivative() const {
  std::vector<Fel> r;
  for (std::size_t i = 1; i < c_.size(); ++i) {
    Fel s = F_->from_residue(std::uint64_t(i % F_->p()));
    r.push_back(F_->mul(c_[i], s));
  }
  return UniPoly(*F_, std::move(r));
}

Fel UniPoly::evaluate(Fel x) const {
  Fel r{};
  for (std::size_t i = c_.size(); i-- > 0;) r = F_->add(F_->mul(r, x), c_[i]);
  return r;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  require_same_ctx(&a.ctx(), &b.ctx());
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  const FieldCtx& F = a.ctx();
  std::vector<Fel> r = a.coeffs();
  std::vector<Fel> q;
  if (r.size() >= b.coeffs().size())
    q.assign(r.size() - b.coeffs().size() + 1, Fel{});
  Fel ilc = F.inv(b.lc());
  const auto& bc = b.coeffs();
  while (r.size() >= bc.size() && !r.empty()) {
    Fel c = F.mul(r.back(), ilc);
    std::size_t k = r.size() - bc.size();
    q[k] = c;
    for (std::size_t j = 0; j < bc.size(); ++j)
      r[k + j] = F.sub(r[k + j], F.mul(c, bc[j]));
    while (!r.empty() && F.is_zero(r.back())) r.pop_back();
  }
  return {UniPoly(F, std::move(q)), UniPoly(F, std::move(r))};
}

UniPoly exact_divide(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero())
    throw NonDivisibleError("polynomial division leaves a remainder");
  return q;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  require_same_ctx(&a.ctx(), &b.ctx());
  if (a.is_zero() && b.is_zero())
    throw std::invalid_argument("gcd of two zero polynomials");
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

XgcdResult xgcd(const UniPoly& a, const UniPoly& b) {
  require_same_ctx(&a.ctx(), &b.ctx());
  if (a.is_zero() && b.is_zero())
    throw std::invalid_argument("xgcd of two zero polynomials");
  const FieldCtx& F = a.ctx();
  UniPoly r0 = a, r1 = b;
  UniPoly u0 = UniPoly(F, {F.one()}), u1 = UniPoly(F);
  UniPoly v0 = UniPoly(F), v1 = UniPoly(F, {F.one()});
  while (!r1.is_zero()) {
    auto [q, r2] = divmod(r0, r1);
    UniPoly u2 = u0 - q * u1;
    UniPoly v2 = v0 - q * v1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  Fel s = F.inv(r0.lc());
  return {r0.scalar_mul(s), u0.scalar_mul(s), v0.scalar_mul(s)};
}

Fel resultant(const UniPoly& a, const UniPoly& b) {
  require_same_ctx(&a.ctx(), &b.ctx());
  if (a.is_zero() || b.is_zero())
    throw std::invalid_argument("resultant of a zero polynomial");
  const FieldCtx& F = a.ctx();
  UniPoly f = a, g = b;
  Fel res = F.one();
  bool negate = false;
  // Invariant: Res(a, b) = (-1)^negate * res * Res(f, g).
  while (g.degree() > 0) {
    if (f.degree() < g.degree()) {
      if ((f.degree() & 1) && (g.degree() & 1)) negate = !negate;
      std::swap(f, g);
      continue;
    }
    UniPoly r = divmod(f, g).second;
    if (r.is_zero()) return Fel{};  // shared factor
    if ((f.degree() & 1) && (g.degree() & 1)) negate = !negate;
    res = F.mul(res, F.pow(g.lc(), std::uint64_t(f.degree() - r.degree())));
    f = std::move(g);
    g = std::move(r);
  }
  res = F.mul(res, F.pow(g.lc(), std::uint64_t(f.degree())));
  return negate ? F.neg(res) : res;
}

UniPoly interpolate(const FieldCtx& F,
                    const std::vector<std::pair<Fel, Fel>>& points) {
  // Newton's divided differences, then expansion to the monomial basis.
  std::vector<Fel> xs;
  std::vector<Fel> nc;
  for (const auto& [x, y] : points) {
    Fel t = y;
    for (std::size_t j = 0; j < nc.size(); ++j) {
      Fel dx = F.sub(x, xs[j]);
      if (F.is_zero(dx))
        throw std::invalid_argument("interpolate: repeated x value");
      t = F.mul(F.sub(t, nc[j]), F.inv(dx));
    }
    nc.push_back(t);
    xs.push_back(x);
  }
  UniPoly poly(F);
  UniPoly basis(F, {F.one()});
  for (std::size_t k = 0; k < nc.size(); ++k) {
    poly = poly + basis.scalar_mul(nc[k]);
    basis = basis * UniPoly(F, {F.neg(xs[k]), F.one()});
  }
  return poly;
}

UniPoly pth_root(const UniPoly& f) {
  const FieldCtx& F = f.ctx();
  std::uint64_t p = F.p();
  std::vector<Fel> r;
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (F.is_zero(c[i])) continue;
    if (i % p != 0)
      throw Error("p-th root of a polynomial with an exponent not divisible "
                  "by the characteristic");
    std::size_t j = i / p;
    if (r.size() <= j) r.resize(j + 1, Fel{});
    r[j] = F.pth_root(c[i]);
  }
  return UniPoly(F, std::move(r));
}

namespace {

std::vector<SqfPart> sqf_rec(const UniPoly& f) {
  const FieldCtx& F = f.ctx();
  std::vector<SqfPart> parts;
  if (f.degree() <= 0) return parts;
  UniPoly fp = f.derivative();
  if (fp.is_zero()) {
    parts = sqf_rec(pth_root(f));
    for (auto& part : parts) part.multiplicity *= std::uint32_t(F.p());
    return parts;
  }
  UniPoly c = gcd(f, fp);
  UniPoly w = exact_divide(f, c).monic();
  std::uint32_t i = 1;
  std::uint32_t limit = std::uint32_t(f.degree()) + 2;
  while (w.degree() > 0) {
    if (i > limit) throw Error("squarefree decomposition failed to converge");
    UniPoly y = gcd(w, c);
    UniPoly fac = exact_divide(w, y).monic();
    if (fac.degree() > 0) parts.push_back({i, fac});
    w = std::move(y);
    c = exact_divide(c, w).monic();
    ++i;
  }
  if (c.degree() > 0) {
    // What remains carries exactly the factors whose multiplicity is
    // divisible by the characteristic, at full multiplicity.
    std::vector<SqfPart> rest = sqf_rec(c);
    parts.insert(parts.end(), rest.begin(), rest.end());
  }
  std::sort(parts.begin(), parts.end(),
            [](const SqfPart& a, const SqfPart& b) {
              return a.multiplicity < b.multiplicity;
            });
  return parts;
}

}  // namespace

SqfDecomp squarefree_decompose(const UniPoly& g) {
  if (g.is_zero())
    throw std::invalid_argument("squarefree decomposition of zero");
  SqfDecomp out{g.lc(), {}};
  out.parts = sqf_rec(g.monic());
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> multiplicity_profile(
    const BinForm& g) {
  if (g.is_zero())
    throw std::invalid_argument("multiplicity profile of the zero form");
  const FieldCtx& F = g.ctx();
  std::uint32_t d = g.degree();
  std::uint32_t a = g.val_t();
  std::uint32_t j_max = 0;
  for (std::uint32_t j = 0; j <= d; ++j)
    if (!F.is_zero(g.at(j))) j_max = j;
  std::uint32_t b_end = d - j_max;

  std::map<std::uint32_t, std::uint32_t> cnt;
  if (a > 0) cnt[a] += 1;
  if (b_end > 0) cnt[b_end] += 1;

  std::vector<Fel> mid;
  for (std::uint32_t j = a; j <= j_max; ++j) mid.push_back(g.at(j));
  UniPoly u(F, std::move(mid));
  if (u.degree() > 0) {
    SqfDecomp dec = squarefree_decompose(u);
    for (const auto& part : dec.parts)
      cnt[part.multiplicity] += std::uint32_t(part.factor.degree());
  }
  return {cnt.begin(), cnt.end()};
}

}  // namespace dgz
