#include "dgz/plane.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dgz/rng.hpp"

namespace dgz {

namespace {

std::array<Fel, 3> normalize(const FieldCtx& F, std::array<Fel, 3> c) {
  int piv = -1;
  for (int i = 0; i < 3; ++i) {
    if (!F.is_zero(c[i])) {
      piv = i;
      break;
    }
  }
  if (piv < 0) throw std::invalid_argument("projective triple is zero");
  Fel s = F.inv(c[piv]);
  for (int i = 0; i < 3; ++i) c[i] = F.mul(c[i], s);
  return c;
}

std::uint32_t def_degree_of(const FieldCtx& F, const std::array<Fel, 3>& c) {
  for (std::uint32_t k = 1; k <= F.L(); ++k) {
    if (F.L() % k != 0) continue;
    bool ok = true;
    for (const Fel& x : c)
      if (!F.in_subfield(x, k)) {
        ok = false;
        break;
      }
    if (ok) return k;
  }
  return F.L();
}

std::array<Fel, 3> cross(const FieldCtx& F, const std::array<Fel, 3>& a,
                         const std::array<Fel, 3>& b) {
  return {F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
          F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
          F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))};
}

}  // namespace

ProjPoint make_point(const FieldCtx& F, Fel x, Fel y, Fel z) {
  ProjPoint P;
  P.c = normalize(F, {x, y, z});
  P.def_degree = def_degree_of(F, P.c);
  return P;
}

ProjLine make_line(const FieldCtx& F, Fel u0, Fel u1, Fel u2) {
  ProjLine l;
  l.u = normalize(F, {u0, u1, u2});
  l.def_degree = def_degree_of(F, l.u);
  return l;
}

bool incident(const FieldCtx& F, const ProjPoint& P, const ProjLine& l) {
  Fel s = F.add(F.add(F.mul(P.c[0], l.u[0]), F.mul(P.c[1], l.u[1])),
                F.mul(P.c[2], l.u[2]));
  return F.is_zero(s);
}

ProjLine line_through(const FieldCtx& F, const ProjPoint& A, const ProjPoint& B) {
  if (A == B) throw std::invalid_argument("line_through: points coincide");
  auto u = cross(F, A.c, B.c);
  return make_line(F, u[0], u[1], u[2]);
}

ProjPoint meet(const FieldCtx& F, const ProjLine& a, const ProjLine& b) {
  if (a == b) throw std::invalid_argument("meet: lines coincide");
  auto c = cross(F, a.u, b.u);
  return make_point(F, c[0], c[1], c[2]);
}

std::vector<ProjPoint> enumerate_points(const FieldCtx& F, std::uint32_t k) {
  auto els = F.enumerate_subfield(k);
  std::vector<ProjPoint> out;
  out.reserve(els.size() * els.size() + els.size() + 1);
  for (const Fel& a : els)
    for (const Fel& b : els) out.push_back(make_point(F, F.one(), a, b));
  for (const Fel& c : els) out.push_back(make_point(F, F.zero(), F.one(), c));
  out.push_back(make_point(F, F.zero(), F.zero(), F.one()));
  return out;
}

std::vector<ProjLine> pencil_through(const FieldCtx& F, const ProjPoint& P,
                                     std::uint32_t k) {
  if (P.def_degree == 0 || F.L() % P.def_degree != 0 || k % P.def_degree != 0)
    throw std::invalid_argument("pencil_through: P not defined over F_{q^k}");
  // Dual solutions of u . P = 0: with pivot the first nonzero coordinate
  // of P, the two vectors P_piv e_j - P_j e_piv (j != piv) are a basis.
  int piv = 0;
  while (F.is_zero(P.c[piv])) ++piv;
  std::array<std::array<Fel, 3>, 2> basis{};
  int slot = 0;
  for (int j = 0; j < 3; ++j) {
    if (j == piv) continue;
    std::array<Fel, 3> u{F.zero(), F.zero(), F.zero()};
    u[j] = P.c[piv];
    u[piv] = F.neg(P.c[j]);
    basis[slot++] = u;
  }
  auto els = F.enumerate_subfield(k);
  std::vector<ProjLine> out;
  out.reserve(els.size() + 1);
  for (const Fel& t : els) {
    std::array<Fel, 3> u;
    for (int i = 0; i < 3; ++i) u[i] = F.add(basis[0][i], F.mul(t, basis[1][i]));
    out.push_back(make_line(F, u[0], u[1], u[2]));
  }
  out.push_back(make_line(F, basis[1][0], basis[1][1], basis[1][2]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != els.size() + 1)
    throw Error("pencil_through: pencil has the wrong size");
  return out;
}

std::array<ProjPoint, 2> line_basis(const FieldCtx& F, const ProjLine& l) {
  int piv = 0;
  while (F.is_zero(l.u[piv])) ++piv;
  std::array<ProjPoint, 2> out;
  int slot = 0;
  for (int j = 0; j < 3; ++j) {
    if (j == piv) continue;
    std::array<Fel, 3> v{F.zero(), F.zero(), F.zero()};
    v[j] = l.u[piv];
    v[piv] = F.neg(l.u[j]);
    out[slot++] = make_point(F, v[0], v[1], v[2]);
  }
  return out;
}

ProjPoint second_point_on(const FieldCtx& F, const ProjLine& l,
                          const ProjPoint& P) {
  auto basis = line_basis(F, l);
  if (!(basis[0] == P)) return basis[0];
  return basis[1];
}

ProjPoint random_point(const FieldCtx& F, std::uint32_t k, SeededRng& rng) {
  auto els = F.enumerate_subfield(k);
  // A uniform nonzero coordinate triple normalizes to a uniform point:
  // every projective class has exactly q^k - 1 representatives.
  for (;;) {
    Fel x = els[rng.bounded(els.size())];
    Fel y = els[rng.bounded(els.size())];
    Fel z = els[rng.bounded(els.size())];
    if (F.is_zero(x) && F.is_zero(y) && F.is_zero(z)) continue;
    return make_point(F, x, y, z);
  }
}

std::vector<ProjPoint> sample_points_of_exact_degree(const FieldCtx& F,
                                                     std::uint32_t k,
                                                     std::size_t count,
                                                     SeededRng& rng) {
  std::set<ProjPoint> seen;
  std::vector<ProjPoint> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 10'000'000)
      throw Error("sample_points_of_exact_degree: rejection sampling stalled");
    ProjPoint P = random_point(F, k, rng);
    if (P.def_degree != k) continue;
    if (!seen.insert(P).second) continue;
    out.push_back(P);
  }
  return out;
}

}  // namespace dgz
