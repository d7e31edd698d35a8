#include "dgz/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace dgz {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t checked_pow(std::uint64_t b, std::uint32_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    r *= b;
    if (r > cap)
      throw std::invalid_argument(
          "field size guard exceeded (p^{mL} > 2^26)");
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense F_p[t] helpers used only during construction; coefficients are
// low-degree first and not normalized (trailing zeros allowed).
using Poly = std::vector<std::uint32_t>;

int poly_deg(const Poly& f) {
  for (int i = int(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

// Remainder of f modulo monic g.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  int dg = poly_deg(g);
  for (int k = poly_deg(f); k >= dg; k = poly_deg(f)) {
    std::uint32_t c = f[k];
    // f -= c * t^{k-dg} * g
    for (int j = 0; j <= dg; ++j) {
      std::uint64_t t = f[k - dg + j] + std::uint64_t(p - 1) * c % p * g[j];
      f[k - dg + j] = std::uint32_t(t % p);
    }
  }
  return f;
}

Poly digits_of(std::uint64_t n, std::uint32_t p, std::uint32_t len) {
  Poly out(len, 0);
  for (std::uint32_t i = 0; i < len && n; ++i) {
    out[i] = std::uint32_t(n % p);
    n /= p;
  }
  return out;
}

std::uint64_t pack(const Poly& c, std::uint32_t p, std::uint32_t len) {
  std::uint64_t v = 0;
  for (std::uint32_t i = len; i-- > 0;) v = v * p + (i < c.size() ? c[i] : 0);
  return v;
}

// True iff the monic candidate has no monic divisor of degree 1..deg/2.
bool is_irreducible(const Poly& cand, std::uint32_t p, std::uint32_t deg) {
  for (std::uint32_t dd = 1; dd <= deg / 2; ++dd) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < dd; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly div = digits_of(idx, p, dd);
      div.push_back(1);
      if (poly_deg(poly_mod(cand, div, p)) < 0) return false;
    }
  }
  return true;
}

}  // namespace

void FieldCtx::build(std::uint32_t p, std::uint32_t m, std::uint32_t L) {
  if (!is_prime(p)) throw std::invalid_argument("FieldCtx: p must be prime");
  if (m < 1 || L < 1) throw std::invalid_argument("FieldCtx: m, L >= 1");
  p_ = p;
  m_ = m;
  L_ = L;
  deg_ = m * L;
  q_ = 1;
  for (std::uint32_t i = 0; i < m; ++i) q_ *= p;
  size_ = checked_pow(p, deg_, std::uint64_t(1) << 26);
  n_ = size_ - 1;
  half_ = n_ / 2;  // log of -1 for odd p (p^{mL}-1 is even there)

  // Modulus: first irreducible in base-p integer order of the coefficient
  // tuple below the leading 1.
  for (std::uint64_t idx = 0;; ++idx) {
    if (idx >= size_) throw Error("FieldCtx: no irreducible modulus found");
    Poly cand = digits_of(idx, p, deg_);
    cand.push_back(1);
    if (is_irreducible(cand, p, deg_)) {
      modulus_ = cand;
      break;
    }
  }

  one_ = Fel{1};

  // Construction-time packed multiplication (tables do it afterwards).
  const Poly& mod = modulus_;
  auto mul_slow = [&](std::uint64_t av, std::uint64_t bv) -> std::uint64_t {
    Poly a = digits_of(av, p, deg_), b = digits_of(bv, p, deg_);
    Poly prod(2 * deg_, 0);
    for (std::uint32_t i = 0; i < deg_; ++i) {
      if (a[i] == 0) continue;
      for (std::uint32_t j = 0; j < deg_; ++j)
        prod[i + j] = std::uint32_t((prod[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    prod = poly_mod(std::move(prod), mod, p);
    return pack(prod, p, deg_);
  };
  auto pow_slow = [&](std::uint64_t av, std::uint64_t e) -> std::uint64_t {
    std::uint64_t r = 1, base = av;
    while (e) {
      if (e & 1) r = mul_slow(r, base);
      base = mul_slow(base, base);
      e >>= 1;
    }
    return r;
  };

  // Generator: first packed value of full multiplicative order.
  auto factors = prime_factors(n_);
  std::uint64_t gv = 0;
  for (std::uint64_t v = 1; v < size_; ++v) {
    if (pow_slow(v, n_) != 1) continue;
    bool full = true;
    for (std::uint64_t f : factors) {
      if (pow_slow(v, n_ / f) == 1) {
        full = false;
        break;
      }
    }
    if (full) {
      gv = v;
      break;
    }
  }
  if (gv == 0 && n_ == 0) gv = 1;
  if (gv == 0) throw Error("FieldCtx: no generator found");
  gen_ = Fel{std::uint32_t(gv)};

  // exp/log tables. For p = 2 the packed form is a bit vector, so the
  // multiply-by-generator step is a carry-less multiply plus reduction.
  exp_.assign(n_ ? n_ : 1, 0);
  log_.assign(size_, kSentinel);
  if (p == 2) {
    std::uint64_t mod_bits = 0;
    for (std::uint32_t i = 0; i <= deg_; ++i)
      if (mod[i]) mod_bits |= std::uint64_t(1) << i;
    std::uint64_t cur = 1;
    for (std::uint64_t i = 0; i < n_; ++i) {
      exp_[i] = std::uint32_t(cur);
      log_[cur] = std::uint32_t(i);
      std::uint64_t acc = 0, v = cur;
      for (std::uint32_t j = 0; j < deg_; ++j)
        if ((gv >> j) & 1) acc ^= v << j;
      for (int k = 2 * deg_ - 2; k >= int(deg_); --k)
        if ((acc >> k) & 1) acc ^= mod_bits << (k - deg_);
      cur = acc;
    }
    if (n_ > 0 && cur != 1) throw Error("FieldCtx: generator order check failed");
  } else {
    std::uint64_t cur = 1;
    for (std::uint64_t i = 0; i < n_; ++i) {
      exp_[i] = std::uint32_t(cur);
      log_[cur] = std::uint32_t(i);
      cur = mul_slow(cur, gv);
    }
    if (n_ > 0 && cur != 1) throw Error("FieldCtx: generator order check failed");
  }
  if (n_ == 0) {
    exp_[0] = 1;
    log_[1] = 0;
  }

  // Zech logarithms give table-based addition for odd p.
  if (p != 2) {
    zech_.assign(n_ ? n_ : 1, kSentinel);
    for (std::uint64_t z = 0; z < n_; ++z) {
      Poly w = digits_of(exp_[z], p, deg_);
      w[0] = (w[0] + 1) % p;
      std::uint64_t wv = pack(w, p, deg_);
      zech_[z] = wv == 0 ? kSentinel : log_[wv];
    }
  }

  // Exponent of the p-th root map.
  proot_exp_ = 1;
  if (n_ > 0) {
    proot_exp_ = 1;
    for (std::uint32_t i = 0; i + 1 < deg_; ++i) proot_exp_ = mulmod(proot_exp_, p, n_);
    if (deg_ == 1) proot_exp_ = 1;
  }
}

std::shared_ptr<const FieldCtx> FieldCtx::make(std::uint32_t p, std::uint32_t m,
                                               std::uint32_t L) {
  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->build(p, m, L);
  return ctx;
}

std::shared_ptr<const FieldCtx> FieldCtx::get(std::uint32_t p, std::uint32_t m,
                                              std::uint32_t L) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>,
                  std::shared_ptr<const FieldCtx>>
      cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_tuple(p, m, L);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto ctx = make(p, m, L);
  cache.emplace(key, ctx);
  return ctx;
}

void FieldCtx::check_k(std::uint32_t k) const {
  if (k < 1 || L_ % k != 0)
    throw std::invalid_argument("FieldCtx: extension degree k must divide L");
}

std::uint64_t FieldCtx::subfield_order(std::uint32_t k) const {
  check_k(k);
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < k; ++i) r *= q_;
  return r;
}

Fel FieldCtx::frobenius(Fel a, std::int64_t k) const noexcept {
  if (a.v == 0 || n_ == 0) return a;
  std::int64_t kk = k % std::int64_t(L_);
  if (kk < 0) kk += L_;
  std::uint64_t e = 1, base = q_ % n_;
  for (std::int64_t i = 0; i < kk; ++i) e = mulmod(e, base, n_);
  std::uint64_t idx = mulmod(log_[a.v], e, n_);
  return Fel{exp_[idx]};
}

bool FieldCtx::in_subfield(Fel a, std::uint32_t k) const {
  check_k(k);
  return frobenius(a, k) == a;
}

std::uint32_t FieldCtx::element_degree(Fel a) const {
  for (std::uint32_t k = 1; k < L_; ++k)
    if (L_ % k == 0 && in_subfield(a, k)) return k;
  return L_;
}

Fel FieldCtx::subfield_generator(std::uint32_t k) const {
  std::uint64_t sz = subfield_order(k);
  if (sz - 1 == 0 || n_ == 0) return one_;
  return Fel{exp_[n_ / (sz - 1)]};
}

std::vector<Fel> FieldCtx::enumerate_subfield(std::uint32_t k) const {
  std::uint64_t sz = subfield_order(k);
  std::vector<Fel> out;
  out.reserve(sz);
  out.push_back(zero());
  if (n_ == 0) return out;
  std::uint64_t step = n_ / (sz - 1);
  for (std::uint64_t i = 0; i + 1 < sz; ++i) out.push_back(Fel{exp_[i * step]});
  return out;
}

Fel FieldCtx::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() > deg_)
    throw std::invalid_argument("FieldCtx::from_coeffs: too many coefficients");
  std::uint64_t v = 0;
  for (std::uint32_t i = std::uint32_t(c.size()); i-- > 0;) {
    if (c[i] >= p_)
      throw std::invalid_argument("FieldCtx::from_coeffs: coefficient >= p");
    v = v * p_ + c[i];
  }
  return Fel{std::uint32_t(v)};
}

std::vector<std::uint32_t> FieldCtx::to_coeffs(Fel a) const {
  std::vector<std::uint32_t> out(deg_, 0);
  std::uint64_t v = a.v;
  for (std::uint32_t i = 0; i < deg_ && v; ++i) {
    out[i] = std::uint32_t(v % p_);
    v /= p_;
  }
  return out;
}

}  // namespace dgz
