// Exact arithmetic in one fixed working field F_{q^L}, q = p^m, with all
// subfield structure read off inside it. Conventions:
//   - an element is the coefficient vector (c_0, ..., c_{mL-1}) of its
//     canonical representative modulo the context modulus, packed as the
//     base-p integer sum c_i p^i; packed equality is element equality;
//   - the modulus is the monic irreducible of degree mL over F_p whose
//     coefficient tuple (c_{mL-1}, ..., c_0), read as a base-p integer, is
//     minimal, so a context is determined by (p, m, L) alone;
//   - the generator is the first element in packed order with full
//     multiplicative order, verified against the factorization of p^{mL}-1;
//   - F_{q^k} sits inside the working field for k | L as the fixed set of
//     the k-th q-power Frobenius.

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgz {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field element; see packing convention above. Value-type, context-free:
// all arithmetic goes through the owning FieldCtx.
struct Fel {
  std::uint32_t v = 0;
  friend constexpr bool operator==(Fel a, Fel b) noexcept { return a.v == b.v; }
  friend constexpr bool operator!=(Fel a, Fel b) noexcept { return a.v != b.v; }
  friend constexpr bool operator<(Fel a, Fel b) noexcept { return a.v < b.v; }
};

class FieldCtx {
 public:
  // Deterministic construction; throws std::invalid_argument for bad
  // parameters and dgz::Error when p^{mL} exceeds the 2^26 size guard.
  static std::shared_ptr<const FieldCtx> make(std::uint32_t p, std::uint32_t m,
                                              std::uint32_t L);
  // Process-wide cache keyed by (p, m, L); contexts are immutable and
  // safe to share across threads.
  static std::shared_ptr<const FieldCtx> get(std::uint32_t p, std::uint32_t m,
                                             std::uint32_t L);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t L() const noexcept { return L_; }
  std::uint64_t q() const noexcept { return q_; }
  std::uint32_t deg() const noexcept { return deg_; }    // mL
  std::uint64_t order() const noexcept { return size_; } // p^{mL}
  std::uint64_t units() const noexcept { return n_; }    // p^{mL} - 1
  std::uint64_t subfield_order(std::uint32_t k) const;   // q^k, requires k | L
  // Modulus coefficients (c_0, ..., c_{mL}), monic.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Fel zero() const noexcept { return {}; }
  Fel one() const noexcept { return one_; }
  Fel generator() const noexcept { return gen_; }
  bool is_zero(Fel a) const noexcept { return a.v == 0; }

  Fel add(Fel a, Fel b) const noexcept {
    if (p_ == 2) return Fel{a.v ^ b.v};
    if (a.v == 0) return b;
    if (b.v == 0) return a;
    std::uint64_t la = log_[a.v], lb = log_[b.v];
    std::uint64_t d = lb >= la ? lb - la : lb + n_ - la;
    std::uint32_t z = zech_[d];
    if (z == kSentinel) return Fel{0};
    std::uint64_t s = la + z;
    if (s >= n_) s -= n_;
    return Fel{exp_[s]};
  }

  Fel neg(Fel a) const noexcept {
    if (p_ == 2 || a.v == 0) return a;
    std::uint64_t s = log_[a.v] + half_;
    if (s >= n_) s -= n_;
    return Fel{exp_[s]};
  }

  Fel sub(Fel a, Fel b) const noexcept { return add(a, neg(b)); }

  Fel mul(Fel a, Fel b) const noexcept {
    if (a.v == 0 || b.v == 0) return Fel{0};
    std::uint64_t s = std::uint64_t(log_[a.v]) + log_[b.v];
    if (s >= n_) s -= n_;
    return Fel{exp_[s]};
  }

  Fel inv(Fel a) const {
    if (a.v == 0) throw Error("FieldCtx::inv: zero element");
    std::uint64_t l = log_[a.v];
    return Fel{exp_[l == 0 ? 0 : n_ - l]};
  }

  Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }

  // pow(0, 0) is defined as 1.
  Fel pow(Fel a, std::uint64_t e) const noexcept {
    if (a.v == 0) return e == 0 ? one_ : Fel{0};
    std::uint64_t idx = mulmod(log_[a.v], e % n_, n_);
    return Fel{exp_[idx]};
  }

  // a^{q^k}; k is reduced mod L (the q-Frobenius has order L here).
  Fel frobenius(Fel a, std::int64_t k) const noexcept;
  // Unique p-th root, a |-> a^{p^{mL-1}}.
  Fel pth_root(Fel a) const noexcept { return pow(a, proot_exp_); }

  // Membership in F_{q^k}; requires k >= 1 and k | L.
  bool in_subfield(Fel a, std::uint32_t k) const;
  // Smallest k dividing L with a in F_{q^k}.
  std::uint32_t element_degree(Fel a) const;
  // All q^k elements of F_{q^k}: zero first, then powers of the subfield
  // generator in exponent order. Requires k | L.
  std::vector<Fel> enumerate_subfield(std::uint32_t k) const;
  // generator^{(q^L-1)/(q^k-1)}, a generator of F_{q^k}^*.
  Fel subfield_generator(std::uint32_t k) const;

  Fel from_residue(std::uint64_t r) const noexcept {
    return Fel{std::uint32_t(r % p_)};
  }
  // Coefficients low-degree first; shorter vectors are zero-padded.
  Fel from_coeffs(const std::vector<std::uint32_t>& c) const;
  std::vector<std::uint32_t> to_coeffs(Fel a) const;

  std::uint64_t log(Fel a) const {
    if (a.v == 0) throw Error("FieldCtx::log: zero element");
    return log_[a.v];
  }
  Fel exp(std::uint64_t i) const noexcept { return Fel{exp_[i % n_]}; }

 private:
  FieldCtx() = default;
  void build(std::uint32_t p, std::uint32_t m, std::uint32_t L);
  void check_k(std::uint32_t k) const;

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b,
                              std::uint64_t n) noexcept {
    return std::uint64_t((__uint128_t(a) * b) % n);
  }

  static constexpr std::uint32_t kSentinel = 0xFFFFFFFFu;

  std::uint32_t p_ = 0, m_ = 0, L_ = 0, deg_ = 0;
  std::uint64_t q_ = 0, size_ = 0, n_ = 0, half_ = 0, proot_exp_ = 0;
  Fel one_{}, gen_{};
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;   // size n_, exp_[i] = packed g^i
  std::vector<std::uint32_t> log_;   // size p^{mL}, log_[0] = sentinel
  std::vector<std::uint32_t> zech_;  // p > 2 only: zech_[z] = log(1 + g^z)
};

}  // namespace dgz
