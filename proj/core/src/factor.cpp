#include "loomalg/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "loomalg/error.hpp"

namespace loomalg {

namespace {

using u64 = std::uint64_t;
using ZPoly = std::vector<Integer>;
using FpPoly = std::vector<u64>;

// ---------------------------------------------------------------- Z[x]

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  ztrim(out);
  return out;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  ztrim(out);
  return out;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  ztrim(out);
  return out;
}

ZPoly zmod(const ZPoly& a, const Integer& m) {
  ZPoly out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r(out[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  }
  ztrim(out);
  return out;
}

ZPoly zsymmetric(const ZPoly& a, const Integer& m) {
  ZPoly out = zmod(a, m);
  const Integer half = m / 2;
  for (auto& c : out)
    if (c > half) c -= m;
  ztrim(out);
  return out;
}

// Division by a monic polynomial modulo m.
void zdivmod_monic(const ZPoly& a, const ZPoly& h, const Integer& m, ZPoly& q, ZPoly& r) {
  r = zmod(a, m);
  const size_t dh = h.size() - 1;
  q.assign(r.size() > dh ? r.size() - dh : 0, Integer(0));
  while (r.size() > dh) {
    const size_t shift = r.size() - 1 - dh;
    const Integer c = r.back();
    q[shift] = c;
    for (size_t i = 0; i <= dh; ++i) r[shift + i] -= c * h[i];
    r = zmod(r, m);
  }
  ztrim(q);
}

Integer zcontent(const ZPoly& a) {
  Integer g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly zprimitive(const ZPoly& a) {
  ZPoly out = a;
  ztrim(out);
  if (out.empty()) return out;
  Integer g = zcontent(out);
  if (out.back() < 0) g = -g;
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

std::optional<ZPoly> zexact_div(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) return std::nullopt;
  ZPoly r = a;
  ztrim(r);
  if (r.size() < b.size()) {
    if (r.empty()) return ZPoly{};
    return std::nullopt;
  }
  if (!mpz_divisible_p(r.back().get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
  if (b[0] != 0 && !mpz_divisible_p(r[0].get_mpz_t(), b[0].get_mpz_t())) return std::nullopt;
  ZPoly q(r.size() - b.size() + 1, Integer(0));
  while (r.size() >= b.size()) {
    if (!mpz_divisible_p(r.back().get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    const size_t shift = r.size() - b.size();
    Integer c;
    mpz_divexact(c.get_mpz_t(), r.back().get_mpz_t(), b.back().get_mpz_t());
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    ztrim(r);
  }
  if (!r.empty()) return std::nullopt;
  return q;
}

// ---------------------------------------------------------------- F_p[x]

u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void ftrim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly from_z(const ZPoly& a, u64 p) {
  FpPoly out(a.size());
  Integer r;
  for (size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r_ui(r.get_mpz_t(), a[i].get_mpz_t(), p);
    out[i] = r.get_ui();
  }
  ftrim(out);
  return out;
}

ZPoly to_z(const FpPoly& a) {
  ZPoly out;
  for (auto c : a) out.emplace_back(static_cast<unsigned long>(c));
  return out;
}

FpPoly fmul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  ftrim(out);
  return out;
}

FpPoly fsub(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + p - b[i]) % p;
  ftrim(out);
  return out;
}

void fdivmod(const FpPoly& a, const FpPoly& b, u64 p, FpPoly& q, FpPoly& r) {
  r = a;
  ftrim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  const u64 inv = invmod(b.back(), p);
  while (r.size() >= b.size()) {
    const size_t shift = r.size() - b.size();
    const u64 c = mulmod(r.back(), inv, p);
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] = (r[shift + i] + p - mulmod(c, b[i], p)) % p;
    ftrim(r);
  }
  ftrim(q);
}

FpPoly frem(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly q, r;
  fdivmod(a, b, p, q, r);
  return r;
}

FpPoly fmonic(const FpPoly& a, u64 p) {
  FpPoly out = a;
  ftrim(out);
  if (out.empty()) return out;
  const u64 inv = invmod(out.back(), p);
  for (auto& c : out) c = mulmod(c, inv, p);
  return out;
}

FpPoly fgcd(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly x = a, y = b;
  ftrim(x);
  ftrim(y);
  while (!y.empty()) {
    FpPoly r = frem(x, y, p);
    x = std::move(y);
    y = std::move(r);
  }
  return fmonic(x, p);
}

FpPoly fderiv(const FpPoly& a, u64 p) {
  FpPoly out;
  for (size_t i = 1; i < a.size(); ++i) out.push_back(mulmod(a[i], i % p, p));
  ftrim(out);
  return out;
}

FpPoly fpowmod(const FpPoly& base, const Integer& e, const FpPoly& mod, u64 p) {
  FpPoly result{1};
  FpPoly b = frem(base, mod, p);
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    result = frem(fmul(result, result, p), mod, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = frem(fmul(result, b, p), mod, p);
  }
  return result;
}

// s*a + t*b = 1 with deg s < deg b, deg t < deg a (a, b coprime).
void fext_gcd(const FpPoly& a, const FpPoly& b, u64 p, FpPoly& s, FpPoly& t) {
  FpPoly r0 = a, r1 = b, s0{1}, s1{};
  while (!r1.empty()) {
    FpPoly q, r;
    fdivmod(r0, r1, p, q, r);
    FpPoly s2 = fsub(s0, fmul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw Error("internal", "Hensel factors not coprime modulo p");
  const u64 inv = invmod(r0[0], p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  s = frem(s0, b, p);
  FpPoly q, rr;
  fdivmod(fsub(FpPoly{1}, fmul(s, a, p), p), b, p, q, rr);
  t = q;
}

std::vector<std::pair<FpPoly, size_t>> distinct_degree(const FpPoly& f, u64 p) {
  std::vector<std::pair<FpPoly, size_t>> out;
  FpPoly rest = f;
  const FpPoly x{0, 1};
  FpPoly h = x;
  size_t i = 1;
  while (rest.size() >= 2 * i + 1) {
    h = fpowmod(h, Integer(static_cast<unsigned long>(p)), rest, p);
    FpPoly g = fgcd(fsub(h, x, p), rest, p);
    if (g.size() > 1) {
      out.emplace_back(g, i);
      FpPoly q, r;
      fdivmod(rest, g, p, q, r);
      rest = q;
      h = frem(h, rest, p);
    }
    ++i;
  }
  if (rest.size() > 1) out.emplace_back(fmonic(rest, p), rest.size() - 1);
  return out;
}

void equal_degree(const FpPoly& f, size_t d, u64 p, std::mt19937_64& rng,
                  std::vector<FpPoly>& out) {
  const size_t n = f.size() - 1;
  if (n == d) {
    out.push_back(f);
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, d);
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> dist(0, p - 1);
  for (;;) {
    FpPoly a(n);
    for (auto& c : a) c = dist(rng);
    ftrim(a);
    if (a.size() < 2) continue;
    FpPoly b = fsub(fpowmod(a, e, f, p), FpPoly{1}, p);
    FpPoly g = fgcd(b, f, p);
    if (g.size() > 1 && g.size() < f.size()) {
      FpPoly q, r;
      fdivmod(f, g, p, q, r);
      equal_degree(g, d, p, rng, out);
      equal_degree(fmonic(q, p), d, p, rng, out);
      return;
    }
  }
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Hensel step (quadratic): from f = g h, s g + t h = 1 mod m to mod m^2.
void hensel_step(const Integer& m, const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t) {
  const Integer m2 = m * m;
  ZPoly e = zmod(zsub(f, zmul(g, h)), m2);
  ZPoly q, r;
  zdivmod_monic(zmul(s, e), h, m2, q, r);
  ZPoly g2 = zmod(zadd(g, zadd(zmul(t, e), zmul(q, g))), m2);
  ZPoly h2 = zmod(zadd(h, r), m2);
  ZPoly b = zmod(zsub(zadd(zmul(s, g2), zmul(t, h2)), ZPoly{Integer(1)}), m2);
  ZPoly c, d;
  zdivmod_monic(zmul(s, b), h2, m2, c, d);
  s = zmod(zsub(s, d), m2);
  t = zmod(zsub(t, zadd(zmul(t, b), zmul(c, g2))), m2);
  g = std::move(g2);
  h = std::move(h2);
}

Integer inv_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw Error("internal", "leading coefficient not invertible modulo prime power");
  return r;
}

// f = lc(f) * prod(facs) mod p with monic facs; returns monic lifts mod p^(2^steps).
std::vector<ZPoly> multi_lift(const ZPoly& f, const std::vector<FpPoly>& facs, u64 p,
                              unsigned steps) {
  Integer modulus(static_cast<unsigned long>(p));
  for (unsigned i = 0; i < steps; ++i) modulus *= modulus;
  if (facs.size() == 1) {
    ZPoly out = zmod(f, modulus);
    const Integer inv = inv_mod(out.back(), modulus);
    for (auto& c : out) c = c * inv;
    return {zmod(out, modulus)};
  }
  const size_t k = facs.size() / 2;
  FpPoly g0{from_z(ZPoly{f.back()}, p).at(0)};
  for (size_t i = 0; i < k; ++i) g0 = fmul(g0, facs[i], p);
  FpPoly h0{1};
  for (size_t i = k; i < facs.size(); ++i) h0 = fmul(h0, facs[i], p);
  FpPoly s0, t0;
  fext_gcd(g0, h0, p, s0, t0);
  ZPoly g = to_z(g0), h = to_z(h0), s = to_z(s0), t = to_z(t0);
  Integer m(static_cast<unsigned long>(p));
  for (unsigned i = 0; i < steps; ++i) {
    hensel_step(m, f, g, h, s, t);
    m *= m;
  }
  std::vector<FpPoly> left(facs.begin(), facs.begin() + static_cast<long>(k));
  std::vector<FpPoly> right(facs.begin() + static_cast<long>(k), facs.end());
  auto a = multi_lift(g, left, p, steps);
  auto b = multi_lift(h, right, p, steps);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Factors a primitive squarefree integer polynomial with f(0) != 0, deg >= 2.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f) {
  const size_t n = f.size() - 1;
  // Choose among a few good primes the one with the fewest modular factors.
  u64 best_p = 0;
  size_t best_count = 0;
  int good = 0;
  for (u64 p = 11; good < 4 && p < 100000; p += 2) {
    if (!is_prime(p)) continue;
    FpPoly fp = from_z(f, p);
    if (fp.size() != f.size()) continue;
    if (fgcd(fp, fderiv(fp, p), p).size() != 1) continue;
    ++good;
    size_t count = 0;
    for (const auto& [g, d] : distinct_degree(fmonic(fp, p), p)) count += (g.size() - 1) / d;
    if (best_p == 0 || count < best_count) {
      best_p = p;
      best_count = count;
    }
    if (count == 1) break;
  }
  if (best_p == 0) throw Error("internal", "no suitable prime for factorisation");
  if (best_count == 1) return {f};
  const u64 p = best_p;
  std::mt19937_64 rng(0x10a3a1ULL);
  std::vector<FpPoly> modular;
  for (const auto& [g, d] : distinct_degree(fmonic(from_z(f, p), p), p))
    equal_degree(g, d, p, rng, modular);
  std::sort(modular.begin(), modular.end());

  // Mignotte-type bound on factor coefficients, times |lc| for the lc trick.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  Integer bound = root * abs(f.back());
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
  bound = 2 * bound + 1;
  unsigned steps = 0;
  Integer modulus(static_cast<unsigned long>(p));
  while (modulus <= bound) {
    modulus *= modulus;
    ++steps;
  }
  std::vector<ZPoly> lifted = multi_lift(f, modular, p, steps);

  std::vector<ZPoly> result;
  ZPoly rest = f;
  size_t subset = 1;
  while (2 * subset <= lifted.size()) {
    bool found = false;
    std::vector<size_t> idx(subset);
    for (size_t i = 0; i < subset; ++i) idx[i] = i;
    for (;;) {
      ZPoly cand{rest.back()};
      for (auto i : idx) cand = zmod(zmul(cand, lifted[i]), modulus);
      cand = zprimitive(zsymmetric(cand, modulus));
      if (auto q = zexact_div(rest, cand)) {
        result.push_back(cand);
        rest = *q;
        std::vector<ZPoly> keep;
        for (size_t i = 0, j = 0; i < lifted.size(); ++i) {
          if (j < idx.size() && idx[j] == i) {
            ++j;
            continue;
          }
          keep.push_back(lifted[i]);
        }
        lifted = std::move(keep);
        found = true;
        break;
      }
      // next combination
      size_t pos = subset;
      while (pos > 0 && idx[pos - 1] == lifted.size() - subset + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (size_t j = pos; j < subset; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++subset;
  }
  if (rest.size() > 1) result.push_back(zprimitive(rest));
  return result;
}

ZPoly primitive_integer(const QPoly& f) {
  Integer den = 1;
  for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly out;
  for (const auto& c : f) {
    Rational scaled = c * den;
    out.push_back(scaled.get_num());
  }
  return zprimitive(out);
}

QPoly monic_rational(const ZPoly& f) {
  QPoly out;
  for (const auto& c : f) out.emplace_back(c);
  return poly::monic(out);
}

template <class P>
bool poly_less(const P& a, const P& b);

template <>
bool poly_less(const QPoly& a, const QPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

template <>
bool poly_less(const KPoly& a, const KPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;) {
    if (repr_less(a[i], b[i])) return true;
    if (repr_less(b[i], a[i])) return false;
  }
  return false;
}

}  // namespace

std::vector<std::pair<QPoly, int>> factor_rational(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  for (const auto& [g, mult] : poly::squarefree(f)) {
    ZPoly z = primitive_integer(g);
    if (z[0] == 0) {
      out.emplace_back(QPoly{Rational(0), Rational(1)}, mult);
      z.erase(z.begin());
    }
    if (z.size() <= 1) continue;
    if (z.size() == 2) {
      out.emplace_back(monic_rational(z), mult);
      continue;
    }
    for (const auto& h : factor_squarefree_z(z)) out.emplace_back(monic_rational(h), mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (poly_less(a.first, b.first)) return true;
    if (poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

QPoly norm_polynomial(const KPoly& f, unsigned order) {
  const unsigned phi = euler_phi(order);
  KPoly g = f;
  poly::trim(g);
  if (g.empty()) return {};
  const size_t deg = static_cast<size_t>(poly::degree(g)) * phi;
  std::vector<Rational> xs, ys;
  for (size_t k = 0; k <= deg; ++k) {
    const CycloNumber alpha = poly::eval(g, CycloNumber(static_cast<long>(k))).lift(order);
    Matrix mult(phi, phi);
    for (unsigned j = 0; j < phi; ++j) {
      const CycloNumber col = alpha * CycloNumber::zeta(order, j);
      for (unsigned i = 0; i < phi; ++i) mult(i, j) = CycloNumber(col.coeffs()[i]);
    }
    xs.emplace_back(static_cast<long>(k));
    ys.push_back(determinant(mult).to_rational());
  }
  // Newton divided differences.
  std::vector<Rational> dd = ys;
  for (size_t level = 1; level <= deg; ++level)
    for (size_t i = deg; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  QPoly result{dd[deg]};
  for (size_t i = deg; i-- > 0;) {
    result = poly::mul(result, QPoly{-xs[i], Rational(1)});
    result = poly::add(result, QPoly{dd[i]});
  }
  poly::trim(result);
  return result;
}

std::vector<std::pair<KPoly, int>> factor_cyclotomic(const KPoly& f, unsigned order) {
  std::vector<std::pair<KPoly, int>> out;
  if (euler_phi(order) == 1) {
    if (!poly::is_rational(f)) throw Error("field", "coefficients outside Q(zeta_N)");
    for (const auto& [g, m] : factor_rational(poly::to_q(f))) out.emplace_back(poly::to_k(g), m);
    return out;
  }
  const CycloNumber zeta = CycloNumber::zeta(order);
  for (const auto& [g, mult] : poly::squarefree(f)) {
    if (poly::degree(g) == 1) {
      out.emplace_back(g, mult);
      continue;
    }
    KPoly shifted;
    QPoly nrm;
    long s = 0;
    for (long attempt = 0;; ++attempt) {
      s = (attempt % 2 == 0) ? attempt / 2 : -(attempt + 1) / 2;
      shifted = poly::shift(g, zeta * CycloNumber(-s));
      nrm = norm_polynomial(shifted, order);
      if (poly::degree(poly::gcd(nrm, poly::derivative(nrm))) == 0) break;
      if (attempt > 64) throw Error("internal", "no squarefree norm found");
    }
    const auto rational_factors = factor_rational(nrm);
    if (rational_factors.size() == 1) {
      out.emplace_back(g, mult);
      continue;
    }
    for (const auto& [h, hm] : rational_factors) {
      KPoly common = poly::gcd(shifted, poly::to_k(h));
      if (poly::degree(common) < 1) continue;
      out.emplace_back(poly::monic(poly::shift(common, zeta * CycloNumber(s))), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (poly_less(a.first, b.first)) return true;
    if (poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

std::vector<CycloNumber> roots_in_field(const KPoly& f, unsigned order) {
  std::vector<CycloNumber> roots;
  for (const auto& [g, m] : factor_cyclotomic(f, order))
    if (poly::degree(g) == 1) roots.push_back((-g[0]).lift(order));
  return roots;
}

bool is_irreducible(const KPoly& f, unsigned order) {
  KPoly g = f;
  poly::trim(g);
  if (poly::degree(g) < 1) return false;
  auto fac = factor_cyclotomic(g, order);
  return fac.size() == 1 && fac[0].second == 1;
}

}  // namespace loomalg
