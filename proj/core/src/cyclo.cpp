#include "loomalg/cyclo.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

#include "loomalg/error.hpp"

namespace loomalg {

namespace detail {

struct CycloContext {
  unsigned order = 1;
  unsigned phi = 1;
  std::vector<long> cyclo;  // Phi_N, monic, length phi + 1
};

namespace {

std::mutex& context_mutex() {
  static std::mutex m;
  return m;
}

std::map<unsigned, std::vector<long>>& cyclo_cache() {
  static std::map<unsigned, std::vector<long>> cache;
  return cache;
}

// Exact division of integer polynomials with monic divisor.
std::vector<long> divide_monic(std::vector<long> num, const std::vector<long>& den) {
  const size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (size_t k = num.size(); k-- > dn;) {
    const long c = num[k];
    q[k - dn] = c;
    if (c == 0) continue;
    for (size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  return q;
}

const std::vector<long>& cyclotomic_locked(unsigned n) {
  auto& cache = cyclo_cache();
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<long> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_monic(poly, cyclotomic_locked(d));
  }
  return cache.emplace(n, std::move(poly)).first->second;
}

}  // namespace

const CycloContext* context_for(unsigned order) {
  if (order == 0) throw Error("field", "cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(context_mutex());
  static std::map<unsigned, std::unique_ptr<CycloContext>> contexts;
  auto& slot = contexts[order];
  if (!slot) {
    slot = std::make_unique<CycloContext>();
    slot->order = order;
    slot->cyclo = cyclotomic_locked(order);
    slot->phi = static_cast<unsigned>(slot->cyclo.size() - 1);
  }
  return slot.get();
}

}  // namespace detail

using detail::context_for;

long floor_mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long igcd(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long ilcm(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return (a / igcd(a, b)) * (b < 0 ? -b : b);
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<long>& cyclotomic_polynomial(unsigned n) {
  return context_for(n)->cyclo;
}

namespace {

void reduce_in_place(const detail::CycloContext* ctx, std::vector<Rational>& c) {
  const unsigned phi = ctx->phi;
  for (size_t k = c.size(); k-- > phi;) {
    if (c[k] == 0) continue;
    const Rational lead = c[k];
    for (unsigned i = 0; i < phi; ++i) {
      const long a = ctx->cyclo[i];
      if (a != 0) c[k - phi + i] -= lead * a;
    }
    c[k] = 0;
  }
  c.resize(phi);
}

// Polynomial helpers over Q used by the inverse computation.
using QVec = std::vector<Rational>;

void trim(QVec& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void divmod(const QVec& a, const QVec& b, QVec& q, QVec& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational lead = b.back();
  while (r.size() >= b.size()) {
    const size_t shift = r.size() - b.size();
    Rational c = r.back() / lead;
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r.pop_back();
    trim(r);
  }
}

QVec mul(const QVec& a, const QVec& b) {
  if (a.empty() || b.empty()) return {};
  QVec out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

QVec sub(const QVec& a, const QVec& b) {
  QVec out(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

}  // namespace

CycloNumber::CycloNumber() : ctx_(context_for(1)), coeffs_(1, Rational(0)) {}

CycloNumber::CycloNumber(long value) : ctx_(context_for(1)), coeffs_(1, Rational(value)) {}

CycloNumber::CycloNumber(const Rational& value) : ctx_(context_for(1)), coeffs_(1, value) {}

CycloNumber::CycloNumber(const detail::CycloContext* ctx, std::vector<Rational> coeffs)
    : ctx_(ctx), coeffs_(std::move(coeffs)) {}

CycloNumber CycloNumber::rational(unsigned order, const Rational& value) {
  const auto* ctx = context_for(order);
  std::vector<Rational> c(ctx->phi, Rational(0));
  c[0] = value;
  return CycloNumber(ctx, std::move(c));
}

CycloNumber CycloNumber::from_coeffs(unsigned order, std::vector<Rational> coeffs) {
  const auto* ctx = context_for(order);
  if (coeffs.size() < ctx->phi) coeffs.resize(ctx->phi, Rational(0));
  reduce_in_place(ctx, coeffs);
  return CycloNumber(ctx, std::move(coeffs));
}

CycloNumber CycloNumber::zeta(unsigned order, long k) {
  const long e = floor_mod(k, static_cast<long>(order));
  std::vector<Rational> c(static_cast<size_t>(e) + 1, Rational(0));
  c[static_cast<size_t>(e)] = 1;
  return from_coeffs(order, std::move(c));
}

unsigned CycloNumber::order() const { return ctx_->order; }
unsigned CycloNumber::degree() const { return ctx_->phi; }

bool CycloNumber::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloNumber::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool CycloNumber::is_one() const { return is_rational() && coeffs_[0] == 1; }

Rational CycloNumber::to_rational() const {
  if (!is_rational()) throw Error("field", "value " + to_string() + " is not rational");
  return coeffs_[0];
}

void CycloNumber::align_with(const CycloNumber& other) {
  if (ctx_ == other.ctx_) return;
  if (ctx_->order == 1) {
    Rational r = coeffs_[0];
    *this = rational(other.ctx_->order, r);
    return;
  }
  if (other.ctx_->order == 1) return;
  throw Error("field", "cyclotomic order mismatch: " + std::to_string(ctx_->order) + " vs " +
                           std::to_string(other.ctx_->order));
}

CycloNumber CycloNumber::lift(unsigned new_order) const {
  const unsigned n = ctx_->order;
  if (new_order == 0 || new_order % n != 0)
    throw Error("field", "cannot lift order " + std::to_string(n) + " to " +
                             std::to_string(new_order));
  if (new_order == n) return *this;
  const size_t step = new_order / n;
  std::vector<Rational> c(step * (coeffs_.size() - 1) + 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i * step] = coeffs_[i];
  return from_coeffs(new_order, std::move(c));
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& other) {
  align_with(other);
  if (ctx_ == other.ctx_) {
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  } else {
    coeffs_[0] += other.coeffs_[0];
  }
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& other) {
  align_with(other);
  if (ctx_ == other.ctx_) {
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  } else {
    coeffs_[0] -= other.coeffs_[0];
  }
  return *this;
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
  if (a.ctx_->order == 1) {
    CycloNumber out = b;
    const Rational& s = a.coeffs_[0];
    for (auto& c : out.coeffs_) c *= s;
    return out;
  }
  if (b.ctx_->order == 1) {
    CycloNumber out = a;
    const Rational& s = b.coeffs_[0];
    for (auto& c : out.coeffs_) c *= s;
    return out;
  }
  if (a.ctx_ != b.ctx_)
    throw Error("field", "cyclotomic order mismatch: " + std::to_string(a.order()) + " vs " +
                             std::to_string(b.order()));
  const size_t n = a.coeffs_.size();
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (b.coeffs_[j] == 0) continue;
      prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  reduce_in_place(a.ctx_, prod);
  return CycloNumber(a.ctx_, std::move(prod));
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& other) {
  *this = *this * other;
  return *this;
}

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw Error("division-by-zero", "division by zero in cyclotomic field");
  if (is_rational()) {
    CycloNumber out = *this;
    out.coeffs_[0] = 1 / coeffs_[0];
    return out;
  }
  // Extended Euclid: s*a + t*Phi = g with g a nonzero constant.
  QVec a = coeffs_;
  trim(a);
  QVec m(ctx_->cyclo.begin(), ctx_->cyclo.end());
  QVec r0 = m, r1 = a, s0, s1{Rational(1)};
  while (r1.size() > 1) {
    QVec q, r;
    divmod(r0, r1, q, r);
    QVec s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant because Phi is irreducible and a != 0 mod Phi.
  const Rational g = r1.at(0);
  for (auto& c : s1) c /= g;
  return from_coeffs(ctx_->order, std::move(s1));
}

CycloNumber& CycloNumber::operator/=(const CycloNumber& other) {
  *this = *this * other.inverse();
  return *this;
}

CycloNumber CycloNumber::pow(long exponent) const {
  CycloNumber base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                 : static_cast<unsigned long>(exponent);
  CycloNumber result = rational(ctx_->order, 1);
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  if (a.ctx_ == b.ctx_) return a.coeffs_ == b.coeffs_;
  if (a.ctx_->order == 1) return b.is_rational() && b.coeffs_[0] == a.coeffs_[0];
  if (b.ctx_->order == 1) return a.is_rational() && a.coeffs_[0] == b.coeffs_[0];
  throw Error("field", "cyclotomic order mismatch in comparison");
}

bool repr_less(const CycloNumber& a, const CycloNumber& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    const int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string CycloNumber::to_string() const {
  std::string out;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string mono;
    if (i == 1) mono = "z";
    if (i > 1) mono = "z^" + std::to_string(i);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out.empty() ? "0" : out;
}

CycloNumber CycloNumber::parse(std::string_view text, unsigned order) {
  std::vector<Rational> c;
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) {
    throw Error("parse", "bad field literal '" + std::string(text) + "': " + why);
  };
  auto read_uint = [&]() -> std::string {
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::string(text.substr(start, pos - start));
  };
  skip();
  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    skip();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Rational coeff(1);
    bool has_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::string num = read_uint();
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        num += "/" + read_uint();
      }
      coeff = Rational(num);
      coeff.canonicalize();
      has_coeff = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
      } else {
        if (c.empty()) c.resize(1, Rational(0));
        c[0] += sign * coeff;
        skip();
        continue;
      }
    }
    if (pos < text.size() && text[pos] == 'z') {
      ++pos;
      size_t e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        e = std::stoul(read_uint());
      }
      if (c.size() <= e) c.resize(e + 1, Rational(0));
      c[e] += sign * coeff;
    } else if (!has_coeff) {
      fail("expected coefficient or z");
    }
    skip();
  }
  if (c.empty()) fail("empty literal");
  return from_coeffs(order, std::move(c));
}

std::ostream& operator<<(std::ostream& os, const CycloNumber& x) { return os << x.to_string(); }

CycloNumber primitive_root(unsigned m, unsigned order) {
  if (m == 0 || order % m != 0)
    throw Error("root-order", "root order unavailable in field: zeta_" + std::to_string(m) +
                                  " is not in Q(zeta_" + std::to_string(order) + ")");
  return CycloNumber::zeta(order, static_cast<long>(order / m));
}

unsigned root_of_unity_order(const CycloNumber& x, unsigned bound) {
  if (x.is_zero()) return 0;
  CycloNumber p = x;
  for (unsigned k = 1; k <= bound; ++k) {
    if (p.is_one()) return k;
    p *= x;
  }
  return 0;
}

}  // namespace loomalg
