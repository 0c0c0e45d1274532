#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace loomalg {

using Integer = mpz_class;
using Rational = mpq_class;

namespace detail {
struct CycloContext;
}

/// Exact element of the cyclotomic field Q(zeta_N).
///
/// Stored in the power basis 1, z, ..., z^(phi(N)-1) with z = zeta_N, always
/// reduced modulo the N-th cyclotomic polynomial, so equality is
/// coefficientwise. Values of order 1 are plain rationals; they combine with
/// numbers of any order. Mixing two different orders above 1 is an error,
/// callers lift first.
class CycloNumber {
 public:
  CycloNumber();
  CycloNumber(long value);  // NOLINT(google-explicit-constructor)
  CycloNumber(int value) : CycloNumber(static_cast<long>(value)) {}  // NOLINT
  CycloNumber(const Rational& value);  // NOLINT(google-explicit-constructor)

  static CycloNumber rational(unsigned order, const Rational& value);
  /// Reduces an arbitrary-length coefficient list modulo Phi_N.
  static CycloNumber from_coeffs(unsigned order, std::vector<Rational> coeffs);
  /// zeta_N^k for any integer k.
  static CycloNumber zeta(unsigned order, long k = 1);

  unsigned order() const;
  unsigned degree() const;  // phi(order)
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational to_rational() const;  // throws unless is_rational()

  CycloNumber lift(unsigned new_order) const;
  CycloNumber inverse() const;
  CycloNumber pow(long exponent) const;

  CycloNumber& operator+=(const CycloNumber& other);
  CycloNumber& operator-=(const CycloNumber& other);
  CycloNumber& operator*=(const CycloNumber& other);
  CycloNumber& operator/=(const CycloNumber& other);
  CycloNumber operator-() const;

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
  friend CycloNumber operator/(CycloNumber a, const CycloNumber& b) { return a /= b; }
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

  /// "c0 + c1*z + ..." with rationals written p/q; unit coefficients omitted.
  std::string to_string() const;
  /// Inverse of to_string for a given order; also accepts explicit "1*z".
  static CycloNumber parse(std::string_view text, unsigned order);

  /// Total order on representations (for deterministic containers only).
  friend bool repr_less(const CycloNumber& a, const CycloNumber& b);

 private:
  CycloNumber(const detail::CycloContext* ctx, std::vector<Rational> coeffs);
  void align_with(const CycloNumber& other);

  const detail::CycloContext* ctx_;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycloNumber& x);

/// zeta_N^(N/m); throws Error("root-order") if m does not divide N.
CycloNumber primitive_root(unsigned m, unsigned order);

/// Exact multiplicative order of x if it is a root of unity of order dividing
/// bound, else 0.
unsigned root_of_unity_order(const CycloNumber& x, unsigned bound);

unsigned euler_phi(unsigned n);
/// Integer coefficients of Phi_n, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(unsigned n);

long floor_mod(long a, long m);
long igcd(long a, long b);
long ilcm(long a, long b);

}  // namespace loomalg
