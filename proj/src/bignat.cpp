#include "lacunary/bignat.hpp"

#include <cmath>

#include "lacunary/error.hpp"

namespace lacunary {

BigNat::BigNat(std::uint64_t v) {
  mpz_import(v_.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
}

BigNat BigNat::from_mpz(mpz_class v) {
  if (sgn(v) < 0) throw InvalidArgument("bigfrac", "BigNat cannot hold a negative value");
  return BigNat(std::move(v));
}

BigNat BigNat::parse(std::string_view decimal) {
  if (decimal.empty()) throw InvalidArgument("bigfrac", "empty integer literal");
  for (char c : decimal) {
    if (c < '0' || c > '9') {
      throw InvalidArgument("bigfrac", "not a nonnegative decimal integer: '" + std::string(decimal) + "'");
    }
  }
  return BigNat(mpz_class(std::string(decimal), 10));
}

BigNat BigNat::pow(std::uint64_t base, std::uint64_t exponent) {
  mpz_class r;
  mpz_class b = BigNat(base).v_;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exponent));
  return BigNat(std::move(r));
}

std::size_t BigNat::bit_length() const {
  if (sgn(v_) == 0) return 0;
  return mpz_sizeinbase(v_.get_mpz_t(), 2);
}

bool BigNat::fits_u64() const { return bit_length() <= 64; }

std::uint64_t BigNat::to_u64() const {
  if (!fits_u64()) throw InvalidArgument("bigfrac", "integer does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v_.get_mpz_t());
  return out;
}

double BigNat::to_double() const { return v_.get_d(); }

double BigNat::log() const {
  if (is_zero()) return -HUGE_VAL;
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v_.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

std::string BigNat::to_string() const { return v_.get_str(10); }

BigNat& BigNat::operator+=(const BigNat& o) {
  v_ += o.v_;
  return *this;
}

BigNat& BigNat::operator*=(const BigNat& o) {
  v_ *= o.v_;
  return *this;
}

BigNat& BigNat::operator<<=(std::size_t bits) {
  mpz_mul_2exp(v_.get_mpz_t(), v_.get_mpz_t(), bits);
  return *this;
}

BigNat operator-(const BigNat& a, const BigNat& b) {
  if (a < b) throw InvalidArgument("bigfrac", "BigNat subtraction underflow");
  return BigNat(mpz_class(a.v_ - b.v_));
}

BigNat operator/(const BigNat& a, const BigNat& b) {
  if (b.is_zero()) throw InvalidArgument("bigfrac", "division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return BigNat(std::move(q));
}

BigNat operator%(const BigNat& a, const BigNat& b) {
  if (b.is_zero()) throw InvalidArgument("bigfrac", "division by zero");
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return BigNat(std::move(r));
}

BigNat gcd(const BigNat& a, const BigNat& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.value().get_mpz_t(), b.value().get_mpz_t());
  return BigNat::from_mpz(std::move(g));
}

Rational ratio(const BigNat& a, const BigNat& b) {
  if (b.is_zero()) throw InvalidArgument("bigfrac", "ratio with zero denominator");
  Rational r(a.value(), b.value());
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str(10);
  return r.get_num().get_str(10) + "/" + r.get_den().get_str(10);
}

std::size_t hash_mpz(const mpz_class& v) noexcept {
  const mpz_srcptr p = v.get_mpz_t();
  const int size = p->_mp_size;
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(size));
  const int n = size < 0 ? -size : size;
  for (int i = 0; i < n; ++i) {
    std::uint64_t x = static_cast<std::uint64_t>(p->_mp_d[i]) + h;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    h = x ^ (x >> 31);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace lacunary
