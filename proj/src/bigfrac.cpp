#include "lacunary/bigfrac.hpp"

#include <cmath>
#include <vector>

#include "lacunary/error.hpp"

namespace lacunary {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

mpz_class pow2(std::size_t bits) {
  mpz_class r;
  mpz_setbit(r.get_mpz_t(), bits);
  return r;
}

}  // namespace

FixedPointReal::FixedPointReal() : mantissa_(0), bits_(64) {}

FixedPointReal::FixedPointReal(mpz_class mantissa, std::size_t bits)
    : mantissa_(std::move(mantissa)), bits_(bits) {
  if (bits_ == 0) throw InvalidArgument("bigfrac", "fixed-point resolution must be positive");
  if (sgn(mantissa_) < 0 || (sgn(mantissa_) > 0 && mpz_sizeinbase(mantissa_.get_mpz_t(), 2) > bits_)) {
    throw InvalidArgument("bigfrac", "mantissa out of range [0, 2^bits)");
  }
}

FixedPointReal FixedPointReal::zero(std::size_t bits) { return FixedPointReal(mpz_class(0), bits); }

FixedPointReal FixedPointReal::from_ratio(const BigNat& p, const BigNat& q, std::size_t bits) {
  if (q.is_zero() || !(p < q)) throw InvalidArgument("bigfrac", "from_ratio requires 0 <= p < q");
  mpz_class num = p.value();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
  mpz_class m;
  mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), q.value().get_mpz_t());
  return FixedPointReal(std::move(m), bits);
}

FixedPointReal FixedPointReal::from_double(double v, std::size_t bits) {
  if (!(v >= 0.0 && v < 1.0)) throw InvalidArgument("bigfrac", "from_double requires a value in [0,1)");
  if (v == 0.0) return zero(bits);
  int e = 0;
  const double frac = std::frexp(v, &e);  // v = frac * 2^e, frac in [0.5, 1)
  const auto m53 = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  mpz_class m = BigNat(m53).value();
  const long shift = static_cast<long>(bits) + e - 53;
  if (shift >= 0) {
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  return FixedPointReal(std::move(m), bits);
}

FixedPointReal FixedPointReal::with_bits(std::size_t bits) const {
  mpz_class m = mantissa_;
  if (bits >= bits_) {
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), bits - bits_);
  } else {
    mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), bits_ - bits);
  }
  return FixedPointReal(std::move(m), bits);
}

Rational FixedPointReal::to_rational() const {
  Rational r(mantissa_, pow2(bits_));
  r.canonicalize();
  return r;
}

FixedPointReal frac_mul_nat(const FixedPointReal& x, const BigNat& n) {
  mpz_class m;
  mpz_mul(m.get_mpz_t(), x.mantissa().get_mpz_t(), n.value().get_mpz_t());
  mpz_fdiv_r_2exp(m.get_mpz_t(), m.get_mpz_t(), x.bits());
  return FixedPointReal(std::move(m), x.bits());
}

double scaled_to_double(mpz_srcptr m, std::size_t bits) {
  if (mpz_sgn(m) == 0) return 0.0;
  const std::size_t len = mpz_sizeinbase(m, 2);
  std::uint64_t top = 0;
  long exponent = 0;
  if (len <= 64) {
    top = mpz_getlimbn(m, 0);
    exponent = -static_cast<long>(bits);
  } else {
    // Top 64 bits, with bit 0 acting as a sticky bit for everything below.
    const std::size_t shift = len - 64;
    const std::size_t limb_bits = GMP_NUMB_BITS;
    const std::size_t li = shift / limb_bits;
    const std::size_t off = shift % limb_bits;
    std::uint64_t lo = mpz_getlimbn(m, static_cast<mp_size_t>(li));
    std::uint64_t hi = mpz_getlimbn(m, static_cast<mp_size_t>(li + 1));
    top = off == 0 ? lo : ((lo >> off) | (hi << (limb_bits - off)));
    const bool sticky = mpz_scan1(m, 0) < shift;
    if (sticky) top |= 1u;
    exponent = static_cast<long>(shift) - static_cast<long>(bits);
  }
  // u64 -> double conversion rounds to nearest-even; the sticky bit makes it
  // exact with respect to the full mantissa.
  const double d = static_cast<double>(top);
  return std::ldexp(d, static_cast<int>(exponent));
}

double to_double(const FixedPointReal& x) { return scaled_to_double(x.mantissa().get_mpz_t(), x.bits()); }

std::size_t required_bits(const BigNat& n_max) { return n_max.bit_length() + 64; }

std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> c, std::array<std::uint64_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c[0], hi0, lo0);
    mulhilo(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  return c;
}

CounterStream::CounterStream(std::uint64_t seed, RngStream stream, std::uint64_t index)
    : key_{seed, static_cast<std::uint64_t>(stream)}, index_(index) {}

std::uint64_t CounterStream::next() {
  if (used_ == 4) {
    buffer_ = philox4x64({block_, index_, 0, 0}, key_);
    ++block_;
    used_ = 0;
  }
  return buffer_[used_++];
}

std::uint64_t CounterStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("bigfrac", "uniform_below requires a positive bound");
  if (bound == 1) return 0;
  const int width = 64 - __builtin_clzll(bound - 1);
  const std::uint64_t mask = width == 64 ? ~0ull : ((1ull << width) - 1);
  for (;;) {
    const std::uint64_t v = next() & mask;
    if (v < bound) return v;
  }
}

BigNat CounterStream::uniform_below(const BigNat& bound) {
  if (bound.is_zero()) throw InvalidArgument("bigfrac", "uniform_below requires a positive bound");
  if (bound.fits_u64()) return BigNat(uniform_below(bound.to_u64()));
  const mpz_class limit = bound.value() - 1;
  const std::size_t width = mpz_sizeinbase(limit.get_mpz_t(), 2);
  const std::size_t words = (width + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  for (;;) {
    for (auto& w : buf) w = next();
    mpz_class v;
    mpz_import(v.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0, buf.data());
    mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), width);
    if (v < bound.value()) return BigNat::from_mpz(std::move(v));
  }
}

double CounterStream::uniform01() { return std::ldexp(static_cast<double>(next() >> 11), -53); }

std::uint64_t counter_word(std::uint64_t seed, RngStream stream, std::uint64_t index, std::uint64_t word) {
  const auto block = philox4x64({word / 4, index, 0, 0}, {seed, static_cast<std::uint64_t>(stream)});
  return block[word % 4];
}

FixedPointReal sample_uniform(std::uint64_t seed, std::uint64_t index, std::size_t bits) {
  if (bits < 64) throw InvalidArgument("bigfrac", "sample_uniform requires at least 64 bits");
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  CounterStream stream(seed, RngStream::kUniformSample, index);
  for (auto& w : buf) w = stream.next();
  mpz_class m;
  mpz_import(m.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0, buf.data());
  const std::size_t excess = words * 64 - bits;
  if (excess > 0) mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), excess);
  return FixedPointReal(std::move(m), bits);
}

double DilationKernel::frac_mul_to_double(const FixedPointReal& x, const BigNat& n) {
  mpz_mul(scratch_.get_mpz_t(), x.mantissa().get_mpz_t(), n.value().get_mpz_t());
  mpz_fdiv_r_2exp(scratch_.get_mpz_t(), scratch_.get_mpz_t(), x.bits());
  return scaled_to_double(scratch_.get_mpz_t(), x.bits());
}

}  // namespace lacunary
