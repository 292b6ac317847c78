#include "lacunary/normality.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

#include "lacunary/error.hpp"

namespace lacunary {

namespace {

constexpr const char* kModule = "normality";
constexpr std::uint64_t kCheckpointEvery = std::uint64_t{1} << 20;

void check_base(unsigned base) {
  if (base < 2 || base > 256) throw InvalidArgument(kModule, "base must lie in 2..256");
}

void expand(std::uint64_t v, unsigned base, std::vector<std::uint8_t>& out) {
  out.clear();
  do {
    out.push_back(static_cast<std::uint8_t>(v % base));
    v /= base;
  } while (v);
  std::reverse(out.begin(), out.end());
}

// Concatenated base-b expansions of an increasing integer source.
class ConcatStream : public DigitStream {
 public:
  explicit ConcatStream(unsigned base) : base_(base) { check_base(base); }

  unsigned base() const override { return base_; }
  std::uint64_t position() const override { return pos_; }

  std::optional<unsigned> next() override {
    if (!started_) start();
    if (offset_ == digits_.size()) {
      value_ = after(value_);
      expand(value_, base_, digits_);
      offset_ = 0;
    }
    if (pos_ % kCheckpointEvery == 0 && pos_ / kCheckpointEvery == checkpoints_.size()) {
      checkpoints_.push_back({value_, offset_});
    }
    ++pos_;
    return digits_[offset_++];
  }

  void seek(std::uint64_t pos) override {
    if (!started_) start();
    if (checkpoints_.empty()) checkpoints_.push_back({value_, offset_});
    const std::size_t idx = std::min<std::uint64_t>(pos / kCheckpointEvery, checkpoints_.size() - 1);
    value_ = checkpoints_[idx].value;
    offset_ = checkpoints_[idx].offset;
    expand(value_, base_, digits_);
    pos_ = idx * kCheckpointEvery;
    while (pos_ < pos) next();
  }

 protected:
  virtual std::uint64_t first() = 0;
  virtual std::uint64_t after(std::uint64_t v) = 0;

 private:
  void start() {
    started_ = true;
    value_ = first();
    expand(value_, base_, digits_);
    offset_ = 0;
    pos_ = 0;
  }

  struct Checkpoint {
    std::uint64_t value;
    std::size_t offset;
  };
  unsigned base_;
  bool started_ = false;
  std::uint64_t value_ = 0;
  std::vector<std::uint8_t> digits_;
  std::size_t offset_ = 0;
  std::uint64_t pos_ = 0;
  std::vector<Checkpoint> checkpoints_;
};

class ChampernowneStream final : public ConcatStream {
 public:
  using ConcatStream::ConcatStream;

 protected:
  std::uint64_t first() override { return 1; }
  std::uint64_t after(std::uint64_t v) override { return v + 1; }
};

// Primes via a segmented sieve that restarts wherever it is asked to.
class PrimeCursor {
 public:
  std::uint64_t after(std::uint64_t v) {
    for (;;) {
      if (v + 1 >= lo_ && v + 1 < hi_) {
        auto it = std::upper_bound(segment_.begin(), segment_.end(), v);
        if (it != segment_.end()) return *it;
        sieve(hi_);
      } else {
        sieve(v + 1);
      }
    }
  }

 private:
  static constexpr std::uint64_t kSegment = 1 << 16;

  void ensure_base(std::uint64_t limit) {
    if (base_limit_ >= limit) return;
    base_limit_ = std::max<std::uint64_t>(limit, 2 * base_limit_);
    std::vector<char> composite(base_limit_ + 1, 0);
    base_.clear();
    for (std::uint64_t i = 2; i <= base_limit_; ++i) {
      if (composite[i]) continue;
      base_.push_back(i);
      for (std::uint64_t j = i * i; j <= base_limit_; j += i) composite[j] = 1;
    }
  }

  void sieve(std::uint64_t lo) {
    lo_ = std::max<std::uint64_t>(lo, 2);
    hi_ = lo_ + kSegment;
    ensure_base(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi_))) + 1);
    std::vector<char> composite(kSegment, 0);
    for (std::uint64_t p : base_) {
      if (p * p >= hi_) break;
      std::uint64_t start = std::max(p * p, (lo_ + p - 1) / p * p);
      for (std::uint64_t j = start; j < hi_; j += p) composite[j - lo_] = 1;
    }
    segment_.clear();
    for (std::uint64_t i = 0; i < kSegment; ++i) {
      if (!composite[i]) segment_.push_back(lo_ + i);
    }
  }

  std::uint64_t lo_ = 0, hi_ = 0;
  std::vector<std::uint64_t> segment_;
  std::vector<std::uint64_t> base_;
  std::uint64_t base_limit_ = 0;
};

class CopelandErdosStream final : public ConcatStream {
 public:
  using ConcatStream::ConcatStream;

 protected:
  std::uint64_t first() override { return 2; }
  std::uint64_t after(std::uint64_t v) override { return primes_.after(v); }

 private:
  PrimeCursor primes_;
};

class VectorStream final : public DigitStream {
 public:
  VectorStream(unsigned base, std::vector<std::uint8_t> digits, bool periodic)
      : base_(base), digits_(std::move(digits)), periodic_(periodic) {
    check_base(base);
    if (periodic_ && digits_.empty()) throw InvalidArgument(kModule, "period must be nonempty");
    for (auto d : digits_) {
      if (d >= base_) throw InvalidArgument(kModule, "digit out of range for base");
    }
  }
  unsigned base() const override { return base_; }
  std::uint64_t position() const override { return pos_; }
  std::optional<unsigned> next() override {
    if (periodic_) return digits_[pos_++ % digits_.size()];
    if (pos_ >= digits_.size()) return std::nullopt;
    return digits_[pos_++];
  }
  void seek(std::uint64_t pos) override {
    if (!periodic_ && pos > digits_.size()) throw StreamExhausted(kModule, "seek past the end of a finite stream");
    pos_ = pos;
  }

 private:
  unsigned base_;
  std::vector<std::uint8_t> digits_;
  bool periodic_;
  std::uint64_t pos_ = 0;
};

}  // namespace

std::unique_ptr<DigitStream> champernowne_stream(unsigned base) { return std::make_unique<ChampernowneStream>(base); }
std::unique_ptr<DigitStream> copeland_erdos_stream(unsigned base) { return std::make_unique<CopelandErdosStream>(base); }
std::unique_ptr<DigitStream> periodic_stream(unsigned base, std::vector<std::uint8_t> period) {
  return std::make_unique<VectorStream>(base, std::move(period), true);
}
std::unique_ptr<DigitStream> finite_stream(unsigned base, std::vector<std::uint8_t> digits) {
  return std::make_unique<VectorStream>(base, std::move(digits), false);
}

std::vector<std::uint8_t> take(DigitStream& s, std::size_t n) {
  std::vector<std::uint8_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = s.next();
    if (!d) throw StreamExhausted(kModule, "digit stream ended after " + std::to_string(i) + " digits");
    out.push_back(static_cast<std::uint8_t>(*d));
  }
  return out;
}

std::vector<std::uint8_t> champernowne_digits(unsigned base, std::size_t n) {
  auto s = champernowne_stream(base);
  return take(*s, n);
}

std::vector<std::uint8_t> copeland_erdos_digits(unsigned base, std::size_t n) {
  auto s = copeland_erdos_stream(base);
  return take(*s, n);
}

std::string digits_to_string(const std::vector<std::uint8_t>& digits) {
  static constexpr char kChars[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  out.reserve(digits.size());
  for (auto d : digits) {
    if (d >= 36) throw InvalidArgument(kModule, "digit too large for text form");
    out.push_back(kChars[d]);
  }
  return out;
}

BlockStats block_stats(const std::vector<std::uint8_t>& digits, unsigned base, std::size_t length) {
  check_base(base);
  if (length == 0) throw InvalidArgument(kModule, "block length must be positive");
  if (digits.size() < length) throw InvalidArgument(kModule, "prefix shorter than the block length");
  const double blocks = std::pow(static_cast<double>(base), static_cast<double>(length));
  if (blocks > static_cast<double>(1 << 24)) throw CapacityExceeded(kModule, "b^length exceeds 2^24 blocks");
  const auto nblocks = static_cast<std::uint64_t>(blocks);
  BlockStats st;
  st.base = base;
  st.length = length;
  st.counts.assign(nblocks, 0);
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= base) throw InvalidArgument(kModule, "digit out of range for base");
    code = (code * base + digits[i]) % nblocks;
    if (i + 1 >= length) ++st.counts[code];
  }
  st.windows = digits.size() - length + 1;
  return st;
}

double block_deviation(const BlockStats& stats) {
  const double expected = 1.0 / static_cast<double>(stats.counts.size());
  const double w = static_cast<double>(stats.windows);
  double worst = 0.0;
  for (auto c : stats.counts) worst = std::max(worst, std::fabs(static_cast<double>(c) / w - expected));
  return worst;
}

double block_deviation(const std::vector<std::uint8_t>& digits, unsigned base, std::size_t length) {
  return block_deviation(block_stats(digits, base, length));
}

std::vector<FixedPointReal> shift_orbit_points(DigitStream& s, std::size_t n, std::size_t bits) {
  if (bits == 0) throw InvalidArgument(kModule, "bits per point must be positive");
  const unsigned b = s.base();
  const auto depth = static_cast<std::size_t>(std::ceil(static_cast<double>(bits) / std::log2(static_cast<double>(b))));
  s.restart();
  const auto digits = take(s, n + depth);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), b, depth);
  mpz_class window = 0;
  for (std::size_t i = 0; i < depth; ++i) window = window * b + digits[i];
  std::vector<FixedPointReal> out;
  out.reserve(n);
  mpz_class tmp;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      // drop d_k, append d_{k+depth}
      window = window * b + digits[k - 1 + depth];
      mpz_fdiv_r(window.get_mpz_t(), window.get_mpz_t(), scale.get_mpz_t());
    }
    tmp = window;
    mpz_mul_2exp(tmp.get_mpz_t(), tmp.get_mpz_t(), bits);
    mpz_fdiv_q(tmp.get_mpz_t(), tmp.get_mpz_t(), scale.get_mpz_t());
    out.emplace_back(tmp, bits);
  }
  return out;
}

PointSet shift_orbit_pointset(DigitStream& s, std::size_t n, std::size_t bits) {
  const auto pts = shift_orbit_points(s, n, bits);
  PointSet p;
  p.points.reserve(n);
  for (const auto& x : pts) p.points.push_back(std::min(to_double(x), std::nextafter(1.0, 0.0)));
  return p;
}

ScaledReal golden_ratio(std::size_t bits) {
  // floor(phi 2^B) = floor((2^B + isqrt(5 * 4^B)) / 2)
  mpz_class five = 5;
  mpz_mul_2exp(five.get_mpz_t(), five.get_mpz_t(), 2 * bits);
  mpz_class m;
  mpz_sqrt(m.get_mpz_t(), five.get_mpz_t());
  mpz_class one = 1;
  mpz_mul_2exp(one.get_mpz_t(), one.get_mpz_t(), bits);
  m += one;
  mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), 1);
  return {m, bits};
}

namespace {

double rational_to_double(const Rational& q) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  const double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

Rational as_rational(const PowerInput& v) {
  if (const auto* q = std::get_if<Rational>(&v)) return *q;
  const auto& s = std::get<ScaledReal>(v);
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), s.frac_bits);
  Rational r(s.mantissa, den);
  r.canonicalize();
  return r;
}

// v * 2^bits truncated; exact when v is dyadic with at most `bits` fractional bits.
mpz_class scaled_floor(const Rational& v, std::size_t bits) {
  mpz_class num = v.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits);
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), v.get_den_mpz_t());
  return out;
}

}  // namespace

PowerOrbit power_orbit(const PowerInput& xi, const PowerInput& x, std::size_t n, std::size_t max_bits) {
  const Rational xi_q = as_rational(xi);
  const Rational x_q = as_rational(x);
  if (!(xi_q > 0)) throw InvalidArgument(kModule, "xi must be positive");
  if (!(x_q > 1)) throw InvalidArgument(kModule, "x must exceed 1");
  PowerOrbit out;
  out.points.points.reserve(n);
  auto record = [&](const mpz_class& integer, const mpz_class& frac_scaled, std::size_t frac_bits, double d) {
    out.integer_parts.push_back(BigNat::from_mpz(integer));
    mpz_class top = frac_scaled;
    if (frac_bits >= 64) {
      mpz_fdiv_q_2exp(top.get_mpz_t(), top.get_mpz_t(), frac_bits - 64);
    } else {
      mpz_mul_2exp(top.get_mpz_t(), top.get_mpz_t(), 64 - frac_bits);
    }
    out.fractions.emplace_back(top, 64);
    out.points.points.push_back(std::min(d, std::nextafter(1.0, 0.0)));
  };

  if (std::holds_alternative<Rational>(x)) {
    Rational y = xi_q;
    for (std::size_t k = 0; k < n; ++k) {
      y *= x_q;
      mpz_class integer;
      mpz_fdiv_q(integer.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
      Rational frac = y - Rational(integer);
      const mpz_class scaled = scaled_floor(frac, 64);
      record(integer, scaled, 64, rational_to_double(frac));
    }
    return out;
  }

  const auto& xs = std::get<ScaledReal>(x);
  const double log2x = static_cast<double>(mpz_sizeinbase(xs.mantissa.get_mpz_t(), 2)) - static_cast<double>(xs.frac_bits);
  const double log2n = std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  const auto work = static_cast<std::size_t>(64.0 + log2n + std::ceil(static_cast<double>(n) * log2x) + 3.0);
  const double int_bits = std::max(0.0, std::log2(xi_q.get_d()) + static_cast<double>(n) * log2x + 1.0);
  if (static_cast<double>(work) + int_bits > static_cast<double>(max_bits)) {
    throw PrecisionOverflow(kModule, "power orbit needs about " + std::to_string(work + static_cast<std::size_t>(int_bits)) +
                                         " bits, budget is " + std::to_string(max_bits));
  }
  out.working_bits = work;
  mpz_class y = scaled_floor(xi_q, work);
  mpz_class integer, frac;
  for (std::size_t k = 0; k < n; ++k) {
    y *= xs.mantissa;
    mpz_fdiv_q_2exp(y.get_mpz_t(), y.get_mpz_t(), xs.frac_bits);
    mpz_fdiv_q_2exp(integer.get_mpz_t(), y.get_mpz_t(), work);
    mpz_fdiv_r_2exp(frac.get_mpz_t(), y.get_mpz_t(), work);
    record(integer, frac, work, scaled_to_double(frac.get_mpz_t(), work));
  }
  return out;
}

}  // namespace lacunary
