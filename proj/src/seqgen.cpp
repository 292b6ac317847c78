#include "lacunary/seqgen.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "lacunary/bigfrac.hpp"
#include "lacunary/error.hpp"

namespace lacunary {

namespace {

constexpr const char* kModule = "seqgen";

// RAII holder for an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Encloses exp(c k^beta) in [lo, hi] using directed rounding throughout.
void exp_power_bracket(double c, double beta, std::uint64_t k, Mpfr& lo, Mpfr& hi) {
  const mpfr_prec_t prec = mpfr_get_prec(lo.get());
  Mpfr kk(std::max<mpfr_prec_t>(prec, 64));
  mpfr_set_uj(kk.get(), k, MPFR_RNDN);  // exact
  Mpfr b(prec);
  mpfr_set_d(b.get(), beta, MPFR_RNDN);  // exact at >= 53 bits
  mpfr_pow(lo.get(), kk.get(), b.get(), MPFR_RNDD);
  mpfr_mul_d(lo.get(), lo.get(), c, MPFR_RNDD);
  mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_pow(hi.get(), kk.get(), b.get(), MPFR_RNDU);
  mpfr_mul_d(hi.get(), hi.get(), c, MPFR_RNDU);
  mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
}

mpfr_prec_t initial_precision(double c, double beta, std::uint64_t k) {
  const double magnitude_bits = c * std::pow(static_cast<double>(k), beta) / std::log(2.0);
  return static_cast<mpfr_prec_t>(std::max(128.0, magnitude_bits + 96.0));
}

constexpr mpfr_prec_t kPrecisionCap = 1 << 16;

mpz_class mpfr_floor_z(mpfr_srcptr v) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v, MPFR_RNDD);
  return z;
}

mpz_class mpfr_ceil_z(mpfr_srcptr v) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v, MPFR_RNDU);
  return z;
}

// Certified floor(exp(c k^beta)).
BigNat exp_power_floor(double c, double beta, std::uint64_t k) {
  for (mpfr_prec_t prec = initial_precision(c, beta, k); prec <= kPrecisionCap; prec *= 2) {
    Mpfr lo(prec), hi(prec);
    exp_power_bracket(c, beta, k, lo, hi);
    mpz_class flo = mpfr_floor_z(lo.get());
    mpz_class fhi = mpfr_floor_z(hi.get());
    if (flo == fhi) return BigNat::from_mpz(std::move(flo));
  }
  throw NearIntegerAmbiguity(kModule, "floor(exp(c k^beta)) undecidable at k=" + std::to_string(k) +
                                          " within the precision cap");
}

struct IntegerRange {
  BigNat first;
  BigNat count;
};

// Integers strictly inside J_k.
IntegerRange interval_integers(const IntervalFamily& s, std::uint64_t k) {
  for (mpfr_prec_t prec = initial_precision(s.c, s.beta, k); prec <= kPrecisionCap; prec *= 2) {
    Mpfr elo(prec), ehi(prec);
    exp_power_bracket(s.c, s.beta, k, elo, ehi);
    Mpfr kk(std::max<mpfr_prec_t>(prec, 64)), g(prec), rlo(prec), rhi(prec);
    mpfr_set_uj(kk.get(), k, MPFR_RNDN);
    mpfr_set_d(g.get(), -s.gamma, MPFR_RNDN);
    mpfr_pow(rlo.get(), kk.get(), g.get(), MPFR_RNDD);
    mpfr_pow(rhi.get(), kk.get(), g.get(), MPFR_RNDU);
    Mpfr t(prec), left_lo(prec), left_hi(prec), right_lo(prec), right_hi(prec);
    mpfr_ui_sub(t.get(), 1, rhi.get(), MPFR_RNDD);
    mpfr_mul(left_lo.get(), elo.get(), t.get(), MPFR_RNDD);
    mpfr_ui_sub(t.get(), 1, rlo.get(), MPFR_RNDU);
    mpfr_mul(left_hi.get(), ehi.get(), t.get(), MPFR_RNDU);
    mpfr_add_ui(t.get(), rlo.get(), 1, MPFR_RNDD);
    mpfr_mul(right_lo.get(), elo.get(), t.get(), MPFR_RNDD);
    mpfr_add_ui(t.get(), rhi.get(), 1, MPFR_RNDU);
    mpfr_mul(right_hi.get(), ehi.get(), t.get(), MPFR_RNDU);
    mpz_class f1 = mpfr_floor_z(left_lo.get()), f2 = mpfr_floor_z(left_hi.get());
    mpz_class c1 = mpfr_ceil_z(right_lo.get()), c2 = mpfr_ceil_z(right_hi.get());
    if (f1 != f2 || c1 != c2) continue;
    mpz_class first = f1 + 1;
    mpz_class last = c1 - 1;
    if (last < first) throw InvalidSpec(kModule, "interval J_" + std::to_string(k) + " contains no integer");
    mpz_class count = last - first + 1;
    return {BigNat::from_mpz(std::move(first)), BigNat::from_mpz(std::move(count))};
  }
  throw NearIntegerAmbiguity(kModule, "endpoint of J_" + std::to_string(k) + " undecidable within the precision cap");
}

void validate(const SequenceSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeometricInt>) {
          if (s.theta < 2) throw InvalidSpec(kModule, "GeometricInt requires theta >= 2");
        } else if constexpr (std::is_same_v<T, GeometricFloor>) {
          if (!(s.theta > 1)) throw InvalidSpec(kModule, "GeometricFloor requires theta > 1");
        } else if constexpr (std::is_same_v<T, PowerMinusOne>) {
          if (s.base < 2) throw InvalidSpec(kModule, "PowerMinusOne requires b >= 2");
        } else if constexpr (std::is_same_v<T, Hlp>) {
          if (s.primes.empty()) throw InvalidSpec(kModule, "HLP requires at least one prime");
          for (auto p : s.primes) {
            if (!is_prime_u64(p)) throw InvalidSpec(kModule, "HLP generator " + std::to_string(p) + " is not prime");
          }
          auto sorted = s.primes;
          std::sort(sorted.begin(), sorted.end());
          if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw InvalidSpec(kModule, "HLP generators must be distinct");
          }
        } else if constexpr (std::is_same_v<T, ExpPower>) {
          if (!(s.c > 0) || !(s.beta > 0) || !std::isfinite(s.c) || !std::isfinite(s.beta)) {
            throw InvalidSpec(kModule, "ExpPower requires c > 0 and beta > 0");
          }
        } else if constexpr (std::is_same_v<T, CoinFlip>) {
          if (!(s.p > 0 && s.p < 1)) throw InvalidSpec(kModule, "CoinFlip requires p in (0,1)");
        } else if constexpr (std::is_same_v<T, BlockUniform>) {
          if (const auto* eq = std::get_if<EqualLength>(&s.rule); eq && eq->length == 0) {
            throw InvalidSpec(kModule, "block length must be positive");
          }
          if (const auto* cu = std::get_if<CustomBlocks>(&s.rule)) {
            for (const auto& b : cu->sizes) {
              if (b.is_zero()) throw InvalidSpec(kModule, "custom block sizes must be positive");
            }
          }
        } else if constexpr (std::is_same_v<T, IntervalFamily>) {
          if (!(s.c > 0) || !(s.beta > 0) || !(s.gamma > 0)) {
            throw InvalidSpec(kModule, "IntervalFamily requires c, beta, gamma > 0");
          }
          if (!(s.gamma > 1.0 - s.beta)) throw InvalidSpec(kModule, "IntervalFamily requires gamma > 1 - beta");
        }
      },
      spec);
}

class GeometricSource final : public TermSource {
 public:
  explicit GeometricSource(std::uint64_t theta) : theta_(theta) {}
  BigNat next() override { return cur_ *= theta_; }

 private:
  BigNat theta_;
  BigNat cur_{1};
};

class GeometricFloorSource final : public TermSource {
 public:
  explicit GeometricFloorSource(const Rational& theta) : num_(theta.get_num()), den_(theta.get_den()) {}
  BigNat next() override {
    for (;;) {
      pn_ *= num_;
      pd_ *= den_;
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), pn_.get_mpz_t(), pd_.get_mpz_t());
      if (f > last_) {
        last_ = f;
        return BigNat::from_mpz(f);
      }
    }
  }

 private:
  mpz_class num_, den_, pn_{1}, pd_{1}, last_{0};
};

class PowerMinusOneSource final : public TermSource {
 public:
  explicit PowerMinusOneSource(std::uint64_t b) : b_(b) {}
  BigNat next() override {
    pow_ *= b_;
    return pow_ - BigNat(1);
  }

 private:
  BigNat b_;
  BigNat pow_{1};
};

class PolynomialSource final : public TermSource {
 public:
  explicit PolynomialSource(bool square) : square_(square) {}
  BigNat next() override {
    ++k_;
    BigNat k(k_);
    return square_ ? k * k : k;
  }

 private:
  bool square_;
  std::uint64_t k_ = 0;
};

// k-way merge over the generators: each prime p points at the least output
// whose multiple by p has not been emitted yet.
class HlpSource final : public TermSource {
 public:
  explicit HlpSource(const Hlp& s) : primes_(s.primes.begin(), s.primes.end()), pos_(s.primes.size(), 0) {
    skip_one_ = !s.include_one;
  }
  BigNat next() override {
    if (out_.empty()) {
      out_.emplace_back(1);
      if (!skip_one_) return out_.back();
    }
    BigNat best;
    bool have = false;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      BigNat cand = out_[pos_[i]] * primes_[i];
      if (!have || cand < best) {
        best = std::move(cand);
        have = true;
      }
    }
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (out_[pos_[i]] * primes_[i] == best) ++pos_[i];
    }
    out_.push_back(best);
    return best;
  }

 private:
  std::vector<BigNat> primes_;
  std::vector<std::size_t> pos_;
  std::vector<BigNat> out_;
  bool skip_one_;
};

class ExpPowerSource final : public TermSource {
 public:
  explicit ExpPowerSource(const ExpPower& s) : s_(s) {}
  BigNat next() override {
    for (;;) {
      BigNat v = exp_power_floor(s_.c, s_.beta, ++k_);
      if (v > last_) {
        last_ = v;
        return v;
      }
    }
  }

 private:
  ExpPower s_;
  std::uint64_t k_ = 0;
  BigNat last_{0};
};

class SidonSource final : public TermSource {
 public:
  BigNat next() override {
    std::uint64_t cand = terms_.empty() ? 1 : terms_.back() + 1;
    for (;; ++cand) {
      if (admissible(cand)) break;
    }
    ensure(2 * cand);
    for (auto t : terms_) sums_[t + cand] = 1;
    sums_[2 * cand] = 1;
    terms_.push_back(cand);
    return BigNat(cand);
  }

 private:
  bool admissible(std::uint64_t c) {
    ensure(2 * c);
    if (sums_[2 * c]) return false;
    for (auto t : terms_) {
      if (sums_[t + c]) return false;
    }
    return true;
  }
  void ensure(std::uint64_t idx) {
    if (idx >= sums_.size()) sums_.resize(std::max<std::size_t>(idx + 1, sums_.size() * 2), 0);
  }
  std::vector<std::uint64_t> terms_;
  std::vector<char> sums_;
};

class CoinFlipSource final : public TermSource {
 public:
  explicit CoinFlipSource(const CoinFlip& s)
      : seed_(s.seed), threshold_(static_cast<std::uint64_t>(std::ldexp(s.p, 64))) {}
  BigNat next() override {
    for (;;) {
      ++n_;
      if (n_ / 4 != cached_block_) {
        cached_block_ = n_ / 4;
        block_ = philox4x64({0, cached_block_, 0, 0}, {seed_, static_cast<std::uint64_t>(RngStream::kCoinFlip)});
      }
      if (block_[n_ % 4] < threshold_) return BigNat(n_);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t threshold_;
  std::uint64_t n_ = 0;
  std::uint64_t cached_block_ = ~0ull;
  std::array<std::uint64_t, 4> block_{};
};

class BlockUniformSource final : public TermSource {
 public:
  explicit BlockUniformSource(const BlockUniform& s) : s_(s) {}
  BigNat next() override {
    ++k_;
    const BigNat size = block_size();
    CounterStream rng(s_.seed, RngStream::kBlockUniform, k_);
    BigNat v = offset_ + BigNat(1) + rng.uniform_below(size);
    offset_ += size;
    return v;
  }

 private:
  BigNat block_size() const {
    return std::visit(
        [this](const auto& r) -> BigNat {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, EqualLength>) {
            return BigNat(r.length);
          } else if constexpr (std::is_same_v<T, PowerRule>) {
            return BigNat::pow(k_, r.exponent);
          } else {
            if (k_ > r.sizes.size()) throw InvalidSpec(kModule, "custom block list exhausted");
            return r.sizes[k_ - 1];
          }
        },
        s_.rule);
  }
  BlockUniform s_;
  std::uint64_t k_ = 0;
  BigNat offset_{0};
};

class IntervalFamilySource final : public TermSource {
 public:
  explicit IntervalFamilySource(const IntervalFamily& s) : s_(s), k0_(interval_family_start(s)), k_(k0_ - 1) {}
  BigNat next() override {
    ++k_;
    const IntegerRange r = interval_integers(s_, k_);
    CounterStream rng(s_.seed, RngStream::kIntervalFamily, k_);
    return r.first + rng.uniform_below(r.count);
  }
  std::uint64_t first_index() const override { return k0_; }

 private:
  IntervalFamily s_;
  std::uint64_t k0_;
  std::uint64_t k_;
};

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t result = 1;
    a %= n;
    while (e) {
      if (e & 1) result = mulmod(result, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return result;
  };
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t interval_family_start(const IntervalFamily& s) {
  validate(s);
  const double excess = s.beta - 1.0 + s.gamma;
  const double lead = 3.0 * std::pow(2.0, std::max(0.0, 1.0 - s.beta)) / (s.c * s.beta);
  const double k_disjoint = std::ceil(std::pow(lead, 1.0 / excess));
  const double k_nonempty = std::ceil(std::pow(s.gamma / (s.c * s.beta), 1.0 / s.beta)) + 1.0;
  const double k_half = std::ceil(std::pow(2.0, 1.0 / s.gamma));
  const double horizon = std::max({k_disjoint, k_nonempty, k_half, 2.0}) + 1.0;
  constexpr double kMaxHorizon = 2.0e5;
  if (!(horizon <= kMaxHorizon)) {
    throw InvalidSpec(kModule, "J_k disjointness horizon exceeds 2e5; increase gamma or c");
  }
  const auto h = static_cast<std::uint64_t>(horizon);
  auto log_center = [&](std::uint64_t k) { return s.c * std::pow(static_cast<double>(k), s.beta); };
  auto radius = [&](std::uint64_t k) { return std::pow(static_cast<double>(k), -s.gamma); };
  std::uint64_t last_bad = 0;
  for (std::uint64_t k = 1; k <= h; ++k) {
    const double r = radius(k);
    const double r_next = radius(k + 1);
    const bool wide = std::log(2.0 * r) + log_center(k) > 0.0;
    const double log_upper = log_center(k) + std::log1p(r);
    const double log_lower_next = r_next >= 1.0 ? -HUGE_VAL : log_center(k + 1) + std::log1p(-r_next);
    const bool disjoint = log_upper <= log_lower_next;
    if (!wide || !disjoint) last_bad = k;
  }
  return last_bad + 1;
}

std::unique_ptr<TermSource> make_term_source(const SequenceSpec& spec) {
  validate(spec);
  return std::visit(
      [](const auto& s) -> std::unique_ptr<TermSource> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeometricInt>) return std::make_unique<GeometricSource>(s.theta);
        else if constexpr (std::is_same_v<T, GeometricFloor>) return std::make_unique<GeometricFloorSource>(s.theta);
        else if constexpr (std::is_same_v<T, PowerMinusOne>) return std::make_unique<PowerMinusOneSource>(s.base);
        else if constexpr (std::is_same_v<T, Squares>) return std::make_unique<PolynomialSource>(true);
        else if constexpr (std::is_same_v<T, Linear>) return std::make_unique<PolynomialSource>(false);
        else if constexpr (std::is_same_v<T, Hlp>) return std::make_unique<HlpSource>(s);
        else if constexpr (std::is_same_v<T, ExpPower>) return std::make_unique<ExpPowerSource>(s);
        else if constexpr (std::is_same_v<T, GreedySidon>) return std::make_unique<SidonSource>();
        else if constexpr (std::is_same_v<T, CoinFlip>) return std::make_unique<CoinFlipSource>(s);
        else if constexpr (std::is_same_v<T, BlockUniform>) return std::make_unique<BlockUniformSource>(s);
        else return std::make_unique<IntervalFamilySource>(s);
      },
      spec);
}

LacunarySequence generate(const SequenceSpec& spec, std::size_t n) {
  if (n == 0) throw InvalidSpec(kModule, "sequence length must be at least 1");
  auto src = make_term_source(spec);
  LacunarySequence seq{{}, spec, src->first_index()};
  seq.terms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) seq.terms.push_back(src->next());
  return seq;
}

LacunarySequence hlp_generate(std::span<const std::uint64_t> primes, const BigNat& bound, bool include_one) {
  Hlp spec{std::vector<std::uint64_t>(primes.begin(), primes.end()), include_one};
  validate(spec);
  HlpSource src(Hlp{spec.primes, true});
  LacunarySequence seq{{}, spec, 1};
  for (;;) {
    BigNat v = src.next();
    if (v > bound) break;
    if (!include_one && v == BigNat(1)) continue;
    seq.terms.push_back(std::move(v));
  }
  return seq;
}

GapReport gap_report(const LacunarySequence& seq) {
  if (seq.size() < 2) throw InvalidArgument(kModule, "gap_report needs at least two terms");
  GapReport rep;
  double alpha = -HUGE_VAL;
  bool alpha_fails = false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const BigNat& a = seq[i];
    const BigNat& b = seq[i + 1];
    if (!(a < b) || a.is_zero()) throw InvalidArgument(kModule, "sequence must be positive and strictly increasing");
    Rational r = ratio(b, a);
    BigNat gap = b - a;
    if (i == 0) {
      rep.min_ratio = rep.max_ratio = r;
      rep.min_ratio_at = rep.max_ratio_at = 1;
      rep.min_gap = rep.max_gap = gap;
    } else {
      if (r < rep.min_ratio) {
        rep.min_ratio = r;
        rep.min_ratio_at = i + 1;
      }
      if (r > rep.max_ratio) {
        rep.max_ratio = r;
        rep.max_ratio_at = i + 1;
      }
      if (gap < rep.min_gap) rep.min_gap = gap;
      if (gap > rep.max_gap) rep.max_gap = gap;
    }
    const std::size_t k = i + 1;
    if (k == 1) {
      if (r < 2) alpha_fails = true;
    } else {
      // ratio - 1 = gap / a >= k^{-alpha}  <=>  alpha >= -log(gap/a) / log k
      const double need = -(gap.log() - a.log()) / std::log(static_cast<double>(k));
      alpha = std::max(alpha, need);
    }
  }
  rep.hadamard_q = rep.min_ratio;
  if (!alpha_fails) rep.erdos_alpha = alpha + 0.0;
  return rep;
}

std::string describe(const SequenceSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeometricInt>) {
          return s.theta == 2 ? "pow2" : "geom:" + std::to_string(s.theta);
        } else if constexpr (std::is_same_v<T, GeometricFloor>) {
          return "floor:" + to_string(s.theta);
        } else if constexpr (std::is_same_v<T, PowerMinusOne>) {
          return "pow-minus-one:" + std::to_string(s.base);
        } else if constexpr (std::is_same_v<T, Squares>) {
          return "squares";
        } else if constexpr (std::is_same_v<T, Linear>) {
          return "linear";
        } else if constexpr (std::is_same_v<T, Hlp>) {
          std::string out = "hlp:";
          for (std::size_t i = 0; i < s.primes.size(); ++i) out += (i ? "," : "") + std::to_string(s.primes[i]);
          if (!s.include_one) out += ":no-one";
          return out;
        } else if constexpr (std::is_same_v<T, ExpPower>) {
          return "exp:" + fmt_double(s.c) + "," + fmt_double(s.beta);
        } else if constexpr (std::is_same_v<T, GreedySidon>) {
          return "sidon";
        } else if constexpr (std::is_same_v<T, CoinFlip>) {
          return "coin:" + fmt_double(s.p) + "@" + std::to_string(s.seed);
        } else if constexpr (std::is_same_v<T, BlockUniform>) {
          const std::string seed = "@" + std::to_string(s.seed);
          if (const auto* eq = std::get_if<EqualLength>(&s.rule)) return "block:" + std::to_string(eq->length) + seed;
          if (const auto* pr = std::get_if<PowerRule>(&s.rule)) return "block:k" + std::to_string(pr->exponent) + seed;
          const auto& cu = std::get<CustomBlocks>(s.rule);
          std::string out = "block-custom:";
          for (std::size_t i = 0; i < cu.sizes.size(); ++i) out += (i ? "," : "") + cu.sizes[i].to_string();
          return out + seed;
        } else {
          return "interval:" + fmt_double(s.c) + "," + fmt_double(s.beta) + "," + fmt_double(s.gamma) + "@" +
                 std::to_string(s.seed);
        }
      },
      spec);
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InvalidSpec(kModule, "expected an unsigned integer, got '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  std::istringstream is(s);
  is.imbue(std::locale::classic());
  double v = 0;
  is >> v;
  if (!is || is.peek() != std::char_traits<char>::eof()) {
    throw InvalidSpec(kModule, "expected a number, got '" + s + "'");
  }
  return v;
}

Rational parse_rational(const std::string& s) {
  const auto parts = split(s, '/');
  if (parts.size() > 2) throw InvalidSpec(kModule, "bad rational '" + s + "'");
  Rational r(mpz_class(BigNat::parse(parts[0]).value()),
             parts.size() == 2 ? mpz_class(BigNat::parse(parts[1]).value()) : mpz_class(1));
  if (r.get_den() == 0) throw InvalidSpec(kModule, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace

SequenceSpec parse_sequence_spec(std::string_view text, std::uint64_t seed) {
  std::string body(text);
  if (const auto at = body.rfind('@'); at != std::string::npos) {
    seed = parse_u64(body.substr(at + 1));
    body.resize(at);
  }
  const auto colon = body.find(':');
  const std::string name = body.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : body.substr(colon + 1);
  const auto list = args.empty() ? std::vector<std::string>{} : split(args, ',');
  auto need = [&](std::size_t n) {
    if (list.size() != n) throw InvalidSpec(kModule, "sequence '" + name + "' takes " + std::to_string(n) + " argument(s)");
  };
  try {
    if (name == "pow2") {
      need(0);
      return GeometricInt{2};
    }
    if (name == "geom") {
      need(1);
      return GeometricInt{parse_u64(list[0])};
    }
    if (name == "floor") {
      need(1);
      return GeometricFloor{parse_rational(list[0])};
    }
    if (name == "pow-minus-one") {
      need(1);
      return PowerMinusOne{parse_u64(list[0])};
    }
    if (name == "squares") {
      need(0);
      return Squares{};
    }
    if (name == "linear") {
      need(0);
      return Linear{};
    }
    if (name == "hlp") {
      Hlp h;
      h.primes.clear();
      const auto parts = split(args, ':');
      if (parts.size() == 2) {
        if (parts[1] != "no-one") throw InvalidSpec(kModule, "hlp flag must be 'no-one'");
        h.include_one = false;
      } else if (parts.size() != 1) {
        throw InvalidSpec(kModule, "bad hlp spec");
      }
      for (const auto& p : split(parts[0], ',')) h.primes.push_back(parse_u64(p));
      return h;
    }
    if (name == "exp") {
      need(2);
      return ExpPower{parse_double(list[0]), parse_double(list[1])};
    }
    if (name == "sidon") {
      need(0);
      return GreedySidon{};
    }
    if (name == "coin") {
      need(1);
      return CoinFlip{parse_double(list[0]), seed};
    }
    if (name == "block") {
      need(1);
      if (!list[0].empty() && list[0][0] == 'k') {
        return BlockUniform{PowerRule{static_cast<unsigned>(parse_u64(list[0].substr(1)))}, seed};
      }
      return BlockUniform{EqualLength{parse_u64(list[0])}, seed};
    }
    if (name == "block-custom") {
      CustomBlocks cb;
      for (const auto& v : list) cb.sizes.push_back(BigNat::parse(v));
      return BlockUniform{cb, seed};
    }
    if (name == "interval") {
      need(3);
      return IntervalFamily{parse_double(list[0]), parse_double(list[1]), parse_double(list[2]), seed};
    }
  } catch (const InvalidArgument& e) {
    throw InvalidSpec(kModule, e.what());
  }
  throw InvalidSpec(kModule, "unknown sequence family '" + name + "'");
}

void write_text(std::ostream& out, const LacunarySequence& seq) {
  for (const auto& t : seq.terms) out << t.to_string() << '\n';
}

std::vector<BigNat> read_text(std::istream& in) {
  std::vector<BigNat> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.push_back(BigNat::parse(std::string_view(line).substr(b, e - b + 1)));
  }
  return out;
}

namespace {

constexpr char kMagic[8] = {'L', 'A', 'C', 'S', 'E', 'Q', '0', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) throw InvalidArgument(kModule, "truncated binary sequence");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

}  // namespace

void write_binary(std::ostream& out, const LacunarySequence& seq) {
  out.write(kMagic, 8);
  put_u64(out, seq.terms.size());
  for (const auto& t : seq.terms) {
    std::size_t count = 0;
    std::vector<unsigned char> bytes((t.bit_length() + 7) / 8 + 1);
    mpz_export(bytes.data(), &count, 1, 1, 1, 0, t.value().get_mpz_t());
    put_u64(out, count);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(count));
  }
}

std::vector<BigNat> read_binary(std::istream& in) {
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
    throw InvalidArgument(kModule, "not a binary sequence file");
  }
  const std::uint64_t n = get_u64(in);
  std::vector<BigNat> out;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t len = get_u64(in);
    std::vector<unsigned char> bytes(len);
    if (len && !in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(len))) {
      throw InvalidArgument(kModule, "truncated binary sequence");
    }
    mpz_class v;
    if (len) mpz_import(v.get_mpz_t(), len, 1, 1, 1, 0, bytes.data());
    out.push_back(BigNat::from_mpz(std::move(v)));
  }
  return out;
}

}  // namespace lacunary
