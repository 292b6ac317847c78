#include "lacunary/diophantine.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <unordered_map>
#include <vector>

#include "lacunary/error.hpp"

namespace lacunary {

namespace {

constexpr const char* kModule = "diophantine";

struct I64Hash {
  std::size_t operator()(std::int64_t v) const noexcept {
    std::uint64_t x = static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

bool fits_small(const LacunarySequence& seq, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if (seq[k].bit_length() > 61) return false;
  }
  return true;
}

void require_prefix(const LacunarySequence& seq, std::size_t n) {
  if (n > seq.size()) throw InvalidArgument(kModule, "sequence shorter than requested N");
}

template <typename Key>
Key as_key(const BigNat& v) {
  if constexpr (std::is_same_v<Key, std::int64_t>) {
    return static_cast<std::int64_t>(v.to_u64());
  } else {
    return v.value();
  }
}

template <typename Key>
BigNat from_key(const Key& v) {
  if constexpr (std::is_same_v<Key, std::int64_t>) {
    return BigNat(static_cast<std::uint64_t>(v));
  } else {
    return BigNat::from_mpz(v);
  }
}

template <typename Key, typename Hash>
B2Report b2_impl(const LacunarySequence& seq, std::size_t n) {
  std::vector<Key> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(as_key<Key>(seq[k]));
  std::unordered_map<Key, std::array<std::uint64_t, 2>, Hash> reps;
  reps.reserve(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < k; ++l) {
      ++reps[Key(v[k] + v[l])][0];
      const Key d = v[k] - v[l];
      if (d > 0) ++reps[d][1];
    }
  }
  B2Report out;
  bool have = false;
  Key witness{};
  for (const auto& [nu, c] : reps) {
    const std::uint64_t total = c[0] + c[1];
    out.sum_reps_max = std::max(out.sum_reps_max, c[0]);
    out.diff_reps_max = std::max(out.diff_reps_max, c[1]);
    if (!have || total > out.max_representations || (total == out.max_representations && nu < witness)) {
      out.max_representations = total;
      witness = nu;
      have = true;
    }
  }
  if (have) out.witness = from_key(witness);
  return out;
}

template <typename Key, typename Hash>
FourTermReport four_term_impl(const LacunarySequence& seq, std::size_t n, std::size_t min_max_index, bool distinct) {
  std::vector<Key> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(as_key<Key>(seq[k]));
  // pair sums e1 n_{k1} + e2 n_{k2}, k1 <= k2 (k1 < k2 when distinct), bucketed
  // by the number of negative signs
  std::unordered_map<Key, std::array<std::uint64_t, 3>, Hash> pairs;
  pairs.reserve(2 * n * n);
  auto insert_pairs_ending_at = [&](std::size_t k2) {
    const std::size_t stop = distinct ? k2 : k2 + 1;
    for (std::size_t k1 = 0; k1 < stop; ++k1) {
      ++pairs[Key(v[k1] + v[k2])][0];
      ++pairs[Key(v[k1] - v[k2])][1];
      ++pairs[Key(v[k2] - v[k1])][1];
      ++pairs[Key(-v[k1] - v[k2])][2];
    }
  };
  FourTermReport out;
  for (std::size_t k3 = 0; k3 + 1 < n; ++k3) {
    if (!distinct) insert_pairs_ending_at(k3);
    for (std::size_t k4 = k3 + 1; k4 < n; ++k4) {
      if (k4 + 1 < min_max_index) continue;
      for (int e3 : {1, -1}) {
        const Key need = e3 > 0 ? Key(v[k4] - v[k3]) : Key(v[k4] + v[k3]);
        auto it = pairs.find(need);
        if (it == pairs.end()) continue;
        const auto& c = it->second;
        out.total += c[0] + c[1] + c[2];
        out.balanced += e3 > 0 ? c[1] : c[0];
      }
    }
    if (distinct) insert_pairs_ending_at(k3);
  }
  return out;
}

}  // namespace

std::uint64_t count_solutions(const LacunarySequence& seq, const DiophantineQuery& q) {
  require_prefix(seq, q.n);
  if (q.a == 0 || q.b == 0) throw InvalidArgument(kModule, "a and b must be positive");
  std::unordered_map<mpz_class, std::uint64_t, BigIntHash> rhs;
  rhs.reserve(q.n);
  const mpz_class a(static_cast<unsigned long>(q.a)), b(static_cast<unsigned long>(q.b));
  for (std::size_t l = 0; l < q.n; ++l) ++rhs[mpz_class(b * seq[l].value() + q.c)];
  std::uint64_t count = 0;
  for (std::size_t k = 0; k < q.n; ++k) {
    const mpz_class lhs = a * seq[k].value();
    auto it = rhs.find(lhs);
    if (it == rhs.end()) continue;
    count += it->second;
    if (q.distinct_indices && lhs == b * seq[k].value() + q.c) --count;
  }
  return count;
}

B2Report b2_max_representations(const LacunarySequence& seq, std::size_t n) {
  require_prefix(seq, n);
  if (n < 2) throw InvalidArgument(kModule, "B2 analysis needs N >= 2");
  const bool small = fits_small(seq, n);
  const std::size_t limit = small ? 4096 : 2048;
  if (n > limit) throw CapacityExceeded(kModule, "B2 analysis supports N <= " + std::to_string(limit));
  return small ? b2_impl<std::int64_t, I64Hash>(seq, n) : b2_impl<mpz_class, BigIntHash>(seq, n);
}

FourTermReport four_term_zero_solutions(const LacunarySequence& seq, std::size_t n, std::size_t min_max_index,
                                        bool distinct) {
  require_prefix(seq, n);
  if (n < 4) throw InvalidArgument(kModule, "four-term analysis needs N >= 4");
  for (std::size_t k = 0; k < n; ++k) {
    if (seq[k].is_zero() || (k > 0 && !(seq[k - 1] < seq[k]))) {
      throw InvalidArgument(kModule, "four-term analysis needs a positive strictly increasing prefix");
    }
  }
  const bool small = fits_small(seq, n);
  const std::size_t limit = small ? 2048 : 512;
  if (n > limit) throw CapacityExceeded(kModule, "four-term analysis supports N <= " + std::to_string(limit));
  return small ? four_term_impl<std::int64_t, I64Hash>(seq, n, min_max_index, distinct)
               : four_term_impl<mpz_class, BigIntHash>(seq, n, min_max_index, distinct);
}

namespace {

std::string join_sorted(const std::map<std::string, std::string>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

}  // namespace

std::string report_text(const B2Report& r) {
  return join_sorted({{"diff_reps_max", std::to_string(r.diff_reps_max)},
                      {"max_representations", std::to_string(r.max_representations)},
                      {"sum_reps_max", std::to_string(r.sum_reps_max)},
                      {"witness", r.witness.to_string()}});
}

std::string report_text(const FourTermReport& r) {
  return join_sorted({{"balanced", std::to_string(r.balanced)}, {"total", std::to_string(r.total)}});
}

}  // namespace lacunary
