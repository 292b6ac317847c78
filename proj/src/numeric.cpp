#include "lacunary/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <queue>
#include <thread>
#include <vector>

#include "lacunary/error.hpp"

namespace lacunary {

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
  abs_ += std::fabs(v);
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Reduces r to [-1/8, 1/8] plus a quarter-turn count.
double reduce_quarter(double r, int& quadrant) {
  double f = r - std::floor(r);  // [0, 1)
  const double q = std::nearbyint(f * 4.0);
  quadrant = static_cast<int>(q) & 3;
  return f - q * 0.25;
}

}  // namespace

double sin2pi(double r) {
  int q = 0;
  const double y = reduce_quarter(r, q) * kTwoPi;
  switch (q) {
    case 0: return std::sin(y);
    case 1: return std::cos(y);
    case 2: return -std::sin(y);
    default: return -std::cos(y);
  }
}

double cos2pi(double r) {
  int q = 0;
  const double y = reduce_quarter(r, q) * kTwoPi;
  switch (q) {
    case 0: return std::cos(y);
    case 1: return -std::sin(y);
    case 2: return -std::cos(y);
    default: return std::sin(y);
  }
}

namespace {

// Kronrod 15-point nodes / weights and the embedded Gauss 7-point weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    resk += kWgk[j] * s;
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  return {a, b, resk * h, std::fabs((resk - resg) * h)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t initial_panels, std::size_t max_panels) {
  if (initial_panels == 0) initial_panels = 1;
  std::priority_queue<Panel> heap;
  double total = 0.0, err = 0.0;
  const double w = (b - a) / static_cast<double>(initial_panels);
  for (std::size_t i = 0; i < initial_panels; ++i) {
    const double lo = a + w * static_cast<double>(i);
    const double hi = i + 1 == initial_panels ? b : a + w * static_cast<double>(i + 1);
    Panel p = gauss_kronrod(f, lo, hi);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  while (err > abs_tol && heap.size() < max_panels) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    Panel l = gauss_kronrod(f, worst.a, mid);
    Panel r = gauss_kronrod(f, mid, worst.b);
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to shed the drift of incremental updates.
  CompensatedSum v, e;
  while (!heap.empty()) {
    v.add(heap.top().value);
    e.add(heap.top().error);
    heap.pop();
  }
  return {v.value(), e.value()};
}

TailSum power_tail_sum(double s, std::size_t m) {
  if (!(s > 1.0)) throw InvalidArgument("numeric", "power_tail_sum requires s > 1");
  // Direct summation up to a point where the asymptotic expansion is sharp.
  constexpr std::size_t kStart = 32;
  CompensatedSum direct;
  std::size_t from = m;
  while (from < kStart) {
    ++from;
    direct.add(std::pow(static_cast<double>(from), -s));
  }
  const double n = static_cast<double>(from);
  // sum_{t>n} t^-s = n^{1-s}/(s-1) - n^{-s}/2 + sum_k B_2k/(2k)! (s)_{2k-1} n^{-s-2k+1} + R
  static constexpr std::array<double, 5> kB2kOverFact = {
      1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0};
  CompensatedSum tail;
  tail.add(std::pow(n, 1.0 - s) / (s - 1.0));
  tail.add(-0.5 * std::pow(n, -s));
  double rising = s;  // (s)_{2k-1}
  double last = 0.0;
  for (std::size_t k = 0; k < kB2kOverFact.size(); ++k) {
    const double term = kB2kOverFact[k] * rising * std::pow(n, -s - 2.0 * static_cast<double>(k) - 1.0);
    if (k + 1 == kB2kOverFact.size()) {
      last = term;
      break;
    }
    tail.add(term);
    rising *= (s + 2.0 * static_cast<double>(k) + 1.0) * (s + 2.0 * static_cast<double>(k) + 2.0);
  }
  // For f(t) = t^-s every derivative has constant sign, so the remainder is
  // bounded by the first omitted correction.
  const double value = direct.value() + tail.value();
  const double rounding = 8.0 * 2.220446049250313e-16 * (direct.abs_total() + tail.abs_total());
  return {value, std::fabs(last) + rounding};
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t, std::size_t)>& body) {
  if (threads == 0) threads = default_threads();
  if (count == 0) return;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, t, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace lacunary
