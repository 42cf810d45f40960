// Copyright 2026 The walkcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "walkcover/green.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "walkcover/errors.hpp"
#include "walkcover/parallel.hpp"

namespace walkcover {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Step sums.
//
// P(X_n = v) for the simple walk on Z^d is built one coordinate at a time:
// of the m steps taken by the walk restricted to coordinates 0..j-1, a
// Binomial(m, 1/j) number go to coordinate j-1, and those form a 1-d walk.
// The difference walk of Z^d is at y exactly when X_n = kappa * (1,...,1) + z
// for some integer kappa, where z is the suffix sum of y; the recursion is
// vectorised over kappa.
// ---------------------------------------------------------------------------

constexpr double kWindowSigmas = 10.0;

class LogFactorial {
 public:
  explicit LogFactorial(std::size_t n) : table_(n + 1) {
    for (std::size_t i = 0; i <= n; ++i) table_[i] = std::lgamma(static_cast<double>(i) + 1.0);
  }
  double operator()(std::size_t i) const { return table_[i]; }

 private:
  std::vector<double> table_;
};

// Probability that a 1-d simple walk of `steps` steps ends at v.
double one_dim(const LogFactorial& lf, std::size_t steps, Coord v) {
  const Coord s = static_cast<Coord>(steps);
  if (v > s || -v > s || ((s + v) & 1) != 0) return 0.0;
  const auto up = static_cast<std::size_t>((s + v) / 2);
  return std::exp(lf(steps) - lf(up) - lf(steps - up) - static_cast<double>(steps) * std::numbers::ln2);
}

// a[n] = sum over kappa of P(X_n = kappa * 1 + z), n = 0..n_max, for a
// simple walk on Z^d (kappa pinned to 0 when diagonal is false).
std::vector<double> step_probabilities(std::size_t d, const std::vector<Coord>& z, bool diagonal, std::size_t n_max,
                                       unsigned threads) {
  const LogFactorial lf(n_max);
  Coord zmax = 0;
  for (Coord c : z) zmax = std::max(zmax, c < 0 ? -c : c);
  const Coord kappa_max =
      diagonal ? static_cast<Coord>(std::ceil(kWindowSigmas * std::sqrt(static_cast<double>(n_max) / static_cast<double>(d)))) + zmax + 2
               : 0;
  const auto width = static_cast<std::size_t>(2 * kappa_max + 1);
  const auto stride = width;

  // Active kappa range at walk length m (probabilities beyond are negligible).
  auto kappa_span = [&](std::size_t m) -> std::pair<std::size_t, std::size_t> {
    if (!diagonal) return {0, 1};
    const Coord r = std::min<Coord>(
        kappa_max, static_cast<Coord>(std::ceil(kWindowSigmas * std::sqrt(static_cast<double>(m) / static_cast<double>(d)))) + zmax + 2);
    return {static_cast<std::size_t>(kappa_max - r), static_cast<std::size_t>(kappa_max + r + 1)};
  };

  std::vector<double> prev((n_max + 1) * stride, 0.0);
  std::vector<double> next((n_max + 1) * stride, 0.0);
  std::vector<double> p1((n_max + 1) * stride, 0.0);

  auto fill_p1 = [&](Coord offset) {
    parallel_for(n_max + 1, threads, [&](std::size_t i) {
      for (std::size_t k = 0; k < width; ++k) {
        const Coord kappa = static_cast<Coord>(k) - kappa_max;
        p1[i * stride + k] = one_dim(lf, i, kappa + offset);
      }
    });
  };

  fill_p1(z[0]);
  prev = p1;
  for (std::size_t j = 2; j <= d; ++j) {
    fill_p1(z[j - 1]);
    const double p = 1.0 / static_cast<double>(j);
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    // Rows are independent, so the result does not depend on threads.
    parallel_for(n_max + 1, threads, [&](std::size_t m) {
      double* out = &next[m * stride];
      std::fill(out, out + stride, 0.0);
      const double mean = static_cast<double>(m) * p;
      const double sd = std::sqrt(static_cast<double>(m) * p * (1.0 - p));
      const auto lo = static_cast<std::size_t>(std::max(0.0, std::floor(mean - kWindowSigmas * sd - 2.0)));
      const auto hi = static_cast<std::size_t>(std::min(static_cast<double>(m), std::ceil(mean + kWindowSigmas * sd + 2.0)));
      std::size_t first = lo;
      std::size_t step = 1;
      if (!diagonal) {
        // Only i with the parity of z[j-1] can end at that coordinate.
        const auto parity = static_cast<std::size_t>(z[j - 1] < 0 ? -z[j - 1] : z[j - 1]) & 1U;
        if ((first & 1U) != parity) ++first;
        step = 2;
      }
      const auto [k0, k1] = kappa_span(m);
      for (std::size_t i = first; i <= hi; i += step) {
        const double w = std::exp(lf(m) - lf(i) - lf(m - i) + static_cast<double>(i) * log_p +
                                  static_cast<double>(m - i) * log_q);
        const double* a = &p1[i * stride];
        const double* b = &prev[(m - i) * stride];
        for (std::size_t k = k0; k < k1; ++k) out[k] += w * a[k] * b[k];
      }
    });
    std::swap(prev, next);
  }

  std::vector<double> a(n_max + 1, 0.0);
  for (std::size_t m = 0; m <= n_max; ++m) {
    a[m] = pairwise_sum(std::span<const double>(&prev[m * stride], width));
  }
  return a;
}

double determinant(std::vector<double> m, std::size_t n) {
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r * n + c]) > std::abs(m[pivot * n + c])) pivot = r;
    }
    if (m[pivot * n + c] == 0.0) return 0.0;
    if (pivot != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[c * n + k], m[pivot * n + k]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return det;
}

// Average (over parity) local limit density at the origin per unit time:
// a_n ~ density * n^(-dim/2).
double local_limit_constant(const WalkSpectrum& spec) {
  const std::size_t k = spec.dim();
  const double d = static_cast<double>(spec.d());
  if (spec.kind() == WalkKind::Simple) return std::pow(d / (2.0 * kPi), static_cast<double>(k) / 2.0);
  // Covariance of one step of the difference walk.
  std::vector<double> cov(k * k, 0.0);
  for (std::size_t step = 0; step < spec.d(); ++step) {
    std::vector<double> v(k, 0.0);
    if (step < k) v[step] += 1.0;
    if (step > 0) v[step - 1] -= 1.0;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) cov[a * k + b] += v[a] * v[b] / d;
    }
  }
  return std::pow(2.0 * kPi, -static_cast<double>(k) / 2.0) / std::sqrt(determinant(cov, k));
}

struct SeriesEstimate {
  double value = 0.0;
  double model_error = 0.0;
};

// Partial sum of a[0..n] plus the local-limit tail with a fitted 1/n
// correction, a_n ~ C n^(-k/2) (1 + b/n).
SeriesEstimate sum_with_tail(const std::vector<double>& a, std::size_t n, double density, std::size_t k) {
  long double partial = 0.0L;
  for (std::size_t i = 0; i <= n; ++i) partial += a[i];
  const bool periodic = a[n] == 0.0 || a[n - 1] == 0.0;
  const double half_k = static_cast<double>(k) / 2.0;
  const double scale = periodic ? 2.0 : 1.0;
  const std::size_t n1 = (periodic && a[n] == 0.0) ? n - 1 : n;
  const std::size_t n2 = n1 - 2;
  auto fit = [&](std::size_t m) {
    const double mm = static_cast<double>(m);
    return mm * (a[m] / (scale * density * std::pow(mm, -half_k)) - 1.0);
  };
  const double b1 = fit(n1);
  const double b2 = fit(n2);
  // b(m) ~ b + c/m; c measures the neglected next order.
  const double c = (b1 - b2) / (1.0 / static_cast<double>(n1) - 1.0 / static_cast<double>(n2));
  const double s = periodic ? static_cast<double>(n1) + 1.0 : static_cast<double>(n1) + 0.5;
  const double h = periodic ? 2.0 : 1.0;
  const double tail = density * (std::pow(s, 1.0 - half_k) / (half_k - 1.0) + b1 * std::pow(s, -half_k) / half_k);
  const double next_order = density * (std::abs(c) + b1 * b1 + 1.0) * std::pow(s, -half_k - 1.0);
  const double midpoint = density * h * h / 24.0 * half_k * std::pow(s, -half_k - 1.0);
  return {static_cast<double>(partial) + tail, 2.0 * (next_order + midpoint)};
}

std::vector<Coord> x_offsets(const WalkSpectrum& spec, const LatticePoint& x) {
  if (spec.kind() == WalkKind::Simple) return std::vector<Coord>(x.coords().begin(), x.coords().end());
  // y_i = X_i - X_{i+1}; pin X_d = 0 so X_i = y_i + ... + y_{d-1}.
  std::vector<Coord> z(spec.d(), 0);
  for (std::size_t i = spec.d() - 1; i-- > 0;) z[i] = z[i + 1] + x[i];
  return z;
}

std::size_t step_sum_cap(const WalkSpectrum& spec) {
  if (spec.kind() == WalkKind::Simple) return std::size_t{1} << 17;
  return spec.dim() <= 3 ? std::size_t{1} << 13 : std::size_t{1} << 12;
}

// ---------------------------------------------------------------------------
// Fourier quadrature over dyadic shells around theta = 0.
// ---------------------------------------------------------------------------

struct GaussRule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

GaussRule gauss_legendre(std::size_t q) {
  GaussRule rule{std::vector<double>(q), std::vector<double>(q)};
  for (std::size_t i = 0; i < q; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(q) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t n = 2; n <= q; ++n) {
        const double p2 = ((2.0 * static_cast<double>(n) - 1.0) * x * p1 - (static_cast<double>(n) - 1.0) * p0) /
                          static_cast<double>(n);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(q) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Integral of cos(x . theta) / (1 - phi(theta)) over one box.
class CellIntegrator {
 public:
  CellIntegrator(const WalkSpectrum& spec, const LatticePoint& x, const GaussRule& rule)
      : spec_(spec), x_(x), rule_(rule), k_(spec.dim()), q_(rule.nodes.size()),
        half_sin_(k_ * q_), half_cos_(k_ * q_), freq_cos_(k_ * q_), freq_sin_(k_ * q_), weight_(k_ * q_) {}

  double integrate(std::span<const double> lower, double side) {
    for (std::size_t a = 0; a < k_; ++a) {
      for (std::size_t n = 0; n < q_; ++n) {
        const double theta = lower[a] + side * 0.5 * (rule_.nodes[n] + 1.0);
        const std::size_t idx = a * q_ + n;
        half_sin_[idx] = std::sin(theta / 2.0);
        half_cos_[idx] = std::cos(theta / 2.0);
        freq_cos_[idx] = std::cos(static_cast<double>(x_[a]) * theta);
        freq_sin_[idx] = std::sin(static_cast<double>(x_[a]) * theta);
        weight_[idx] = rule_.weights[n] * side * 0.5;
      }
    }
    std::array<std::size_t, kFourierMaxDim> node{};
    double total = 0.0;
    const double inv_d = 2.0 / static_cast<double>(spec_.d());
    for (;;) {
      double w = 1.0;
      double re = 1.0;
      double im = 0.0;
      double denom = 0.0;
      for (std::size_t a = 0; a < k_; ++a) {
        const std::size_t idx = a * q_ + node[a];
        w *= weight_[idx];
        const double c = freq_cos_[idx];
        const double s = freq_sin_[idx];
        const double nre = re * c - im * s;
        im = re * s + im * c;
        re = nre;
      }
      if (spec_.kind() == WalkKind::Simple) {
        for (std::size_t a = 0; a < k_; ++a) {
          const double s = half_sin_[a * q_ + node[a]];
          denom += s * s;
        }
      } else {
        const double s_first = half_sin_[node[0]];
        const double s_last = half_sin_[(k_ - 1) * q_ + node[k_ - 1]];
        denom = s_first * s_first + s_last * s_last;
        for (std::size_t a = 0; a + 1 < k_; ++a) {
          const std::size_t i0 = a * q_ + node[a];
          const std::size_t i1 = (a + 1) * q_ + node[a + 1];
          const double s = half_sin_[i1] * half_cos_[i0] - half_cos_[i1] * half_sin_[i0];
          denom += s * s;
        }
      }
      total += w * re / (inv_d * denom);
      std::size_t a = 0;
      while (a < k_ && ++node[a] == q_) node[a++] = 0;
      if (a == k_) break;
    }
    return total;
  }

 private:
  const WalkSpectrum& spec_;
  const LatticePoint& x_;
  const GaussRule& rule_;
  std::size_t k_;
  std::size_t q_;
  std::vector<double> half_sin_, half_cos_, freq_cos_, freq_sin_, weight_;
};

struct ShellSums {
  std::vector<double> fine;
  std::vector<double> coarse;
};

ShellSums shell_sums(const WalkSpectrum& spec, const LatticePoint& x, std::size_t q, std::size_t levels) {
  const std::size_t k = spec.dim();
  const GaussRule fine_rule = gauss_legendre(q);
  const GaussRule coarse_rule = gauss_legendre(q - 2);
  // Cells of the 4^k grid that are outside the central 2^k block, one from
  // each mirror pair (the integrand is even).
  std::vector<std::vector<std::size_t>> cells;
  std::vector<std::size_t> c(k, 0);
  for (;;) {
    const bool inner = std::all_of(c.begin(), c.end(), [](std::size_t v) { return v == 1 || v == 2; });
    std::vector<std::size_t> mirror(k);
    for (std::size_t a = 0; a < k; ++a) mirror[a] = 3 - c[a];
    if (!inner && c < mirror) cells.push_back(c);
    std::size_t a = 0;
    while (a < k && ++c[a] == 4) c[a++] = 0;
    if (a == k) break;
  }
  ShellSums sums{std::vector<double>(levels), std::vector<double>(levels)};
  for (std::size_t level = 0; level < levels; ++level) {
    const double half_width = kPi / std::ldexp(1.0, static_cast<int>(level));
    const double side = half_width / 2.0;
    CellIntegrator fine(spec, x, fine_rule);
    CellIntegrator coarse(spec, x, coarse_rule);
    std::vector<double> fine_parts;
    std::vector<double> coarse_parts;
    std::vector<double> lower(k);
    for (const auto& cell : cells) {
      for (std::size_t a = 0; a < k; ++a) lower[a] = -half_width + static_cast<double>(cell[a]) * side;
      fine_parts.push_back(2.0 * fine.integrate(lower, side));
      coarse_parts.push_back(2.0 * coarse.integrate(lower, side));
    }
    sums.fine[level] = pairwise_sum(fine_parts);
    sums.coarse[level] = pairwise_sum(coarse_parts);
  }
  return sums;
}

std::string cache_key(const WalkSpectrum& spec, const LatticePoint& x, double tol) {
  std::vector<Coord> c(x.coords().begin(), x.coords().end());
  if (spec.kind() == WalkKind::Simple) {
    for (Coord& v : c) v = v < 0 ? -v : v;
    std::sort(c.begin(), c.end());
  } else {
    // G(y) = G(-y) = G(reversed y).
    std::vector<Coord> neg(c.size());
    std::vector<Coord> rev(c.rbegin(), c.rend());
    std::vector<Coord> rev_neg(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      neg[i] = -c[i];
      rev_neg[i] = -rev[i];
    }
    c = std::min({c, neg, rev, rev_neg});
  }
  std::ostringstream os;
  os << spec.name() << '|';
  for (Coord v : c) os << v << ',';
  os << '|' << tol;
  return os.str();
}

void check_query(const WalkSpectrum& spec, const LatticePoint& x) {
  if (!spec.transient()) {
    throw RecurrentWalk(spec.name() + " is recurrent; its Green function diverges");
  }
  if (x.dim() != spec.dim()) throw DimensionMismatch("query point dimension differs from the walk dimension");
}

}  // namespace

WalkSpectrum WalkSpectrum::simple(std::size_t d) {
  if (d == 0) throw InvalidArgument("dimension must be >= 1");
  return WalkSpectrum(WalkKind::Simple, d);
}

WalkSpectrum WalkSpectrum::diagonal_difference(std::size_t d) {
  if (d < 2) throw InvalidArgument("difference walk needs d >= 2");
  return WalkSpectrum(WalkKind::DiagonalDifference, d);
}

std::string WalkSpectrum::name() const {
  return (kind_ == WalkKind::Simple ? "simple(" : "diagonal_difference(") + std::to_string(d_) + ")";
}

double WalkSpectrum::character(std::span<const double> theta) const {
  if (theta.size() != dim()) throw DimensionMismatch("theta dimension differs from the walk dimension");
  double s = 0.0;
  if (kind_ == WalkKind::Simple) {
    for (double t : theta) s += std::cos(t);
  } else {
    s = std::cos(theta.front()) + std::cos(theta.back());
    for (std::size_t i = 0; i + 1 < theta.size(); ++i) s += std::cos(theta[i + 1] - theta[i]);
  }
  return s / static_cast<double>(d_);
}

double WalkSpectrum::one_minus_character(std::span<const double> theta) const {
  if (theta.size() != dim()) throw DimensionMismatch("theta dimension differs from the walk dimension");
  auto hav = [](double t) {
    const double s = std::sin(t / 2.0);
    return 2.0 * s * s;
  };
  double s = 0.0;
  if (kind_ == WalkKind::Simple) {
    for (double t : theta) s += hav(t);
  } else {
    s = hav(theta.front()) + hav(theta.back());
    for (std::size_t i = 0; i + 1 < theta.size(); ++i) s += hav(theta[i + 1] - theta[i]);
  }
  return s / static_cast<double>(d_);
}

std::string to_string(GreenMethod method) { return method == GreenMethod::Fourier ? "fourier" : "step_sum"; }

GreenValue green_step_sum(const WalkSpectrum& spec, const LatticePoint& x, double tol) {
  check_query(spec, x);
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const std::vector<Coord> z = x_offsets(spec, x);
  const bool diagonal = spec.kind() == WalkKind::DiagonalDifference;
  const double density = local_limit_constant(spec);
  const std::size_t k = spec.dim();
  Coord reach = 0;
  for (Coord v : z) reach += v < 0 ? -v : v;
  const std::size_t cap = step_sum_cap(spec);

  GreenValue best{0.0, std::numeric_limits<double>::infinity(), GreenMethod::StepSum};
  for (std::size_t n = std::max<std::size_t>(256, 16 * static_cast<std::size_t>(reach * reach)); n <= cap; n *= 2) {
    const std::vector<double> a = step_probabilities(spec.d(), z, diagonal, n, 0);
    const SeriesEstimate full = sum_with_tail(a, n, density, k);
    const SeriesEstimate half = sum_with_tail(a, n / 2, density, k);
    // Shrinkage of the model error from n/2 to n is 2^(k/2 + 1).
    const double observed = std::abs(full.value - half.value) / (std::pow(2.0, static_cast<double>(k) / 2.0 + 1.0) - 1.0);
    const double roundoff = 1e-15 * std::lgamma(static_cast<double>(n) + 1.0) * std::abs(full.value);
    const double bound = std::max(full.model_error, 2.0 * observed) + roundoff;
    if (bound < best.abs_error_bound) best = {full.value, bound, GreenMethod::StepSum};
    if (bound <= tol / 2.0) break;
  }
  return best;
}

GreenValue green_fourier(const WalkSpectrum& spec, const LatticePoint& x, double tol) {
  check_query(spec, x);
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const std::size_t k = spec.dim();
  if (k > kFourierMaxDim) throw InvalidArgument("Fourier quadrature is limited to dimension " + std::to_string(kFourierMaxDim));
  const std::size_t levels = k == 3 ? 30 : 16;
  const double ratio = std::ldexp(1.0, -static_cast<int>(k - 2));
  const double norm = std::pow(2.0 * kPi, -static_cast<double>(k));
  GreenValue best{0.0, std::numeric_limits<double>::infinity(), GreenMethod::Fourier};
  for (std::size_t q = k == 3 ? 10 : 8; q <= 20; q += 4) {
    const ShellSums sums = shell_sums(spec, x, q, levels);
    double quad_error = 0.0;
    for (std::size_t l = 0; l < levels; ++l) quad_error += std::abs(sums.fine[l] - sums.coarse[l]);
    // Central cube: shells shrink geometrically by 2^-(k-2).
    const double last = sums.fine[levels - 1];
    const double observed_ratio = last / sums.fine[levels - 2];
    const double remainder = last * ratio / (1.0 - ratio);
    const double remainder_alt = last * observed_ratio / (1.0 - observed_ratio);
    const double total = pairwise_sum(sums.fine) + remainder;
    const double bound = norm * (quad_error + std::abs(remainder - remainder_alt) + 1e-14 * std::abs(total)) +
                         1e-15 * std::abs(norm * total);
    if (bound < best.abs_error_bound) best = {norm * total, bound, GreenMethod::Fourier};
    if (bound <= tol / 2.0) break;
  }
  return best;
}

GreenEvaluation green_evaluate(const WalkSpectrum& spec, const LatticePoint& x, double tol) {
  check_query(spec, x);
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  static std::mutex cache_mutex;
  static std::map<std::string, GreenEvaluation> cache;
  const std::string key = cache_key(spec, x, tol);
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  GreenEvaluation ev;
  ev.step_sum = green_step_sum(spec, x, tol);
  ev.chosen = ev.step_sum;
  if (spec.dim() <= kFourierMaxDim) {
    ev.fourier = green_fourier(spec, x, tol);
    const double gap = std::abs(ev.fourier->value - ev.step_sum.value);
    if (gap > ev.fourier->abs_error_bound + ev.step_sum.abs_error_bound) {
      std::ostringstream os;
      os << "Fourier (" << ev.fourier->value << " +- " << ev.fourier->abs_error_bound << ") and step-sum ("
         << ev.step_sum.value << " +- " << ev.step_sum.abs_error_bound << ") disagree for " << spec.name() << " at "
         << to_string(x);
      throw ToleranceUnreachable(os.str());
    }
    if (ev.fourier->abs_error_bound < ev.chosen.abs_error_bound) ev.chosen = *ev.fourier;
  }
  if (ev.chosen.abs_error_bound > tol) {
    std::ostringstream os;
    os << "best error bound " << ev.chosen.abs_error_bound << " exceeds tolerance " << tol << " for " << spec.name()
       << " at " << to_string(x);
    throw ToleranceUnreachable(os.str());
  }
  std::lock_guard lock(cache_mutex);
  cache.emplace(key, ev);
  return ev;
}

GreenValue green_value(const WalkSpectrum& spec, const LatticePoint& x, double tol) {
  return green_evaluate(spec, x, tol).chosen;
}

namespace {
BoundedValue one_minus_inverse(const GreenValue& g) {
  // d(1 - 1/G) = dG / G^2, with G >= 1.
  const double lo = g.value - g.abs_error_bound;
  return {1.0 - 1.0 / g.value, g.abs_error_bound / (lo * lo)};
}
}  // namespace

BoundedValue return_probability(std::size_t d, double tol) {
  const WalkSpectrum spec = WalkSpectrum::simple(d);
  if (!spec.transient()) throw RecurrentWalk("the simple walk on Z^" + std::to_string(d) + " is recurrent");
  return one_minus_inverse(green_value(spec, LatticePoint::origin(d), tol));
}

BoundedValue diagonal_return_probability(std::size_t d, double tol) {
  if (d < 2) throw InvalidArgument("difference walk needs d >= 2");
  const WalkSpectrum spec = WalkSpectrum::diagonal_difference(d);
  if (!spec.transient()) throw RecurrentWalk("the difference walk of Z^" + std::to_string(d) + " is recurrent");
  return one_minus_inverse(green_value(spec, LatticePoint::origin(d - 1), tol));
}

BoundedValue operator+(const BoundedValue& a, const BoundedValue& b) {
  return {a.value + b.value, a.abs_error_bound + b.abs_error_bound};
}

BoundedValue operator-(const BoundedValue& a, const BoundedValue& b) {
  return {a.value - b.value, a.abs_error_bound + b.abs_error_bound};
}

BoundedValue operator*(const BoundedValue& a, const BoundedValue& b) {
  return {a.value * b.value, std::abs(a.value) * b.abs_error_bound + std::abs(b.value) * a.abs_error_bound +
                                 a.abs_error_bound * b.abs_error_bound};
}

BoundedValue operator*(double a, const BoundedValue& b) { return {a * b.value, std::abs(a) * b.abs_error_bound}; }

BoundedValue operator/(const BoundedValue& a, const BoundedValue& b) {
  const double lo = std::abs(b.value) - b.abs_error_bound;
  if (!(lo > 0.0)) throw InvalidArgument("divisor interval contains zero");
  const double q = a.value / b.value;
  return {q, (a.abs_error_bound + std::abs(q) * b.abs_error_bound) / lo};
}

BoundedValue green_far_field(const LatticePoint& x) {
  if (x.dim() != 3) throw InvalidArgument("the far-field expansion is implemented for Z^3 only");
  double r2 = 0.0;
  double r4 = 0.0;
  for (Coord c : x.coords()) {
    const double v = static_cast<double>(c) * static_cast<double>(c);
    r2 += v;
    r4 += v * v;
  }
  const double r = std::sqrt(r2);
  if (r < kFarFieldRadius) throw InvalidArgument("point too close to the origin for the far-field expansion");
  const double lead = 3.0 / (2.0 * kPi * r);
  const double value = lead * (1.0 + (5.0 * r4 / (r2 * r2) - 3.0) / (8.0 * r2));
  return {value, lead * 2.0 / (r2 * r2)};
}

std::size_t cyclic_distance(std::size_t d, std::size_t i, std::size_t j) {
  const std::size_t diff = i > j ? i - j : j - i;
  return std::min(diff, d - diff);
}

GreenValue offdiag_green(std::size_t d, std::size_t i, std::size_t j, double tol) {
  if (d < 4) throw RecurrentWalk("the difference walk of Z^" + std::to_string(d) + " is recurrent");
  if (i >= d || j >= d) throw InvalidArgument("indices must lie in 0..d-1");
  std::vector<Coord> y(d - 1, 0);
  if (j > 0) y[j - 1] += 1;
  if (i > 0) y[i - 1] -= 1;
  return green_value(WalkSpectrum::diagonal_difference(d), LatticePoint(std::move(y)), tol);
}

OffdiagSumCheck offdiag_sum_check(std::size_t d, std::size_t i, double tol) {
  OffdiagSumCheck out;
  double sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const GreenValue g = offdiag_green(d, i, j, tol);
    sum += g.value;
    out.error_bound += g.abs_error_bound;
  }
  out.sum_minus_one = sum - 1.0;
  out.limit = 28.0 / static_cast<double>(d);
  out.holds = out.sum_minus_one + out.error_bound <= out.limit;
  return out;
}

double diagonal_moment_integral(std::size_t d, std::size_t i, std::size_t j, std::size_t k) {
  if (d < 3) throw InvalidArgument("need d >= 3");
  if (d > 8) throw TooLarge("moment integrals are limited to d <= 8");
  if (i >= d || j >= d) throw InvalidArgument("indices must lie in 0..d-1");
  const std::size_t dim = d - 1;
  const WalkSpectrum spec = WalkSpectrum::diagonal_difference(d);
  // The integrand has degree <= k + 1 in each angle; a uniform grid with
  // more points than that is exact for it.
  const std::size_t m = k + 3;
  std::size_t total = 1;
  for (std::size_t a = 0; a < dim; ++a) total *= m;
  std::vector<double> values(total);
  std::vector<double> theta(dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t a = 0; a < dim; ++a) {
      theta[a] = -kPi + 2.0 * kPi * static_cast<double>(rest % m) / static_cast<double>(m);
      rest /= m;
    }
    const double ti = i == 0 ? 0.0 : theta[i - 1];
    const double tj = j == 0 ? 0.0 : theta[j - 1];
    values[idx] = std::cos(tj - ti) * std::pow(spec.character(theta), static_cast<double>(k));
  }
  return std::pow(2.0 * kPi, static_cast<double>(dim)) * pairwise_sum(values) / static_cast<double>(total);
}

double lemma_a5_check(std::size_t d, std::size_t i, std::size_t j, std::size_t k) {
  return std::abs(diagonal_moment_integral(d, i, j, k));
}

SweepTable asymptotic_sweep(std::size_t d_min, std::size_t d_max, double tol) {
  if (d_min < 3 || d_max < d_min) throw InvalidArgument("sweep needs 3 <= d_min <= d_max");
  if (d_max > 16) throw TooLarge("sweep limited to d <= 16");
  SweepTable table;
  for (std::size_t d = d_min; d <= d_max; ++d) {
    SweepRow row;
    row.d = d;
    const GreenValue g0 = green_value(WalkSpectrum::simple(d), LatticePoint::origin(d), tol);
    row.p = one_minus_inverse(g0);
    row.two_d_p = 2.0 * static_cast<double>(d) * row.p.value;
    if (d >= 4) {
      row.diag_p = diagonal_return_probability(d, tol);
      row.two_d_diag_p = 2.0 * static_cast<double>(d) * row.diag_p->value;
    }
    row.excess = {g0.value - 1.0 - 1.0 / (2.0 * static_cast<double>(d)), g0.abs_error_bound};
    row.d_excess = static_cast<double>(d) * row.excess.value;
    table.rows.push_back(row);
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const SweepRow& row = table.rows[r];
    const double dd = static_cast<double>(row.d);
    if (!(row.two_d_p > 1.0)) table.two_d_p_above_one = false;
    if (!(row.p.value > 1.0 / (2.0 * dd))) table.p_above_lower_bound = false;
    if (row.two_d_diag_p && !(*row.two_d_diag_p > 1.0)) table.two_d_diag_p_above_one = false;
    if (r == 0) continue;
    const SweepRow& prev = table.rows[r - 1];
    if (!(row.two_d_p < prev.two_d_p)) table.two_d_p_decreasing = false;
    if (!(row.d_excess < prev.d_excess)) table.d_excess_decreasing = false;
    if (row.diag_p && prev.diag_p) {
      if (!(row.diag_p->value <= prev.diag_p->value)) table.diag_p_nonincreasing = false;
      if (!(*row.two_d_diag_p < *prev.two_d_diag_p)) table.two_d_diag_p_decreasing = false;
    }
  }
  return table;
}

}  // namespace walkcover
