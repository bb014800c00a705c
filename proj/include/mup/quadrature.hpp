#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mup/common.hpp"
#include "mup/parallel.hpp"

namespace mup::quad {

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;  // includes the analytic tail bound on [0, inf)
  std::size_t evaluations = 0;
  double tail_bound = 0.0;
  double cutoff = 0.0;  // R* for semi-infinite calls
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, IntegrationResult best)
      : std::runtime_error(what), best_(best) {}
  const IntegrationResult& best_estimate() const { return best_; }

 private:
  IntegrationResult best_;
};

struct QuadratureOptions {
  std::size_t max_evaluations = 1'000'000;
  Execution execution = Execution::serial;
  // Smallest length scale the integrand resolves; seeds geometric panels toward 0
  // on semi-infinite problems. 0 = derive from the decay rate.
  double feature_scale = 0.0;
};

// |f(r)| <= scale * exp(-rate * r) for r >= 0.
struct DecayEnvelope {
  double rate = 0.0;
  double scale = 1.0;
};

struct Rectangle {
  double x0, x1, y0, y1;
};

namespace detail {

// Gauss-Kronrod 10/21 on [-1, 1]: nodes x_k (k even = Kronrod only), weights.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525634342, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <std::size_t M>
struct Panel {
  double a, b;
  std::array<double, M> value{};
  std::array<double, M> error{};
};

template <std::size_t M, class F>
Panel<M> gk21(const F& f, double a, double b) {
  using V = std::array<double, M>;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  V fc = f(c);
  V resk{}, resg{}, resabs{};
  std::array<V, 10> f1, f2;
  for (std::size_t i = 0; i < M; ++i) {
    resk[i] = kWgk[10] * fc[i];
    resabs[i] = std::abs(resk[i]);
  }
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    f1[j] = f(c - dx);
    f2[j] = f(c + dx);
    for (std::size_t i = 0; i < M; ++i) {
      const double s = f1[j][i] + f2[j][i];
      resk[i] += kWgk[j] * s;
      resabs[i] += kWgk[j] * (std::abs(f1[j][i]) + std::abs(f2[j][i]));
      if (j % 2 == 1) resg[i] += kWg[j / 2] * s;
    }
  }
  Panel<M> p{a, b, {}, {}};
  for (std::size_t i = 0; i < M; ++i) {
    const double mean = 0.5 * resk[i];
    double asc = kWgk[10] * std::abs(fc[i] - mean);
    for (int j = 0; j < 10; ++j) asc += kWgk[j] * (std::abs(f1[j][i] - mean) + std::abs(f2[j][i] - mean));
    asc *= std::abs(h);
    double err = std::abs((resk[i] - resg[i]) * h);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double absum = resabs[i] * std::abs(h);
    if (absum > std::numeric_limits<double>::min() / (50 * std::numeric_limits<double>::epsilon()))
      err = std::max(err, 50 * std::numeric_limits<double>::epsilon() * absum);
    p.value[i] = resk[i] * h;
    p.error[i] = err;
  }
  return p;
}

}  // namespace detail

template <std::size_t M>
struct VectorResult {
  std::array<double, M> value{};
  std::array<double, M> error{};
  std::size_t evaluations = 0;
  bool converged = false;
};

// Globally adaptive vector-valued integrator. Panels are refined in rounds:
// every panel whose weighted error exceeds the equal-share budget is bisected,
// and each round's batch of Gauss-Kronrod evaluations goes through the chosen
// Execution policy. Totals are summed in panel order, so the result does not
// depend on the thread count.
template <std::size_t M, class F>
class AdaptiveIntegrator {
 public:
  using V = std::array<double, M>;

  AdaptiveIntegrator(F f, QuadratureOptions opts) : f_(std::move(f)), opts_(opts) {}

  void seed(std::span<const double> breakpoints) {
    std::vector<std::pair<double, double>> todo;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
      if (!(breakpoints[i] < breakpoints[i + 1])) throw std::invalid_argument("quadrature: breakpoints must increase");
      todo.emplace_back(breakpoints[i], breakpoints[i + 1]);
    }
    evaluate_batch(todo, panels_);
  }

  // Refine until sum(err_i) + extra_i <= tol.bound(total_i) for every component.
  bool refine(const Tolerance& tol, const V& extra = V{}) {
    while (true) {
      V total = totals(), err = errors();
      V budget{};
      bool done = true;
      for (std::size_t i = 0; i < M; ++i) {
        budget[i] = tol.bound(total[i]) - extra[i];
        if (!(err[i] <= budget[i])) done = false;
      }
      if (done) return true;
      const double share = 1.0 / static_cast<double>(panels_.size());
      std::vector<std::size_t> split;
      for (std::size_t j = 0; j < panels_.size(); ++j) {
        double ratio = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
          if (budget[i] <= 0.0) {
            ratio = std::numeric_limits<double>::infinity();
            break;
          }
          ratio = std::max(ratio, panels_[j].error[i] / budget[i]);
        }
        if (ratio >= share && splittable(panels_[j])) split.push_back(j);
      }
      if (split.empty()) return false;
      if (evaluations_ + split.size() * 42 > opts_.max_evaluations) return false;
      std::vector<std::pair<double, double>> todo;
      todo.reserve(2 * split.size());
      for (std::size_t j : split) {
        const double mid = 0.5 * (panels_[j].a + panels_[j].b);
        todo.emplace_back(panels_[j].a, mid);
        todo.emplace_back(mid, panels_[j].b);
      }
      std::vector<detail::Panel<M>> fresh;
      evaluate_batch(todo, fresh);
      std::vector<detail::Panel<M>> next;
      next.reserve(panels_.size() + split.size());
      std::size_t s = 0;
      for (std::size_t j = 0; j < panels_.size(); ++j) {
        if (s < split.size() && split[s] == j) {
          next.push_back(fresh[2 * s]);
          next.push_back(fresh[2 * s + 1]);
          ++s;
        } else {
          next.push_back(panels_[j]);
        }
      }
      panels_ = std::move(next);
    }
  }

  V totals() const {
    V t{};
    for (const auto& p : panels_)
      for (std::size_t i = 0; i < M; ++i) t[i] += p.value[i];
    return t;
  }
  V errors() const {
    V t{};
    for (const auto& p : panels_)
      for (std::size_t i = 0; i < M; ++i) t[i] += p.error[i];
    return t;
  }
  std::size_t evaluations() const { return evaluations_; }
  std::size_t panel_count() const { return panels_.size(); }

 private:
  static bool splittable(const detail::Panel<M>& p) {
    const double mid = 0.5 * (p.a + p.b);
    return mid > p.a && mid < p.b && (p.b - p.a) > 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(p.a), std::abs(p.b));
  }

  void evaluate_batch(const std::vector<std::pair<double, double>>& todo, std::vector<detail::Panel<M>>& out) {
    auto fresh = map_indexed<detail::Panel<M>>(todo.size(), opts_.execution, [&](std::size_t k) {
      return detail::gk21<M>(f_, todo[k].first, todo[k].second);
    });
    evaluations_ += 21 * todo.size();
    out.insert(out.end(), fresh.begin(), fresh.end());
  }

  F f_;
  QuadratureOptions opts_;
  std::vector<detail::Panel<M>> panels_;
  std::size_t evaluations_ = 0;
};

template <std::size_t M, class F>
VectorResult<M> integrate_vector(F f, std::span<const double> breakpoints, const Tolerance& tol,
                                 const QuadratureOptions& opts = {}) {
  AdaptiveIntegrator<M, F> eng(std::move(f), opts);
  eng.seed(breakpoints);
  VectorResult<M> r;
  r.converged = eng.refine(tol);
  r.value = eng.totals();
  r.error = eng.errors();
  r.evaluations = eng.evaluations();
  return r;
}

// Cutoff R* with scale * exp(-rate R*) / rate <= tail_tol.
inline double tail_cutoff(const DecayEnvelope& env, double tail_tol) {
  const double r = std::log(env.scale / (env.rate * tail_tol)) / env.rate;
  return std::max(r, 0.0);
}
inline double tail_bound(const DecayEnvelope& env, double cutoff) {
  return env.scale * std::exp(-env.rate * cutoff) / env.rate;
}

inline void check_envelope(const DecayEnvelope& env) {
  if (!(env.rate > 0.0) || !std::isfinite(env.rate) || !(env.scale > 0.0) || !std::isfinite(env.scale))
    throw std::invalid_argument("quadrature: decay envelope needs finite rate > 0 and scale > 0");
}

// Semi-infinite vector integral. All components share the envelope.
// Coarse pass on [0, 4/rate] fixes the magnitude, the cutoff comes from the
// tail bound at half the tolerance, then the full range is refined at tol/2.
template <std::size_t M, class F>
VectorResult<M> integrate_vector_semi_infinite(F f, const DecayEnvelope& env, const Tolerance& tol,
                                               const QuadratureOptions& opts, double* cutoff_out = nullptr,
                                               double* tail_out = nullptr) {
  check_envelope(env);
  const double r0 = 4.0 / env.rate;
  double fs = opts.feature_scale > 0.0 ? std::min(opts.feature_scale, r0) : r0 / 1024;
  std::vector<double> bp{0.0};
  {
    std::vector<double> rev;
    for (double s = r0; s > fs; s /= 2) rev.push_back(s);
    rev.push_back(fs);
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
      if (*it > bp.back()) bp.push_back(*it);
  }
  AdaptiveIntegrator<M, F> eng(std::move(f), opts);
  eng.seed(bp);
  eng.refine(Tolerance(tol.abs_tol, std::max(1e-3, tol.rel_tol)));

  auto est = eng.totals();
  double tail_tol = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < M; ++i) tail_tol = std::min(tail_tol, 0.5 * tol.bound(est[i]));
  if (!(tail_tol > 0.0)) tail_tol = std::numeric_limits<double>::min();
  double cutoff = std::max(r0, tail_cutoff(env, tail_tol));
  std::vector<double> far{r0};
  for (double s = 2 * r0; s < cutoff; s *= 2) far.push_back(s);
  if (cutoff > far.back()) far.push_back(cutoff);
  if (far.size() > 1) eng.seed(far);
  cutoff = far.back();

  const double tb = tail_bound(env, cutoff);
  typename AdaptiveIntegrator<M, F>::V extra{};
  extra.fill(tb);
  VectorResult<M> r;
  r.converged = eng.refine(tol, extra);
  r.value = eng.totals();
  r.error = eng.errors();
  for (auto& e : r.error) e += tb;
  r.evaluations = eng.evaluations();
  if (cutoff_out) *cutoff_out = cutoff;
  if (tail_out) *tail_out = tb;
  return r;
}

IntegrationResult integrate_finite(const std::function<double(double)>& f, double a, double b, const Tolerance& tol,
                                   const QuadratureOptions& opts = {});
IntegrationResult integrate_semi_infinite(const std::function<double(double)>& f, const DecayEnvelope& env,
                                          const Tolerance& tol, const QuadratureOptions& opts = {});
IntegrationResult integrate_2d(const std::function<double(double, double)>& f, const Rectangle& dom,
                               const Tolerance& tol, const QuadratureOptions& opts = {});

}  // namespace mup::quad
