#include "mup/quadrature.hpp"

namespace mup::quad {

namespace {

using V1 = std::array<double, 1>;

IntegrationResult to_result(const VectorResult<1>& r) {
  return {r.value[0], r.error[0], r.evaluations, 0.0, 0.0};
}

}  // namespace

IntegrationResult integrate_finite(const std::function<double(double)>& f, double a, double b, const Tolerance& tol,
                                   const QuadratureOptions& opts) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("integrate_finite: need a < b");
  const double bp[2] = {a, b};
  auto r = integrate_vector<1>([&f](double x) { return V1{f(x)}; }, bp, tol, opts);
  auto res = to_result(r);
  if (!r.converged) throw QuadratureError("integrate_finite: tolerance not reached within budget", res);
  return res;
}

IntegrationResult integrate_semi_infinite(const std::function<double(double)>& f, const DecayEnvelope& env,
                                          const Tolerance& tol, const QuadratureOptions& opts) {
  double cutoff = 0.0, tail = 0.0;
  auto r = integrate_vector_semi_infinite<1>([&f](double x) { return V1{f(x)}; }, env, tol, opts, &cutoff, &tail);
  auto res = to_result(r);
  res.cutoff = cutoff;
  res.tail_bound = tail;
  if (!r.converged) throw QuadratureError("integrate_semi_infinite: tolerance not reached within budget", res);
  return res;
}

IntegrationResult integrate_2d(const std::function<double(double, double)>& f, const Rectangle& dom,
                               const Tolerance& tol, const QuadratureOptions& opts) {
  if (!(dom.x0 < dom.x1) || !(dom.y0 < dom.y1)) throw std::invalid_argument("integrate_2d: empty rectangle");
  const Tolerance inner_tol(tol.abs_tol / (2 * (dom.x1 - dom.x0)), tol.rel_tol / 2);
  const Tolerance outer_tol = tol.scaled(0.5);
  QuadratureOptions inner_opts = opts;
  inner_opts.execution = Execution::serial;
  std::size_t inner_evals = 0;
  bool inner_ok = true;
  auto outer = [&](double x) {
    const double bp[2] = {dom.y0, dom.y1};
    auto r = integrate_vector<1>([&](double y) { return V1{f(x, y)}; }, bp, inner_tol, inner_opts);
#pragma omp atomic
    inner_evals += r.evaluations;
    if (!r.converged) {
#pragma omp atomic write
      inner_ok = false;
    }
    return V1{r.value[0]};
  };
  const double bp[2] = {dom.x0, dom.x1};
  auto r = integrate_vector<1>(outer, bp, outer_tol, opts);
  // each inner integral met its own target; their integrated error is at most half the request
  IntegrationResult res{r.value[0], r.error[0] + 0.5 * tol.bound(r.value[0]), inner_evals, 0.0, 0.0};
  if (!r.converged || !inner_ok) throw QuadratureError("integrate_2d: tolerance not reached within budget", res);
  return res;
}

}  // namespace mup::quad
