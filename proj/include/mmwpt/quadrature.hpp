#pragma once

#include <functional>
#include <vector>

namespace mmwpt::quad {

enum class TailPolicy { truncate_at_radius, exp_transform };

struct QuadSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  TailPolicy tail_policy = TailPolicy::exp_transform;
  double trunc_radius = 1e7;  // used by truncate_at_radius only

  QuadSpec looser(double factor) const {
    QuadSpec s = *this;
    s.rel_tol *= factor;
    s.abs_tol *= factor;
    return s;
  }
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Adaptive Gauss-Kronrod integration of f over [a,b].
QuadResult integrate(const Fn1& f, double a, double b, const QuadSpec& spec = {});

/// As integrate, but the initial subdivision is forced through the given
/// interior breakpoints (kinks such as the max{t,D} clamp).
QuadResult integrate(const Fn1& f, double a, double b,
                     const std::vector<double>& breakpoints,
                     const QuadSpec& spec = {});

/// Integration of f over [a, inf) per the spec's tail policy.
QuadResult integrate_semi_inf(const Fn1& f, double a, const QuadSpec& spec = {});
QuadResult integrate_semi_inf(const Fn1& f, double a,
                              const std::vector<double>& breakpoints,
                              const QuadSpec& spec = {});

/// Iterated 2-D integration over [ax,bx] x [ay,by]; inner integral runs one
/// tolerance decade tighter than the requested spec.
QuadResult integrate_2d(const Fn2& f, double ax, double bx, double ay, double by,
                        const QuadSpec& spec = {});

}  // namespace mmwpt::quad
