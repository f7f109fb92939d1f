#include "sobmul/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "sobmul/errors.hpp"

namespace sobmul::quad {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GslEnv {
  GslEnv() { gsl_set_error_handler_off(); }
};
const GslEnv gsl_env_once{};

struct CallCtx {
  const Fn* f;
  long evaluations = 0;
};

double call_trampoline(double x, void* p) {
  auto* ctx = static_cast<CallCtx*>(p);
  ++ctx->evaluations;
  double v = (*ctx->f)(x);
  return std::isfinite(v) ? v : 0.0;  // GSL aborts on NaN; endpoints may be declared-singular
}

struct Workspace {
  explicit Workspace(std::size_t limit)
      : w(gsl_integration_workspace_alloc(limit)) {}
  ~Workspace() { gsl_integration_workspace_free(w); }
  gsl_integration_workspace* w;
};

QuadResult qag_core(const Fn& f, double a, double b, const Options& opt) {
  CallCtx ctx{&f};
  gsl_function gf{&call_trampoline, &ctx};
  Workspace ws(opt.limit);
  double value = 0, err = 0;
  int status = gsl_integration_qag(&gf, a, b, opt.abs_tol, opt.rel_tol,
                                   opt.limit, GSL_INTEG_GAUSS31, ws.w, &value, &err);
  if (status != 0) {
    // Retry with the extrapolating rule, which copes with mild endpoint trouble.
    double v2 = 0, e2 = 0;
    int s2 = gsl_integration_qags(&gf, a, b, opt.abs_tol, opt.rel_tol, opt.limit,
                                  ws.w, &v2, &e2);
    if (s2 == 0 || e2 < err) {
      value = v2;
      err = e2;
      status = s2;
    }
  }
  QuadResult r{value, err, ctx.evaluations};
  double need = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
  if (status != 0 && err > 50 * need) {
    throw AccuracyError("quadrature did not reach requested accuracy", value, err);
  }
  return r;
}

// Removes a declared (t-a)^(alpha-1) endpoint singularity by the power
// substitution t = a + z^p, p >= 2/alpha.
Fn substitute_left(const Fn& f, double a, double alpha, double width, double* z_hi) {
  double p = std::max(2.0, std::ceil(2.0 / alpha));
  *z_hi = std::pow(width, 1.0 / p);
  return [f, a, p](double z) {
    double t = a + std::pow(z, p);
    return f(t) * p * std::pow(z, p - 1.0);
  };
}

Fn substitute_right(const Fn& f, double b, double alpha, double width, double* z_hi) {
  double p = std::max(2.0, std::ceil(2.0 / alpha));
  *z_hi = std::pow(width, 1.0 / p);
  return [f, b, p](double z) {
    double t = b - std::pow(z, p);
    return f(t) * p * std::pow(z, p - 1.0);
  };
}

}  // namespace

QuadResult integrate(const Fn& f, double a, double b, const Options& opt) {
  if (!(b > a)) return {0.0, 0.0, 0};
  if (std::isinf(b)) return integrate_to_inf(f, a, opt);

  bool sing_a = opt.alpha_a < 1.0;
  bool sing_b = opt.alpha_b < 1.0;
  if (!sing_a && !sing_b) return qag_core(f, a, b, opt);

  QuadResult total{};
  auto accumulate = [&total](const QuadResult& r) {
    total.value += r.value;
    total.abs_error_estimate += r.abs_error_estimate;
    total.evaluations += r.evaluations;
  };
  double mid = sing_a && sing_b ? 0.5 * (a + b) : (sing_a ? b : a);
  Options inner = opt;
  inner.alpha_a = inner.alpha_b = 1.0;
  if (sing_a) {
    double zhi = 0;
    Fn g = substitute_left(f, a, opt.alpha_a, mid - a, &zhi);
    accumulate(qag_core(g, 0.0, zhi, inner));
  }
  if (sing_b) {
    double zhi = 0;
    Fn g = substitute_right(f, b, opt.alpha_b, b - mid, &zhi);
    accumulate(qag_core(g, 0.0, zhi, inner));
  }
  return total;
}

QuadResult integrate_to_inf(const Fn& f, double a, const Options& opt, InfMap map) {
  Options inner = opt;
  inner.alpha_b = 1.0;
  if (map == InfMap::Algebraic) {
    // t = a + z/(1-z): handled well by QAGS on [0,1) after substitution,
    // which mirrors what the QUADPACK qagiu transform does.
    Fn g = [&f, a](double z) {
      double om = 1.0 - z;
      double t = a + z / om;
      return f(t) / (om * om);
    };
    // a singular left endpoint survives the map at z = 0; decay behavior at
    // z = 1 is unknown, the qags retry inside qag_core copes with it
    if (opt.alpha_a < 1.0) inner.alpha_a = opt.alpha_a;
    return integrate(g, 0.0, 1.0 - 1e-14, inner);
  }
  // Exponential map t = a - log(1-z)
  Fn g = [&f, a](double z) {
    double om = 1.0 - z;
    double t = a - std::log(om);
    return f(t) / om;
  };
  if (opt.alpha_a < 1.0) inner.alpha_a = opt.alpha_a;
  return integrate(g, 0.0, 1.0 - 1e-16, inner);
}

namespace {

// Coarse scan + local refinement of the maximum of logf on [a,b].
double scan_log_max(const Fn& logf, double a, double b) {
  const int n = 256;
  double best = -kInf;
  double bx = a;
  for (int i = 0; i <= n; ++i) {
    double x = a + (b - a) * i / n;
    double v = logf(x);
    if (std::isfinite(v) && v > best) {
      best = v;
      bx = x;
    }
  }
  double step = (b - a) / n;
  for (int pass = 0; pass < 30 && step > 1e-14 * (b - a); ++pass) {
    step *= 0.5;
    for (double x : {bx - step, bx + step}) {
      if (x <= a || x >= b) continue;
      double v = logf(x);
      if (std::isfinite(v) && v > best) {
        best = v;
        bx = x;
      }
    }
  }
  return best;
}

}  // namespace

LogQuadResult integrate_log(const Fn& logf, double a, double b, const Options& opt) {
  double shift = scan_log_max(logf, a, b);
  if (!std::isfinite(shift)) return {-kInf, 0.0, 257};
  Fn g = [&logf, shift](double x) {
    double v = logf(x) - shift;
    return v < -745.0 ? 0.0 : std::exp(v);
  };
  QuadResult r = integrate(g, a, b, opt);
  if (r.value <= 0.0) return {-kInf, 0.0, r.evaluations};
  return {shift + std::log(r.value), r.abs_error_estimate / r.value, r.evaluations};
}

LogQuadResult integrate_log_to_inf(const Fn& logf, double a, const Options& opt, InfMap map) {
  if (map == InfMap::Algebraic) {
    Fn g = [&logf, a](double z) {
      double om = 1.0 - z;
      return logf(a + z / om) - 2.0 * std::log(om);
    };
    Options inner = opt;
    return integrate_log(g, 0.0, 1.0 - 1e-14, inner);
  }
  Fn g = [&logf, a](double z) {
    double om = 1.0 - z;
    return logf(a - std::log(om)) - std::log(om);
  };
  return integrate_log(g, 0.0, 1.0 - 1e-16, opt);
}

QuadResult integrate_segments(const Fn& f, const std::vector<double>& breaks,
                              double tail_spacing, double rel_tol,
                              int consecutive_small, std::size_t max_segments) {
  if (breaks.size() < 2) throw std::invalid_argument("integrate_segments: need >= 2 breakpoints");
  QuadResult total{};
  Options seg_opt;
  seg_opt.rel_tol = std::min(1e-9, rel_tol * 0.1);
  seg_opt.limit = 200;
  int small_run = 0;
  auto add_segment = [&](double lo, double hi) {
    QuadResult r = integrate(f, lo, hi, seg_opt);
    total.value += r.value;
    total.abs_error_estimate += r.abs_error_estimate;
    total.evaluations += r.evaluations;
    double scale = std::max(std::abs(total.value), 1e-300);
    if (std::abs(r.value) < rel_tol * scale)
      ++small_run;
    else
      small_run = 0;
  };
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    add_segment(breaks[k], breaks[k + 1]);
    if (small_run >= consecutive_small) return total;
  }
  double lo = breaks.back();
  for (std::size_t k = 0; k < max_segments; ++k) {
    add_segment(lo, lo + tail_spacing);
    lo += tail_spacing;
    if (small_run >= consecutive_small) return total;
  }
  throw AccuracyError("oscillatory tail did not converge", total.value,
                      total.abs_error_estimate);
}

}  // namespace sobmul::quad
