#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace plsec {

struct QuadratureSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 200;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureSettings: tolerances must be positive");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadratureSettings: max_subdivisions must be >= 1");
    }
};

/// Thrown when adaptive subdivision runs out of budget. Carries the best
/// estimate so callers can still inspect how far off the result was.
class QuadratureFailure : public std::runtime_error {
  public:
    QuadratureFailure(double best, double err_bound)
        : std::runtime_error("quadrature failed to converge (estimate " +
                             std::to_string(best) + ", error bound " +
                             std::to_string(err_bound) + ")"),
          best_estimate(best), error_bound(err_bound) {}

    double best_estimate;
    double error_bound;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
inline constexpr double kGk15Nodes[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr double kGk15Weights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

// Embedded 7-point Gauss weights (at every odd Kronrod node).
inline constexpr double kG7Weights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

template <typename F>
inline void gk15(const F& f, double a, double b, double& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fv = f(c + h * kGk15Nodes[i]);
        resk += kGk15Weights[i] * fv;
        if (i % 2 == 1) resg += kG7Weights[i / 2] * fv;
    }
    result = resk * h;
    err = std::fabs((resk - resg) * h);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b].
template <typename F>
inline double integrate(const F& f, double a, double b,
                        const QuadratureSettings& settings = {}) {
    settings.validate();
    struct Interval {
        double a, b, value, error;
    };
    std::vector<Interval> stack;
    Interval whole{};
    whole.a = a;
    whole.b = b;
    detail::gk15(f, a, b, whole.value, whole.error);
    stack.push_back(whole);

    int splits = 0;
    while (splits < settings.max_subdivisions) {
        double total = 0.0, total_err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < stack.size(); ++i) {
            total += stack[i].value;
            total_err += stack[i].error;
            if (stack[i].error > stack[worst].error) worst = i;
        }
        if (total_err <= settings.abs_tol ||
            total_err <= settings.rel_tol * std::fabs(total))
            return total;

        Interval bad = stack[worst];
        const double mid = 0.5 * (bad.a + bad.b);
        Interval left{}, right{};
        left.a = bad.a;
        left.b = mid;
        right.a = mid;
        right.b = bad.b;
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        stack[worst] = left;
        stack.push_back(right);
        ++splits;
    }

    double total = 0.0, total_err = 0.0;
    for (const auto& iv : stack) {
        total += iv.value;
        total_err += iv.error;
    }
    if (total_err <= settings.abs_tol ||
        total_err <= settings.rel_tol * std::fabs(total))
        return total;
    throw QuadratureFailure(total, total_err);
}

/// Integrates f over [a, inf) by mapping the tail onto a finite interval.
template <typename F>
inline double integrate_to_infinity(const F& f, double a,
                                    const QuadratureSettings& settings = {}) {
    // t in (0,1], z = a + t/(1-t), dz = dt/(1-t)^2
    auto g = [&](double t) {
        const double omt = 1.0 - t;
        if (omt <= 0.0) return 0.0;
        const double z = a + t / omt;
        const double fz = f(z);
        return fz / (omt * omt);
    };
    return integrate(g, 0.0, 1.0, settings);
}

}  // namespace plsec
