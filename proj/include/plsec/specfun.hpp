#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "plsec/quadrature.hpp"

namespace plsec {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240;

/// Compensated (Kahan) accumulator for the alternating finite sums of the
/// closed-form expressions, whose terms can dwarf the result.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

namespace detail {

inline double bessel_j0_series(double x) {
    // Sum of (-x^2/4)^k / (k!)^2; terms stay O(1) for |x| <= 8.
    const double q = -0.25 * x * x;
    double term = 1.0;
    KahanSum sum;
    sum.add(term);
    for (int k = 1; k <= 64; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum.add(term);
        if (std::fabs(term) < 1e-18) break;
    }
    return sum.value();
}

inline double bessel_j0_trig(double x) {
    // Midpoint rule on (1/pi) * int_0^pi cos(x sin t) dt. For a trigonometric
    // integrand the midpoint sum aliases only onto J_{2Nm}, negligible for
    // 2N well above |x|.
    constexpr int N = 64;
    constexpr double pi = 3.14159265358979323846264338327950288;
    double s = 0.0;
    for (int j = 0; j < N; ++j) {
        const double theta = pi * (j + 0.5) / N;
        s += std::cos(x * std::sin(theta));
    }
    return s / N;
}

// K0, K1 for x <= 2 via the convergent log series (DLMF 10.31.2):
//   K0 = -(ln(x/2)+g) I0 + sum_{k>=1} H_k q^k/(k!)^2
//   K1 = 1/x + (ln(x/2)+g) I1 - (x/4) sum_{k>=0} (H_k+H_{k+1}) q^k/(k!(k+1)!)
// with q = x^2/4, g the Euler-Mascheroni constant.
inline void bessel_k01_series(double x, double& k0, double& k1) {
    const double q = 0.25 * x * x;
    const double lg = std::log(0.5 * x) + kEulerGamma;
    double i0 = 1.0;
    double s0 = 0.0, s1 = 1.0;  // s1 k=0 term: H_0 + H_1 = 1
    double t0 = 1.0;            // q^k / (k!)^2
    double t1 = 1.0;            // q^k / (k! (k+1)!)
    double hk = 0.0;
    double i1sum = 1.0;         // I1 = (x/2) * i1sum
    for (int k = 1; k <= 40; ++k) {
        t0 *= q / (static_cast<double>(k) * k);
        t1 *= q / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k;
        i0 += t0;
        i1sum += t1;
        s0 += t0 * hk;
        s1 += t1 * (2.0 * hk + 1.0 / (k + 1));
        if (t0 < 1e-19 && t1 < 1e-19) break;
    }
    const double i1 = 0.5 * x * i1sum;
    k0 = -lg * i0 + s0;
    k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
}

// K0, K1 for x > 2 via Steed's continued fraction (CF2), near machine
// precision for this range.
inline void bessel_k01_cf2(double x, double& k0, double& k1) {
    constexpr double eps = 1e-16;
    constexpr double pi = 3.14159265358979323846264338327950288;
    const double mu2 = 0.0;  // integer order anchor
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) <= eps) break;
    }
    h = a1 * h;
    k0 = std::sqrt(pi / (2.0 * x)) * std::exp(-x) / s;
    k1 = k0 * (x + 0.5 - h) / x;
}

}  // namespace detail

/// Zero-order Bessel function of the first kind.
inline double bessel_j0(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("bessel_j0: non-finite input");
    x = std::fabs(x);
    return x <= 8.0 ? detail::bessel_j0_series(x) : detail::bessel_j0_trig(x);
}

/// Modified Bessel function of the second kind, nonnegative integer order.
inline double bessel_k(int order, double x) {
    if (order < 0) throw std::invalid_argument("bessel_k: order must be >= 0");
    if (!(x > 0.0)) throw std::domain_error("bessel_k: x must be positive");
    double k0, k1;
    if (x <= 2.0)
        detail::bessel_k01_series(x, k0, k1);
    else
        detail::bessel_k01_cf2(x, k0, k1);
    if (order == 0) return k0;
    double km = k0, kc = k1;
    for (int n = 1; n < order; ++n) {
        const double kn = km + (2.0 * n / x) * kc;
        km = kc;
        kc = kn;
    }
    return kc;
}

namespace detail {

// Scaled exponential integral e^x E1(x).
inline double expint_e1_scaled(double x) {
    if (x <= 1.0) {
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= 60; ++k) {
            term *= -x / k;
            sum += -term / k;
            if (std::fabs(term) < 1e-19) break;
        }
        return std::exp(x) * (-kEulerGamma - std::log(x) + sum);
    }
    // Lentz evaluation of the continued fraction
    //   E1(x) = e^-x / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
    constexpr double tiny = 1e-300;
    double f = tiny, C = f, D = 0.0;
    for (int k = 0; k <= 10000; ++k) {
        const double bk = x + 2.0 * k + 1.0;
        const double ak = (k == 0) ? 1.0 : -static_cast<double>(k) * k;
        D = bk + ak * D;
        if (D == 0.0) D = tiny;
        C = bk + ak / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        const double delta = C * D;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return f;
}

// Scaled upper incomplete gamma e^x Gamma(a, x) for a > 0.
inline double upper_gamma_scaled_pos(double a, double x) {
    if (x < a + 1.0) {
        // Series for the lower incomplete part, then complement.
        double term = 1.0 / a, sum = term;
        double ap = a;
        for (int k = 0; k < 500; ++k) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
        }
        const double lower = std::pow(x, a) * sum;  // e^x * gamma(a,x) / e^x... see below
        // gamma(a,x) = x^a e^-x sum  =>  e^x Gamma(a,x) = e^x Gamma(a) - x^a sum
        return std::exp(x) * std::tgamma(a) - lower;
    }
    // Lentz continued fraction for Gamma(a,x) = e^-x x^a CF.
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double C = 1.0 / tiny, D = 1.0 / b, f = D;
    for (int k = 1; k <= 10000; ++k) {
        const double an = -k * (k - a);
        b += 2.0;
        D = an * D + b;
        if (D == 0.0) D = tiny;
        C = b + an / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        const double delta = D * C;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::pow(x, a) * f;
}

}  // namespace detail

/// e^x * Gamma(a, x): the scaled generalized upper incomplete gamma, defined
/// for all real a (negative orders by downward recurrence anchored at
/// Gamma(0, x) = E1(x)). The scaling keeps products e^z Gamma(a, z) finite.
inline double upper_gamma_scaled(double a, double x) {
    if (!(x > 0.0)) throw std::domain_error("upper_gamma: x must be positive");
    if (a > 0.0) return detail::upper_gamma_scaled_pos(a, x);
    if (a == 0.0) return detail::expint_e1_scaled(x);
    // Downward recurrence e^x Gamma(s-1,x) = (e^x Gamma(s,x) - x^(s-1)) / (s-1),
    // stable because magnitudes grow toward negative s.
    const int n = static_cast<int>(std::ceil(-a));
    const double a0 = a + n;  // in [0, 1)
    double g = (a0 == 0.0) ? detail::expint_e1_scaled(x)
                           : detail::upper_gamma_scaled_pos(a0, x);
    double s = a0;
    for (int i = 0; i < n; ++i) {
        s -= 1.0;
        g = (g - std::pow(x, s)) / s;
    }
    return g;
}

/// Generalized upper incomplete gamma Gamma(a, x), x > 0, any real a.
inline double upper_gamma(double a, double x) {
    return std::exp(-x) * upper_gamma_scaled(a, x);
}

/// Numerical value of int_0^inf z^a/(z+b) exp(-mu z - nu/z) dz.
///
/// The substitution z = e^u removes the essential singularity at the origin;
/// the window of u is chosen from the log-integrand profile.
inline double upsilon_integral(int a, double b, double mu, double nu,
                               const QuadratureSettings& settings = {}) {
    if (a < 0) throw std::invalid_argument("upsilon_integral: a must be >= 0");
    if (!(b > 0.0)) throw std::invalid_argument("upsilon_integral: b must be positive");
    if (!(mu > 0.0)) throw std::invalid_argument("upsilon_integral: mu must be positive");
    if (!(nu >= 0.0)) throw std::invalid_argument("upsilon_integral: nu must be >= 0");
    settings.validate();

    auto log_g = [&](double u) {
        const double z = std::exp(u);
        return (a + 1) * u - std::log(z + b) - mu * z - nu / z;
    };
    // Scan for the peak of the transformed integrand, then clip where the
    // integrand has dropped ~60 nats below it.
    double peak = -std::numeric_limits<double>::infinity();
    double u_peak = 0.0;
    for (double u = -700.0; u <= 700.0; u += 0.25) {
        const double v = log_g(u);
        if (v > peak) {
            peak = v;
            u_peak = u;
        }
    }
    if (!std::isfinite(peak)) return 0.0;
    double lo = u_peak, hi = u_peak;
    while (lo > -745.0 && log_g(lo) > peak - 60.0) lo -= 0.5;
    while (hi < 745.0 && log_g(hi) > peak - 60.0) hi += 0.5;

    auto g = [&](double u) {
        const double z = std::exp(u);
        const double e = -mu * z - nu / z;
        if (e < -745.0) return 0.0;
        return std::exp((a + 1) * u + e) / (z + b);
    };
    return integrate(g, lo, hi, settings);
}

}  // namespace plsec
