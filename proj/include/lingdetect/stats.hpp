#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lingdetect/detail/math.hpp"

namespace lingdetect {

struct ShapiroResult {
    double w = 0.0;
    double p_value = 0.0;
};

struct TTestResult {
    double t = 0.0;
    double p_value = 1.0;
    std::size_t df = 0;
};

namespace detail {

inline double poly(const double* c, int nord, double x) {
    double res = c[0];
    double xp = 1.0;
    for (int i = 1; i < nord; ++i) {
        xp *= x;
        res += c[i] * xp;
    }
    return res;
}

} // namespace detail

// Shapiro-Wilk normality test, algorithm AS R94 (Royston 1995) for full
// samples. Valid for 3 <= n <= 50 (the classical coefficient range this
// library commits to); W is affine-invariant in the sample.
inline ShapiroResult shapiro_wilk(std::vector<double> x) {
    const std::size_t n = x.size();
    if (n < 3 || n > 50)
        throw std::invalid_argument("shapiro_wilk requires 3 <= n <= 50");
    std::sort(x.begin(), x.end());
    if (x.back() - x.front() < 1e-19)
        throw std::invalid_argument("shapiro_wilk: zero-variance sample");

    static const double c1[6] = {0.0, 0.221157, -0.147981, -2.071190,
                                 4.434685, -2.706056};
    static const double c2[6] = {0.0, 0.042981, -0.293762, -1.752461,
                                 5.682633, -3.582633};
    static const double c3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
    static const double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static const double g[2] = {-2.273, 0.459};
    constexpr double sqrth = 0.70710678118654752440;
    constexpr double th = 0.375;
    constexpr double pi6 = 1.90985931710274;   // 6/pi
    constexpr double stqr = 1.04719755119660;  // asin(sqrt(3/4))

    const double an = static_cast<double>(n);
    const std::size_t n2 = n / 2;
    std::vector<double> a(n2);

    if (n == 3) {
        a[0] = sqrth;
    } else {
        const double an25 = an + 0.25;
        double summ2 = 0.0;
        for (std::size_t i = 1; i <= n2; ++i) {
            a[i - 1] = detail::normal_ppf((static_cast<double>(i) - th) / an25);
            summ2 += a[i - 1] * a[i - 1];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = detail::poly(c1, 6, rsn) - a[0] / ssumm2;
        std::size_t i1;
        double fac;
        if (n > 5) {
            i1 = 3;
            const double a2 = -a[1] / ssumm2 + detail::poly(c2, 6, rsn);
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[1] = a2;
        } else {
            i1 = 2;
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
        }
        a[0] = a1;
        for (std::size_t i = i1; i <= n2; ++i) a[i - 1] = -a[i - 1] / fac;
    }

    // W as the squared correlation between order statistics and coefficients.
    const double range = x[n - 1] - x[0];
    double sx = 0.0, sa = 0.0;
    {
        std::ptrdiff_t j = static_cast<std::ptrdiff_t>(n) - 1;
        sx = x[0] / range;
        sa = -a[0];
        for (std::size_t i = 2; i <= n; ++i, --j) {
            const double xi = x[i - 1] / range;
            sx += xi;
            const std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(i);
            if (ii != j) {
                const double sign = ii - j >= 0 ? 1.0 : -1.0;
                sa += sign * a[static_cast<std::size_t>(std::min(ii, j)) - 1];
            }
        }
    }
    sa /= an;
    sx /= an;
    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    {
        std::ptrdiff_t j = static_cast<std::ptrdiff_t>(n);
        for (std::size_t i = 1; i <= n; ++i, --j) {
            const std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(i);
            double asa;
            if (ii != j) {
                const double sign = ii - j >= 0 ? 1.0 : -1.0;
                asa = sign * a[static_cast<std::size_t>(std::min(ii, j)) - 1] - sa;
            } else {
                asa = -sa;
            }
            const double xsx = x[i - 1] / range - sx;
            ssa += asa * asa;
            ssx += xsx * xsx;
            sax += asa * xsx;
        }
    }
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    ShapiroResult res;
    res.w = 1.0 - w1;

    if (n == 3) {
        double pw = pi6 * (std::asin(std::sqrt(res.w)) - stqr);
        res.p_value = std::clamp(pw, 0.0, 1.0);
        return res;
    }
    const double y = std::log(w1);
    double m, s;
    if (n <= 11) {
        const double gamma = detail::poly(g, 2, an);
        if (y >= gamma) {
            res.p_value = 1e-99;
            return res;
        }
        const double yy = -std::log(gamma - y);
        m = detail::poly(c3, 4, an);
        s = std::exp(detail::poly(c4, 4, an));
        res.p_value = detail::normal_sf((yy - m) / s);
    } else {
        static const double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
        static const double c6[3] = {-0.4803, -0.082676, 0.0030302};
        const double xx = std::log(an);
        m = detail::poly(c5, 4, xx);
        s = std::exp(detail::poly(c6, 3, xx));
        res.p_value = detail::normal_sf((y - m) / s);
    }
    return res;
}

// Two-sided paired t-test over differences d = a - b, df = n - 1.
inline TTestResult paired_t_test(const std::vector<double>& a,
                                 const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("paired_t_test: length mismatch");
    const std::size_t n = a.size();
    if (n < 2) throw std::invalid_argument("paired_t_test requires n >= 2");
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    const double mean = detail::mean_of(d);
    const double sd = detail::sample_std(d);
    TTestResult res;
    res.df = n - 1;
    if (sd == 0.0) {
        if (mean == 0.0) {
            res.t = 0.0;
            res.p_value = 1.0;
            return res;
        }
        throw std::invalid_argument("degenerate: zero variance");
    }
    res.t = mean / (sd / std::sqrt(static_cast<double>(n)));
    res.p_value = detail::t_sf_two_sided(res.t, static_cast<double>(res.df));
    return res;
}

} // namespace lingdetect
