#include "skillscore/statmath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace skillscore {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Initial probit estimate: Wichura's PPND16 rational approximations.
double probit_estimate(double p) {
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258) * r +
                3.64784832476320460504) * r + 5.76949722146069140550) * r +
              4.63033784615654529590) * r + 1.42343711074968357734);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940) * r +
              2.05319162663775882187) * r + 1.0);
        z = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580) * r +
              5.46378491116411436990) * r + 6.65790464350110377720);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-6) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        z = num / den;
    }
    return (q < 0.0) ? -z : z;
}

}  // namespace

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z * kInvSqrt2);
}

double normal_pdf(double z) {
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double probit(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("probit: p must lie strictly in (0,1), got " +
                                std::to_string(p));
    }
    double z = probit_estimate(p);
    // Two Halley steps against the CDF; cubic convergence takes the rational
    // estimate to full double precision. Skip when the CDF saturates (far
    // tails, where the estimate is already as good as doubles allow).
    for (int pass = 0; pass < 2; ++pass) {
        const double c = normal_cdf(z);
        if (c <= 0.0 || c >= 1.0) break;
        const double d = normal_pdf(z);
        if (d <= 0.0) break;
        const double u = (c - p) / d;
        z -= u / (1.0 + 0.5 * u * z);
    }
    return z;
}

namespace {

// Continued fraction for the regularized incomplete beta (Lentz's method).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double ibeta_reg(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * betacf(a, b, x) / a;
    }
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_two_sided_p(double t, int df) {
    if (df < 1) {
        throw std::domain_error("student_t_two_sided_p: df must be >= 1, got " +
                                std::to_string(df));
    }
    const double nu = static_cast<double>(df);
    // P(|T| > |t|) = I_{nu/(nu+t^2)}(nu/2, 1/2)
    const double x = nu / (nu + t * t);
    return std::clamp(ibeta_reg(0.5 * nu, 0.5, x), 0.0, 1.0);
}

double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw data_error("quantile: empty sample");
    p = std::clamp(p, 0.0, 1.0);
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

RegressionFit fit_ols(const Matrix& X, std::span<const double> y,
                      const InferenceOptions& opts) {
    const std::size_t n = X.rows;
    const std::size_t k = X.cols;
    if (y.size() != n) throw data_error("fit_ols: X and y row counts differ");
    if (n <= k) {
        throw insufficient_data_error("fit_ols: need more rows than columns (n=" +
                                      std::to_string(n) + ", k=" + std::to_string(k) + ")");
    }

    // Householder QR, transforming y alongside. R overwrites the upper
    // triangle of the work copy.
    Matrix A = X;
    std::vector<double> qty(y.begin(), y.end());
    std::vector<double> col_norms(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += A(i, j) * A(i, j);
        col_norms[j] = std::sqrt(s);
    }

    constexpr double kRankTol = 1e-10;
    std::vector<double> v(n, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += A(i, j) * A(i, j);
        norm = std::sqrt(norm);
        if (norm < kRankTol * col_norms[j] || norm == 0.0) {
            throw singular_design_error(
                j, "fit_ols: design column " + std::to_string(j) +
                       " is collinear with the preceding columns");
        }
        const double alpha = (A(j, j) >= 0.0) ? -norm : norm;
        double vnorm2 = 0.0;
        v[j] = A(j, j) - alpha;
        vnorm2 += v[j] * v[j];
        for (std::size_t i = j + 1; i < n; ++i) {
            v[i] = A(i, j);
            vnorm2 += v[i] * v[i];
        }
        A(j, j) = alpha;
        for (std::size_t i = j + 1; i < n; ++i) A(i, j) = 0.0;
        if (vnorm2 == 0.0) continue;
        for (std::size_t c = j + 1; c < k; ++c) {
            double dot = 0.0;
            for (std::size_t i = j; i < n; ++i) dot += v[i] * A(i, c);
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = j; i < n; ++i) A(i, c) -= f * v[i];
        }
        double dot = 0.0;
        for (std::size_t i = j; i < n; ++i) dot += v[i] * qty[i];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = j; i < n; ++i) qty[i] -= f * v[i];
    }

    RegressionFit fit;
    fit.n = n;
    fit.k = k;
    fit.coef.assign(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double s = qty[jj];
        for (std::size_t c = jj + 1; c < k; ++c) s -= A(jj, c) * fit.coef[c];
        fit.coef[jj] = s / A(jj, jj);
    }

    double rss = 0.0;
    for (std::size_t i = k; i < n; ++i) rss += qty[i] * qty[i];

    double mean_y = 0.0;
    for (double yi : y) mean_y += yi;
    mean_y /= static_cast<double>(n);
    double tss = 0.0;
    for (double yi : y) tss += (yi - mean_y) * (yi - mean_y);
    fit.r_squared = (tss > 0.0) ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 0.0;

    // diag((X'X)^-1) = squared row norms of R^-1
    const double sigma2 = rss / static_cast<double>(n - k);
    Matrix rinv(k, k);
    for (std::size_t c = 0; c < k; ++c) {
        rinv(c, c) = 1.0 / A(c, c);
        for (std::size_t i = c; i-- > 0;) {
            double s = 0.0;
            for (std::size_t m = i + 1; m <= c; ++m) s += A(i, m) * rinv(m, c);
            rinv(i, c) = -s / A(i, i);
        }
    }
    fit.se.assign(k, 0.0);
    fit.t.assign(k, 0.0);
    fit.p.assign(k, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
        double row2 = 0.0;
        for (std::size_t c = j; c < k; ++c) row2 += rinv(j, c) * rinv(j, c);
        fit.se[j] = std::sqrt(sigma2 * row2);
        if (fit.se[j] > 0.0) {
            fit.t[j] = fit.coef[j] / fit.se[j];
            fit.p[j] = (opts.reference == PValueReference::student_t)
                           ? student_t_two_sided_p(fit.t[j], static_cast<int>(n - k))
                           : 2.0 * (1.0 - normal_cdf(std::abs(fit.t[j])));
        }
    }
    return fit;
}

}  // namespace skillscore
