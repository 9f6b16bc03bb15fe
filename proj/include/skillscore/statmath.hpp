#ifndef SKILLSCORE_STATMATH_HPP
#define SKILLSCORE_STATMATH_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "skillscore/errors.hpp"

namespace skillscore {

// Standard normal CDF. Absolute error <= 1e-12 on finite inputs.
double normal_cdf(double z);

// Standard normal density.
double normal_pdf(double z);

// Standard normal quantile (probit). Rational approximation refined by two
// Halley steps against normal_cdf; absolute error <= 1e-9 on
// p in [1e-10, 1-1e-10]. Throws std::domain_error unless 0 < p < 1.
double probit(double p);

// P(|T_df| > |t|) for Student's t with df degrees of freedom, via the
// regularized incomplete beta function. Throws std::domain_error if df < 1.
double student_t_two_sided_p(double t, int df);

// Empirical quantile with linear interpolation between order statistics
// (type-7 rule: index h = (n-1)p on the sorted sample). The single
// interpolation convention used everywhere in this project.
// `sorted` must be ascending and non-empty; p is clamped to [0, 1].
double quantile_type7(std::span<const double> sorted, double p);

// Dense row-major matrix, just enough for regression work.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Reference distribution for coefficient p-values.
enum class PValueReference {
    student_t,  // t with n-k degrees of freedom (default)
    normal,
};

struct InferenceOptions {
    PValueReference reference = PValueReference::student_t;
};

// Ordinary least squares fit with classical inference.
// Vectors are indexed by design column; se[i] == 0 yields t[i] = 0, p[i] = 1
// (exact fit carries no evidence either way).
struct RegressionFit {
    std::vector<double> coef;
    std::vector<double> se;
    std::vector<double> t;
    std::vector<double> p;
    double r_squared = 0.0;
    std::size_t n = 0;
    std::size_t k = 0;
};

// Least squares via Householder QR (never normal equations). A column whose
// orthogonalized norm falls below 1e-10 times its original norm is declared
// collinear and reported by index in singular_design_error. Throws
// insufficient_data_error when n <= k.
RegressionFit fit_ols(const Matrix& X, std::span<const double> y,
                      const InferenceOptions& opts = {});

}  // namespace skillscore

#endif  // SKILLSCORE_STATMATH_HPP
