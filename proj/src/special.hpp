#pragma once

namespace garchlim {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLogSqrt2Pi = 0.9189385332046727417803297364056176;

double normal_pdf(double z);
double normal_log_pdf(double z);
double normal_cdf(double z);

// Regularized lower incomplete gamma P(s, x), s > 0, x >= 0.
// Series expansion for x < s + 1, Lentz continued fraction otherwise.
double regularized_gamma_p(double s, double x);

}  // namespace garchlim
