#pragma once

namespace tsecon::stats {

/// Two-sided Student-t tail probability P(|T| > |t|).
double student_t_two_sided(double t, double df);
/// Two-sided standard-normal tail probability P(|Z| > |z|).
double normal_two_sided(double z);
double normal_cdf(double z);
/// Upper tail P(F > f) for F(df1, df2).
double f_upper(double f, double df1, double df2);

}  // namespace tsecon::stats
