#pragma once

namespace radstruct::prob {

// Upper regularized incomplete gamma Q(a, x) = Γ(a, x) / Γ(a), computed by
// the classic series / continued-fraction split. Relative accuracy target
// 1e-10 on the statistics domain (validated against published tables and an
// independent quadrature oracle in the tests).
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution with df degrees of
// freedom: P(X >= x) = Q(df/2, x/2).
double chi_square_sf(double x, int df);

// Two-sided standard normal tail: P(|Z| >= |z|) = erfc(|z| / sqrt(2)).
double normal_two_sided_p(double z);

}  // namespace radstruct::prob
