#pragma once

namespace qpe {

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation, absolute error <= 1e-12 on [0,1].
double reg_inc_beta(double x, double a, double b);

/// Majority-vote success after N independent trials with per-trial success
/// p0 (N odd): sum_{s <= (N-1)/2} C(N,s) p0^{N-s} (1-p0)^s
///           = 1 - I_{1-p0}((N+1)/2, (N+1)/2).
double majority_vote_success(double p0, int n);

/// Smallest odd N with majority-vote failure <= eps.
/// Throws for p0 <= 0.5 (no finite N exists).
int n_repetitions(double p0, double eps);

}  // namespace qpe
