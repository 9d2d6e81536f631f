#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "qpl/types.hpp"
#include "qpl/weylsum.hpp"

namespace qpl::circle {

// Dissection parameters.  Q defaults to (log P)^{1/100}, which is ~1 at any
// feasible P (only q = 1 survives); empirical studies override Q and the
// override travels with the params so reports can flag it.
struct DissectionParams {
    double P = 2.0;
    double Q = 1.0;
    double delta = 0.1;
    double X = 16.0;
    bool q_override = false;

    static DissectionParams defaults(double P);
    DissectionParams with_Q(double Qoverride) const;
    void validate() const;
};

struct RationalApprox {
    i64 a = 0;
    i64 q = 1;
    double err = 0.0;  // |q*alpha - a|
};

// Best approximation of the second kind with q <= qmax, from the continued
// fraction of alpha (convergents and intermediate fractions).
RationalApprox best_rational_approx(double alpha, i64 qmax);

struct Box2D {
    i64 q, a, b;
};

// The admissible box N(q,a,b) containing (alpha,beta), smallest q first, or
// nullopt for the minor region n.
std::optional<Box2D> classify_point_2d(double alpha, double beta, const DissectionParams& par);

// One-dimensional arcs: |q*alpha - a| <= P^{-7/2} for some q <= sqrt(P).
bool is_major_1d(double alpha, double P);

// A(q) = sum_{(a,b,q)=1} q^{-s} prod_j S(q, a_j a + b_j b); real by conjugate
// pairing (the imaginary part is asserted tiny).
double A_of_q(i64 q, const QuarticPairSystem& system);

struct SeriesRow {
    i64 q;
    double A_q;
    double decay;  // |A_q| * q^{11/4}
};

struct SingularSeries {
    double value = 0.0;  // S(X) = sum_{q <= X} A(q)
    std::vector<SeriesRow> rows;
};

SingularSeries singular_series(const QuarticPairSystem& system, double X);

struct OscValue {
    std::complex<double> value;
    double err_estimate;
};

// tilde_v(u) = int_0^1 e(u t^4) dt and tilde_w(u,delta) = int_delta^1, by
// adaptive quadrature with oscillation-aware panel presplitting.
OscValue tilde_v(double u, double tol = 1e-10);
OscValue tilde_w(double u, double delta, double tol = 1e-10);

struct SingularIntegral {
    double value = 0.0;  // J(X) / P^{s-8}, the P-free rescaled integral
    std::vector<std::pair<double, double>> by_X;  // (X', value) along dyadic X' up to X
};

// Rescaled singular integral over [-X,X]^2 for a normalized system
// (a_2 = b_1 = 0, a_1 b_2 != 0).
SingularIntegral singular_integral(const QuarticPairSystem& system, double X, double delta);

// J(lambda; A) = int_M |g(a1 theta)|^{9/4} |h(A theta + lambda)|^4 dtheta,
// A = A_num/A_den.  Arc-wise composite quadrature over the major arcs of
// ggrid's P (uniform grids cannot resolve the P^{-7/2}-wide arcs).
double prune_integral_J(double lambda, i64 A_num, i64 A_den, i64 a1,
                        const weylsum::WeylGrid& ggrid, const SmoothParams& hparams,
                        i64 points_per_arc = 65);

// sup over sampled minor-arc points of |g(alpha)| at height P (delta = 0)
double minor_arc_sup_g(i64 P, i64 samples, u64 seed);

struct LocalizationCheck {
    i64 samples = 0;
    i64 positives = 0;         // sampled theta with |h(theta)| >= P Q^{-1/100}
    i64 counterexamples = 0;   // positives admitting no (a,q) in the window
    double threshold = 0.0;
};

// Empirical check of the large-|h| localization: every positive must admit
// a in Z, q <= Q^{1/10} with |q theta - a| <= Q^{1/10} P^{-4}.
LocalizationCheck localization_check(i64 P, double Q, i64 samples, u64 seed);

struct PredictionReport {
    double P = 0.0;
    i64 s = 0;
    double rho = 1.0;                 // (card A(P,R)/P)^{s-1}; 1 when R >= P
    double series_X = 0.0;            // S(X)
    double integral_X = 0.0;          // J(X)/P^{s-8}
    double leading = 0.0;             // rho * S(X) * J(X)/P^{s-8}
    double predicted_N = 0.0;         // leading * P^{s-8}
    double X = 0.0, delta = 0.0;
    bool smoothness_off = true;
    bool scope_warning = false;       // s < 22
};

PredictionReport main_term_prediction(const QuarticPairSystem& system, const SmoothParams& sp,
                                      double X, double delta);

}  // namespace qpl::circle
