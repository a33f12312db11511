#pragma once

#include <span>
#include <vector>

namespace smddc {

/// Per-slot law of the number of delivered packets V: probs[n] = Pr(V = n).
/// The top entry is the probability of hitting the depth cap.
class PacketCountDistribution {
public:
    /// Throws std::invalid_argument unless entries lie in [0,1] and sum to 1 within 1e-12.
    explicit PacketCountDistribution(std::vector<double> probs);

    std::span<const double> probs() const noexcept { return probs_; }
    int max_packets() const noexcept { return static_cast<int>(probs_.size()) - 1; }
    /// Pr(V = n); zero outside the support.
    double operator[](int n) const noexcept;

private:
    std::vector<double> probs_;
};

/// W packets to deliver within W_S slots.
class SessionSpec {
public:
    /// Throws std::invalid_argument unless w_s >= w >= 1.
    SessionSpec(int w, int w_s);

    int w() const noexcept { return w_; }
    int w_s() const noexcept { return w_s_; }
    /// Load W / W_S in (0, 1].
    double kappa() const noexcept { return static_cast<double>(w_) / w_s_; }
    /// Relative delay W_S / W.
    double tau() const noexcept { return static_cast<double>(w_s_) / w_; }

private:
    int w_;
    int w_s_;
};

// Probabilities of sending at least one / two packets under iid Exp(1) gains.

/// Pr(rho1 / X <= omega) = exp(-rho1 / omega).
double beta1(double rho1, double omega);
/// Pr(rho1/X1 + rho2/X2 <= omega) = exp(-(rho1+rho2)/omega) * u K1(u), u = 2 sqrt(rho1 rho2) / omega.
double beta2_symmetric(double rho1, double rho2, double omega);
/// Pr(rho1/X1 + rho2/max(Z_2..Z_K) <= omega) as an alternating binomial sum.
/// Throws std::invalid_argument for k_users < 2 or k_users > 64.
double beta2_sdo(double rho1, double rho2, double omega, int k_users);
/// Far user's primary-channel probability with mean gain sigma2 and budget omega_far.
double beta1_far(double rho1, double sigma2, double omega_far);

/// alpha_0 = 1 - beta_1, alpha_m = beta_m - beta_{m+1}, top entry beta_L.
/// Throws std::invalid_argument unless 1 >= beta_1 >= ... >= beta_L >= 0.
PacketCountDistribution alphas_from_betas(std::span<const double> betas);

double mean_packets(const PacketCountDistribution& dist) noexcept;

struct ChernoffBound {
    double bound = 1.0;        ///< upper bound on the session error probability
    double lambda_star = 0.0;  ///< minimizing exponent; +inf when the infimum is at infinity
    bool feasible = false;     ///< false when E[V] <= kappa and the bound is the trivial 1
};

/// e^{lambda W} (E[e^{-lambda V}])^{W_S} at a fixed lambda >= 0.
double chernoff_at(const PacketCountDistribution& dist, const SessionSpec& spec, double lambda);

/// Closed form for V in {0,1} with Pr(V=1) = alpha1_bar.
ChernoffBound chernoff_oma(double alpha1_bar, const SessionSpec& spec);
/// Closed form for depth-2 distributions (three entries).
ChernoffBound chernoff_noma2(const PacketCountDistribution& dist, const SessionSpec& spec);
/// Numerical minimization over lambda for any depth.
ChernoffBound chernoff_generic(const PacketCountDistribution& dist, const SessionSpec& spec);

struct NomaFactor {
    double eta = 1.0;
    double z_star = 0.0;
};

/// eta = 1 - alpha2_bar / (1 + sqrt(alpha0))^2 with minimizer z* = sqrt(alpha0) / (1 + sqrt(alpha0)).
NomaFactor noma_factor(double alpha0, double alpha2_bar);

/// Exact Pr(sum_{t=1}^{W_S} V(t) < W) by dynamic programming on the running
/// success count, with every count >= W absorbed.
double exact_session_error(const PacketCountDistribution& dist, const SessionSpec& spec);

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Stops once the bracket is narrower than `tol`; returns the best point seen.
template <class F>
double golden_section_minimize(F&& f, double lo, double hi, double tol = 1e-12);

}  // namespace smddc

#include "smddc/detail/golden.hpp"
