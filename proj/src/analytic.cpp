#include "smddc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "smddc/bessel.hpp"

namespace smddc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxSdoUsers = 64;
// Upper end of the lambda search. At lambda = 1024 every e^{-n lambda}, n >= 1,
// is below 1e-444, so nothing is lost by stopping there.
constexpr double kLambdaMax = 1024.0;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || std::isnan(v))
        throw std::invalid_argument(std::string(what) + " must be positive");
}

// log E[e^{-lambda V}] via log-sum-exp over the support.
double log_mgf(std::span<const double> probs, double lambda) {
    double peak = -kInf;
    for (std::size_t n = 0; n < probs.size(); ++n)
        if (probs[n] > 0.0) peak = std::max(peak, std::log(probs[n]) - lambda * static_cast<double>(n));
    double sum = 0.0;
    for (std::size_t n = 0; n < probs.size(); ++n)
        if (probs[n] > 0.0) sum += std::exp(std::log(probs[n]) - lambda * static_cast<double>(n) - peak);
    return peak + std::log(sum);
}

ChernoffBound infeasible() { return ChernoffBound{1.0, 0.0, false}; }

}  // namespace

PacketCountDistribution::PacketCountDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("packet count distribution: empty");
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("packet count distribution: entry outside [0,1]");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("packet count distribution: entries sum to " + std::to_string(total));
}

double PacketCountDistribution::operator[](int n) const noexcept {
    if (n < 0 || n > max_packets()) return 0.0;
    return probs_[static_cast<std::size_t>(n)];
}

SessionSpec::SessionSpec(int w, int w_s) : w_(w), w_s_(w_s) {
    if (w < 1) throw std::invalid_argument("session: W must be >= 1");
    if (w_s < w) throw std::invalid_argument("session: W_S must be >= W");
}

double beta1(double rho1, double omega) {
    require_positive(rho1, "beta1: rho1");
    require_positive(omega, "beta1: omega");
    return std::exp(-rho1 / omega);
}

double beta2_symmetric(double rho1, double rho2, double omega) {
    require_positive(rho1, "beta2: rho1");
    require_positive(rho2, "beta2: rho2");
    require_positive(omega, "beta2: omega");
    const double u = 2.0 * std::sqrt(rho1 * rho2) / omega;
    return std::exp(-(rho1 + rho2) / omega) * x_k1(u);
}

double beta2_sdo(double rho1, double rho2, double omega, int k_users) {
    require_positive(rho1, "beta2_sdo: rho1");
    require_positive(rho2, "beta2_sdo: rho2");
    require_positive(omega, "beta2_sdo: omega");
    if (k_users < 2) throw std::invalid_argument("beta2_sdo: needs K >= 2");
    if (k_users > kMaxSdoUsers)
        throw std::invalid_argument("beta2_sdo: K > 64 is not supported (alternating-sum cancellation)");

    // The m = 0 term of the inclusion-exclusion cancels the leading e^{-rho1/omega}
    // exactly, so the sum starts at m = 1.
    const int n = k_users - 1;
    const double log_n_fact = std::lgamma(n + 1.0);
    double sum = 0.0;
    for (int m = 1; m <= n; ++m) {
        const double log_binom = log_n_fact - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
        const double u = 2.0 * std::sqrt(m * rho1 * rho2) / omega;
        const double magnitude = std::exp(log_binom - (rho1 + m * rho2) / omega) * x_k1(u);
        sum += (m % 2 == 1) ? magnitude : -magnitude;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double beta1_far(double rho1, double sigma2, double omega_far) {
    require_positive(rho1, "beta1_far: rho1");
    require_positive(sigma2, "beta1_far: sigma2");
    require_positive(omega_far, "beta1_far: omega_far");
    return std::exp(-rho1 / (sigma2 * omega_far));
}

PacketCountDistribution alphas_from_betas(std::span<const double> betas) {
    if (betas.empty()) throw std::invalid_argument("alphas_from_betas: no betas");
    double prev = 1.0;
    for (double b : betas) {
        if (!(b >= 0.0 && b <= prev))
            throw std::invalid_argument("alphas_from_betas: betas must satisfy 1 >= b1 >= ... >= bL >= 0");
        prev = b;
    }
    std::vector<double> probs;
    probs.reserve(betas.size() + 1);
    probs.push_back(1.0 - betas[0]);
    for (std::size_t m = 0; m + 1 < betas.size(); ++m) probs.push_back(betas[m] - betas[m + 1]);
    probs.push_back(betas.back());
    return PacketCountDistribution(std::move(probs));
}

double mean_packets(const PacketCountDistribution& dist) noexcept {
    double mean = 0.0;
    const auto p = dist.probs();
    for (std::size_t n = 1; n < p.size(); ++n) mean += static_cast<double>(n) * p[n];
    return mean;
}

double chernoff_at(const PacketCountDistribution& dist, const SessionSpec& spec, double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("chernoff_at: lambda must be >= 0");
    const double log_bound = lambda * spec.w() + spec.w_s() * log_mgf(dist.probs(), lambda);
    return std::exp(log_bound);
}

ChernoffBound chernoff_oma(double alpha1_bar, const SessionSpec& spec) {
    if (!(alpha1_bar >= 0.0 && alpha1_bar <= 1.0))
        throw std::invalid_argument("chernoff_oma: alpha1_bar outside [0,1]");
    const double kappa = spec.kappa();
    if (!(alpha1_bar > kappa)) return infeasible();
    if (alpha1_bar == 1.0) return ChernoffBound{0.0, kInf, true};

    // alpha1_bar > kappa forces kappa < 1 here.
    const double alpha0 = 1.0 - alpha1_bar;
    const double per_slot =
        kappa * std::log(alpha1_bar / kappa) + (1.0 - kappa) * std::log(alpha0 / (1.0 - kappa));
    const double lambda = -std::log(kappa / (1.0 - kappa) * alpha0 / alpha1_bar);
    return ChernoffBound{std::min(1.0, std::exp(spec.w_s() * per_slot)), lambda, true};
}

ChernoffBound chernoff_noma2(const PacketCountDistribution& dist, const SessionSpec& spec) {
    if (dist.max_packets() != 2) throw std::invalid_argument("chernoff_noma2: needs a depth-2 distribution");
    const double a0 = dist[0];
    const double a1 = dist[1];
    const double a2 = dist[2];
    const double kappa = spec.kappa();
    if (!(a1 + 2.0 * a2 > kappa)) return infeasible();

    if (a0 == 0.0) {
        // Infimum approached as lambda -> inf: z^{-kappa} (a1 z + a2 z^2) -> 0, or a1 when kappa = 1.
        const double limit = kappa < 1.0 ? 0.0 : std::pow(a1, spec.w_s());
        return ChernoffBound{limit, kInf, true};
    }
    // Positive root of (2-kappa) a2 z^2 + (1-kappa) a1 z - kappa a0 = 0, written in
    // the conjugate form so that a2 -> 0 reduces smoothly to the OMA root.
    const double lin = (1.0 - kappa) * a1;
    const double disc = lin * lin + 4.0 * kappa * (2.0 - kappa) * a0 * a2;
    const double z = 2.0 * kappa * a0 / (lin + std::sqrt(disc));
    const double lambda = -std::log(z);
    const double per_slot = kappa * lambda + std::log(a0 + a1 * z + a2 * z * z);
    return ChernoffBound{std::min(1.0, std::exp(spec.w_s() * per_slot)), lambda, true};
}

ChernoffBound chernoff_generic(const PacketCountDistribution& dist, const SessionSpec& spec) {
    const double kappa = spec.kappa();
    if (!(mean_packets(dist) > kappa)) return infeasible();

    const auto probs = dist.probs();
    auto per_slot = [&](double lambda) { return kappa * lambda + log_mgf(probs, lambda); };

    // Bracket by doubling; the per-slot exponent is convex and decreasing at 0.
    double hi = 1.0;
    while (hi < kLambdaMax && per_slot(2.0 * hi) < per_slot(hi)) hi *= 2.0;
    const double upper = std::min(2.0 * hi, kLambdaMax);
    const double lambda = golden_section_minimize(per_slot, 0.0, upper, 1e-12);
    const double bound = std::min(1.0, std::exp(spec.w_s() * per_slot(lambda)));
    return ChernoffBound{bound, lambda, true};
}

NomaFactor noma_factor(double alpha0, double alpha2_bar) {
    if (!(alpha0 >= 0.0 && alpha0 <= 1.0) || !(alpha2_bar >= 0.0 && alpha2_bar <= 1.0))
        throw std::invalid_argument("noma_factor: probabilities must lie in [0,1]");
    if (alpha0 + alpha2_bar > 1.0 + 1e-12)
        throw std::invalid_argument("noma_factor: alpha0 + alpha2_bar exceeds 1");
    const double root = std::sqrt(alpha0);
    return NomaFactor{1.0 - alpha2_bar / ((1.0 + root) * (1.0 + root)), root / (1.0 + root)};
}

double exact_session_error(const PacketCountDistribution& dist, const SessionSpec& spec) {
    const int w = spec.w();
    const int slots = spec.w_s();
    const auto probs = dist.probs();
    const double work = static_cast<double>(slots) * w * static_cast<double>(probs.size());
    if (work > 1e10) throw std::invalid_argument("exact_session_error: W_S * W * (L+1) too large for the DP");

    // mass[c] = Pr(running count == c) for c < W; mass reaching W is done and dropped.
    std::vector<double> mass(static_cast<std::size_t>(w), 0.0);
    std::vector<double> next(mass.size());
    mass[0] = 1.0;
    for (int t = 0; t < slots; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int c = 0; c < w; ++c) {
            const double m = mass[static_cast<std::size_t>(c)];
            if (m == 0.0) continue;
            for (std::size_t n = 0; n < probs.size() && c + static_cast<int>(n) < w; ++n)
                next[static_cast<std::size_t>(c) + n] += m * probs[n];
        }
        mass.swap(next);
    }
    // Normalized inputs can still sum a few ulps past 1.
    return std::min(1.0, std::accumulate(mass.begin(), mass.end(), 0.0));
}

}  // namespace smddc
