#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace smddc {

/// Received-power targets for successive interference cancellation.
///
/// Level l (1-based) must be received at rho_l = gamma * (sum_{m<l} rho_m + n0)
/// so that, once all higher levels are cancelled, its SINR is exactly gamma.
/// Level 1 is decoded last and sees only noise. All quantities are linear.
class PowerLadder {
public:
    /// Builds `depth` levels by the recursion. `margin` multiplies the target
    /// SINR (1 means no margin). Throws std::invalid_argument on
    /// non-positive gamma, n0, margin or depth.
    static PowerLadder build(double gamma, double n0, int depth, double margin = 1.0);

    double gamma() const noexcept { return gamma_; }
    double n0() const noexcept { return n0_; }
    int depth() const noexcept { return static_cast<int>(levels_.size()); }

    /// rho_l, 1-based. Throws std::out_of_range.
    double rho(int level) const;
    std::span<const double> levels() const noexcept { return levels_; }

    /// rho_level / (sum_{m<level} rho_m + n0). Throws std::out_of_range.
    double sinr_at_level(int level) const;

private:
    PowerLadder(double gamma, double n0, std::vector<double> levels)
        : gamma_(gamma), n0_(n0), levels_(std::move(levels)) {}

    double gamma_;
    double n0_;
    std::vector<double> levels_;
};

/// Closed form gamma * n0 * (1 + gamma)^(level-1); cross-check for the recursion.
double closed_form_rho(double gamma, double n0, int level);

}  // namespace smddc
