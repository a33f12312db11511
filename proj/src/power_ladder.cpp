#include "smddc/power_ladder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace smddc {

PowerLadder PowerLadder::build(double gamma, double n0, int depth, double margin) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("power ladder: gamma must be positive, got " + std::to_string(gamma));
    if (!(n0 > 0.0) || !std::isfinite(n0))
        throw std::invalid_argument("power ladder: n0 must be positive, got " + std::to_string(n0));
    if (!(margin > 0.0) || !std::isfinite(margin))
        throw std::invalid_argument("power ladder: margin must be positive");
    if (depth < 1)
        throw std::invalid_argument("power ladder: depth must be >= 1, got " + std::to_string(depth));

    const double target = gamma * margin;
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(depth));
    double below = 0.0;  // sum of lower levels, interference seen by the next one
    for (int l = 0; l < depth; ++l) {
        const double rho = target * (below + n0);
        levels.push_back(rho);
        below += rho;
    }
    return PowerLadder(target, n0, std::move(levels));
}

double PowerLadder::rho(int level) const {
    if (level < 1 || level > depth())
        throw std::out_of_range("power ladder: level " + std::to_string(level) + " outside 1.." +
                                std::to_string(depth()));
    return levels_[static_cast<std::size_t>(level - 1)];
}

double PowerLadder::sinr_at_level(int level) const {
    const double signal = rho(level);
    double interference = n0_;
    for (int m = 1; m < level; ++m) interference += levels_[static_cast<std::size_t>(m - 1)];
    return signal / interference;
}

double closed_form_rho(double gamma, double n0, int level) {
    if (level < 1) throw std::out_of_range("closed_form_rho: level must be >= 1");
    return gamma * n0 * std::pow(1.0 + gamma, level - 1);
}

}  // namespace smddc
