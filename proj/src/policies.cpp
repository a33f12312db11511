#include "smddc/policies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace smddc {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void check_budget(double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("policy: power budget must be positive");
}

void check_gain(double g) {
    if (!(g > 0.0)) throw std::invalid_argument("policy: channel gains must be positive");
}

// Level 1 on the primary channel; nothing else is tried if it does not fit.
bool primary_fits(double own_gain, const PowerLadder& ladder, double omega, SlotDecision& d) {
    check_gain(own_gain);
    check_budget(omega);
    const double cost = ladder.rho(1) / own_gain;
    if (cost > omega) return false;
    d.n_packets = 1;
    d.power_spent = cost;
    return true;
}

void check_asymmetric(std::span<const double> cross_gains, const PowerLadder& ladder) {
    if (cross_gains.empty())
        throw std::invalid_argument("policy: opportunistic NOMA needs at least one other channel");
    if (ladder.depth() < 2) throw std::invalid_argument("policy: opportunistic NOMA needs ladder depth >= 2");
    for (double g : cross_gains) check_gain(g);
}

}  // namespace

std::string policy_name(const PolicyKind& policy) {
    return std::visit(overloaded{[](const Oma&) { return std::string("oma"); },
                                 [](const SymmetricNoma&) { return std::string("sym"); },
                                 [](const SdoNoma&) { return std::string("sdo"); },
                                 [](const FoNoma&) { return std::string("fo"); }},
                      policy);
}

int required_depth(const PolicyKind& policy) {
    return std::visit(overloaded{[](const Oma&) { return 1; },
                                 [](const SymmetricNoma& s) { return s.depth; },
                                 [](const SdoNoma&) { return 2; }, [](const FoNoma&) { return 2; }},
                      policy);
}

int max_packets(const PolicyKind& policy, int k_channels) {
    return std::visit(overloaded{[](const Oma&) { return 1; },
                                 [](const SymmetricNoma& s) { return s.depth; },
                                 [](const SdoNoma&) { return 2; },
                                 [k_channels](const FoNoma&) { return k_channels; }},
                      policy);
}

SlotDecision decide_oma(double own_gain, const PowerLadder& ladder, double omega) {
    SlotDecision d;
    primary_fits(own_gain, ladder, omega, d);
    return d;
}

SlotDecision decide_symmetric(std::span<const double> gains_by_level, const PowerLadder& ladder,
                              double omega) {
    check_budget(omega);
    if (static_cast<int>(gains_by_level.size()) != ladder.depth())
        throw std::invalid_argument("decide_symmetric: need one gain per ladder level");
    SlotDecision d;
    const auto rho = ladder.levels();
    for (std::size_t m = 0; m < gains_by_level.size(); ++m) {
        check_gain(gains_by_level[m]);
        const double total = d.power_spent + rho[m] / gains_by_level[m];
        if (total > omega) break;
        d.power_spent = total;
        ++d.n_packets;
    }
    return d;
}

SlotDecision decide_sdo(double own_gain, std::span<const double> cross_gains,
                        const PowerLadder& ladder, double omega) {
    check_asymmetric(cross_gains, ladder);
    SlotDecision d;
    if (!primary_fits(own_gain, ladder, omega, d)) return d;
    const double best = *std::max_element(cross_gains.begin(), cross_gains.end());
    const double total = d.power_spent + ladder.rho(2) / best;
    if (total <= omega) {
        d.n_packets = 2;
        d.power_spent = total;
    }
    return d;
}

SlotDecision decide_fo(double own_gain, std::span<const double> cross_gains,
                       const PowerLadder& ladder, double omega) {
    check_asymmetric(cross_gains, ladder);
    SlotDecision d;
    if (!primary_fits(own_gain, ladder, omega, d)) return d;

    // Extra packets all sit at level 2; cheapest channels first.
    constexpr std::size_t kInline = 64;
    std::array<double, kInline> inline_buf;
    std::vector<double> heap_buf;
    std::span<double> order;
    if (cross_gains.size() <= kInline) {
        order = std::span<double>(inline_buf.data(), cross_gains.size());
    } else {
        heap_buf.resize(cross_gains.size());
        order = heap_buf;
    }
    std::copy(cross_gains.begin(), cross_gains.end(), order.begin());
    std::sort(order.begin(), order.end(), std::greater<>{});

    const double rho2 = ladder.rho(2);
    for (double g : order) {
        const double total = d.power_spent + rho2 / g;
        if (total > omega) break;
        d.power_spent = total;
        ++d.n_packets;
    }
    return d;
}

}  // namespace smddc
