#pragma once

#include <span>
#include <string>
#include <variant>

#include "smddc/power_ladder.hpp"

namespace smddc {

// Per-slot transmission rules. Each returns how many packets user 1 sends in
// the slot and the transmit power that costs. A packet at level l over a
// channel with power gain g costs rho_l / g; the budget check is inclusive.

struct Oma {};
/// Up to `depth` packets, level l carried on the l-th distinct channel.
struct SymmetricNoma {
    int depth = 2;
};
/// Primary packet plus one level-2 packet on the best other channel.
struct SdoNoma {};
/// Primary packet plus level-2 packets on as many other channels as the budget allows.
struct FoNoma {};

using PolicyKind = std::variant<Oma, SymmetricNoma, SdoNoma, FoNoma>;

std::string policy_name(const PolicyKind& policy);
/// Ladder depth a policy needs: 1 for OMA, L for symmetric, 2 otherwise.
int required_depth(const PolicyKind& policy);
/// Largest packet count a policy can emit in one slot with K channels.
int max_packets(const PolicyKind& policy, int k_channels);

struct SlotDecision {
    int n_packets = 0;
    double power_spent = 0.0;
};

SlotDecision decide_oma(double own_gain, const PowerLadder& ladder, double omega);

/// `gains_by_level[m]` is the gain of the channel that carries level m+1.
/// Levels are filled in order; the first one that does not fit stops the fill.
SlotDecision decide_symmetric(std::span<const double> gains_by_level, const PowerLadder& ladder,
                              double omega);

SlotDecision decide_sdo(double own_gain, std::span<const double> cross_gains,
                        const PowerLadder& ladder, double omega);

SlotDecision decide_fo(double own_gain, std::span<const double> cross_gains,
                       const PowerLadder& ladder, double omega);

}  // namespace smddc
