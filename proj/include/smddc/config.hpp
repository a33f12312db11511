#pragma once

#include <cstdint>
#include <optional>

#include "smddc/analytic.hpp"
#include "smddc/policies.hpp"
#include "smddc/power_ladder.hpp"

namespace smddc {

/// One scenario. Powers and gains are linear; dB conversion happens at the CLI.
struct SystemConfig {
    double gamma = 4.0;                  ///< target SINR per level
    double omega = 20.0;                 ///< near-user per-slot power budget
    std::optional<double> omega_far;     ///< far-user budget (asymmetric system only)
    double n0 = 1.0;                     ///< noise power
    int k = 2;                           ///< channels (= users)
    int depth = 2;                       ///< power levels L
    double sigma2 = 1.0;                 ///< far-user mean channel gain
    int w = 50;                          ///< packets per stream
    int w_s = 55;                        ///< slots per session
    PolicyKind policy = SymmetricNoma{2};
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    double margin = 1.0;                 ///< multiplicative SINR margin

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;

    SessionSpec session() const { return SessionSpec(w, w_s); }
    /// Ladder sized for `policy`.
    PowerLadder ladder_for(const PolicyKind& policy) const;
};

}  // namespace smddc
