#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "smddc/analytic.hpp"
#include "smddc/channel.hpp"
#include "smddc/config.hpp"
#include "smddc/policies.hpp"

namespace smddc {

struct SessionOutcome {
    bool success = false;
    int slots_used = 0;       ///< slot at which the count first reached W, else W_S
    long packets_sent = 0;
};

struct SessionStats {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double p_hat = 0.0;
    double ci95_halfwidth = 0.0;
    std::uint64_t seed = 0;

    /// sqrt(p_hat (1 - p_hat) / trials)
    double standard_error() const;
};

/// Packets delivered in one slot, drawn from that slot's own substream.
using SlotPacketFn = std::function<int(RngStream& slot_stream)>;

/// Draws fresh gains for each slot and applies a policy. Holds scratch
/// buffers, so use one instance per thread.
class SlotSampler {
public:
    SlotSampler(const PolicyKind& policy, const SystemConfig& config);
    int operator()(RngStream& slot_stream);

private:
    PolicyKind policy_;
    PowerLadder ladder_;
    double omega_;
    int channels_;
    SlotGains gains_;
    std::vector<double> by_level_;
};

/// Slot t of a session uses stream.substream(t). With `full_trace` the session
/// runs all W_S slots; otherwise it stops once W packets are through.
SessionOutcome run_session(const SlotPacketFn& slot_packets, const SessionSpec& spec,
                           const RngStream& stream, bool full_trace = false);
SessionOutcome run_session(const PolicyKind& policy, const SystemConfig& config,
                           const RngStream& stream, bool full_trace = false);

/// Session i draws from RngStream(seed, i). Sessions are split into contiguous
/// blocks over `workers` threads (0 = hardware concurrency) and the counts are
/// summed, so the result does not depend on the worker count.
SessionStats estimate_session_error(const PolicyKind& policy, const SystemConfig& config,
                                    std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

/// Same, for an arbitrary per-slot rule (the callable must be thread-safe).
SessionStats estimate_session_error(const SlotPacketFn& slot_packets, const SessionSpec& spec,
                                    std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

/// Empirical per-slot packet-count frequencies over `trials` independent slots,
/// slot i drawn from RngStream(config.seed, i).substream(0).
PacketCountDistribution estimate_alphas(const PolicyKind& policy, const SystemConfig& config,
                                        std::uint64_t trials, unsigned workers = 0);

}  // namespace smddc
