#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace smddc {

/// Counter-based random stream.
///
/// Every output is a pure function of (key, counter), where the key is derived
/// from (seed, stream_index). Two streams with the same pair produce the same
/// sequence no matter which thread creates them or in which order. Nested
/// substreams (e.g. one per slot inside a session) are derived the same way,
/// so drawing more values in one slot never shifts the values of another.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_index() const noexcept { return index_; }

    /// Independent child stream keyed by `index`.
    RngStream substream(std::uint64_t index) const noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on the open interval (0, 1).
    double next_uniform() noexcept;

private:
    RngStream(std::uint64_t seed, std::uint64_t index, std::uint64_t key) noexcept
        : seed_(seed), index_(index), key_(key) {}

    std::uint64_t seed_;
    std::uint64_t index_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// One slot's power gains seen by the user under study.
/// `own` is the primary channel, `cross` the other K-1 channels.
struct SlotGains {
    double own = 0.0;
    std::vector<double> cross;
};

/// Exp(mean) variate by inversion. Strictly positive since the uniform never hits 0 or 1.
/// Throws std::invalid_argument if mean <= 0.
double draw_exponential(RngStream& stream, double mean);

/// Draws own ~ Exp(1) first, then K-1 iid Exp(1) cross gains.
/// The `symmetric` flag is accepted for interface parity: user 1's gains are
/// Exp(1) in both systems, and far-user gains never enter its decisions.
SlotGains draw_slot_gains(RngStream& stream, int k_channels, bool symmetric = true);

/// Allocation-free variant that reuses `out`'s storage.
void draw_slot_gains(RngStream& stream, int k_channels, SlotGains& out);

/// Copy of `gains` sorted nonincreasing. Throws std::invalid_argument if empty.
std::vector<double> sorted_descending(std::span<const double> gains);

}  // namespace smddc
