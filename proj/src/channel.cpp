#include "smddc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace smddc {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t index) noexcept {
    return mix64(parent ^ mix64(index + kGolden) ^ 0x5851f42d4c957f2dULL);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index) noexcept
    : RngStream(seed, stream_index, derive_key(mix64(seed), stream_index)) {}

RngStream RngStream::substream(std::uint64_t index) const noexcept {
    return RngStream(seed_, index_, derive_key(key_, index));
}

std::uint64_t RngStream::next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double RngStream::next_uniform() noexcept {
    // 53 random bits centred in their cell: lies in [2^-54, 1 - 2^-54].
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double draw_exponential(RngStream& stream, double mean) {
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw std::invalid_argument("draw_exponential: mean must be positive");
    return -mean * std::log(stream.next_uniform());
}

void draw_slot_gains(RngStream& stream, int k_channels, SlotGains& out) {
    if (k_channels < 1) throw std::invalid_argument("draw_slot_gains: k_channels must be >= 1");
    out.own = -std::log(stream.next_uniform());
    out.cross.resize(static_cast<std::size_t>(k_channels - 1));
    for (double& g : out.cross) g = -std::log(stream.next_uniform());
}

SlotGains draw_slot_gains(RngStream& stream, int k_channels, bool /*symmetric*/) {
    SlotGains gains;
    draw_slot_gains(stream, k_channels, gains);
    return gains;
}

std::vector<double> sorted_descending(std::span<const double> gains) {
    if (gains.empty()) throw std::invalid_argument("sorted_descending: empty gain list");
    std::vector<double> out(gains.begin(), gains.end());
    std::stable_sort(out.begin(), out.end(), std::greater<>{});
    return out;
}

}  // namespace smddc
