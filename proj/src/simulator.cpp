#include "smddc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <variant>

namespace smddc {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

unsigned resolve_workers(unsigned requested, std::uint64_t trials) {
    unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(n, trials));
}

// Splits [0, trials) into contiguous blocks, runs `body(begin, end)` per block on
// its own thread and returns the per-block results in block order.
template <class Result, class Body>
std::vector<Result> run_blocks(std::uint64_t trials, unsigned workers, Body body) {
    std::vector<Result> partial(workers);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = trials / workers;
    const std::uint64_t extra = trials % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
        pool.emplace_back([&partial, &body, w, begin, end] { partial[w] = body(begin, end); });
        begin = end;
    }
    pool.clear();  // joins
    return partial;
}

SessionStats make_stats(std::uint64_t trials, std::uint64_t errors, std::uint64_t seed) {
    SessionStats s;
    s.trials = trials;
    s.errors = errors;
    s.seed = seed;
    s.p_hat = static_cast<double>(errors) / static_cast<double>(trials);
    s.ci95_halfwidth = 1.96 * s.standard_error();
    return s;
}

template <class SlotFn>
SessionOutcome simulate(SlotFn& slot_packets, const SessionSpec& spec, const RngStream& stream,
                        bool full_trace) {
    SessionOutcome out;
    long delivered = 0;
    out.slots_used = spec.w_s();
    for (int t = 0; t < spec.w_s(); ++t) {
        RngStream slot = stream.substream(static_cast<std::uint64_t>(t));
        const int n = slot_packets(slot);
        if (n < 0) throw std::logic_error("slot rule returned a negative packet count");
        delivered += n;
        if (!out.success && delivered >= spec.w()) {
            out.success = true;
            out.slots_used = t + 1;
            if (!full_trace) break;
        }
    }
    out.packets_sent = delivered;
    return out;
}

}  // namespace

double SessionStats::standard_error() const {
    if (trials == 0) return 0.0;
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

SlotSampler::SlotSampler(const PolicyKind& policy, const SystemConfig& config)
    : policy_(policy), ladder_(config.ladder_for(policy)), omega_(config.omega) {
    config.validate();
    channels_ = std::visit(overloaded{[](const Oma&) { return 1; },
                                      [](const SymmetricNoma& s) { return s.depth; },
                                      [&](const SdoNoma&) { return config.k; },
                                      [&](const FoNoma&) { return config.k; }},
                           policy_);
    if (const auto* sym = std::get_if<SymmetricNoma>(&policy_)) {
        if (sym->depth > config.k) throw std::invalid_argument("symmetric NOMA depth exceeds k");
        by_level_.resize(static_cast<std::size_t>(sym->depth));
    }
    if (channels_ < 2 && (std::holds_alternative<SdoNoma>(policy_) || std::holds_alternative<FoNoma>(policy_)))
        throw std::invalid_argument("sdo/fo need k >= 2");
}

int SlotSampler::operator()(RngStream& slot_stream) {
    draw_slot_gains(slot_stream, channels_, gains_);
    return std::visit(
        overloaded{[&](const Oma&) { return decide_oma(gains_.own, ladder_, omega_).n_packets; },
                   [&](const SymmetricNoma&) {
                       by_level_[0] = gains_.own;
                       std::copy(gains_.cross.begin(), gains_.cross.end(), by_level_.begin() + 1);
                       return decide_symmetric(by_level_, ladder_, omega_).n_packets;
                   },
                   [&](const SdoNoma&) { return decide_sdo(gains_.own, gains_.cross, ladder_, omega_).n_packets; },
                   [&](const FoNoma&) { return decide_fo(gains_.own, gains_.cross, ladder_, omega_).n_packets; }},
        policy_);
}

SessionOutcome run_session(const SlotPacketFn& slot_packets, const SessionSpec& spec,
                           const RngStream& stream, bool full_trace) {
    return simulate(slot_packets, spec, stream, full_trace);
}

SessionOutcome run_session(const PolicyKind& policy, const SystemConfig& config,
                           const RngStream& stream, bool full_trace) {
    SlotSampler sampler(policy, config);
    return simulate(sampler, config.session(), stream, full_trace);
}

SessionStats estimate_session_error(const PolicyKind& policy, const SystemConfig& config,
                                    std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (trials < 1) throw std::invalid_argument("estimate_session_error: trials must be >= 1");
    config.validate();
    SlotSampler probe(policy, config);  // validates before any thread starts
    const SessionSpec spec = config.session();
    const unsigned n = resolve_workers(workers, trials);
    auto partial = run_blocks<std::uint64_t>(trials, n, [&](std::uint64_t begin, std::uint64_t end) {
        SlotSampler sampler(policy, config);
        std::uint64_t errors = 0;
        for (std::uint64_t i = begin; i < end; ++i)
            if (!simulate(sampler, spec, RngStream(seed, i), false).success) ++errors;
        return errors;
    });
    std::uint64_t errors = 0;
    for (auto e : partial) errors += e;
    return make_stats(trials, errors, seed);
}

SessionStats estimate_session_error(const SlotPacketFn& slot_packets, const SessionSpec& spec,
                                    std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (trials < 1) throw std::invalid_argument("estimate_session_error: trials must be >= 1");
    const unsigned n = resolve_workers(workers, trials);
    auto partial = run_blocks<std::uint64_t>(trials, n, [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t errors = 0;
        for (std::uint64_t i = begin; i < end; ++i)
            if (!simulate(slot_packets, spec, RngStream(seed, i), false).success) ++errors;
        return errors;
    });
    std::uint64_t errors = 0;
    for (auto e : partial) errors += e;
    return make_stats(trials, errors, seed);
}

PacketCountDistribution estimate_alphas(const PolicyKind& policy, const SystemConfig& config,
                                        std::uint64_t trials, unsigned workers) {
    if (trials < 1) throw std::invalid_argument("estimate_alphas: trials must be >= 1");
    config.validate();
    const auto cap = static_cast<std::size_t>(max_packets(policy, config.k));
    SlotSampler probe(policy, config);
    const unsigned n = resolve_workers(workers, trials);
    auto partial = run_blocks<std::vector<std::uint64_t>>(
        trials, n, [&](std::uint64_t begin, std::uint64_t end) {
            SlotSampler sampler(policy, config);
            std::vector<std::uint64_t> counts(cap + 1, 0);
            for (std::uint64_t i = begin; i < end; ++i) {
                RngStream slot = RngStream(config.seed, i).substream(0);
                ++counts[static_cast<std::size_t>(sampler(slot))];
            }
            return counts;
        });
    std::vector<std::uint64_t> counts(cap + 1, 0);
    for (const auto& part : partial)
        for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += part[j];
    std::vector<double> probs(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j)
        probs[j] = static_cast<double>(counts[j]) / static_cast<double>(trials);
    return PacketCountDistribution(std::move(probs));
}

}  // namespace smddc
