#include "smddc/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

namespace smddc {
namespace {

void positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
}

}  // namespace

void SystemConfig::validate() const {
    positive(gamma, "gamma");
    positive(omega, "omega");
    positive(n0, "n0");
    positive(sigma2, "sigma2");
    positive(margin, "margin");
    if (omega_far) positive(*omega_far, "omega_far");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (depth < 1 || depth > k) throw std::invalid_argument("depth must satisfy 1 <= depth <= k");
    if (w < 1) throw std::invalid_argument("w must be >= 1");
    if (w_s < w) throw std::invalid_argument("ws must be >= w");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (const auto* sym = std::get_if<SymmetricNoma>(&policy)) {
        if (sym->depth < 1 || sym->depth > k)
            throw std::invalid_argument("symmetric NOMA depth must satisfy 1 <= L <= k");
    }
    if ((std::holds_alternative<SdoNoma>(policy) || std::holds_alternative<FoNoma>(policy)) && k < 2)
        throw std::invalid_argument("sdo/fo need k >= 2");
}

PowerLadder SystemConfig::ladder_for(const PolicyKind& p) const {
    return PowerLadder::build(gamma, n0, required_depth(p), margin);
}

}  // namespace smddc
