#include "sqgrover/device.hpp"

#include <cmath>
#include <numbers>

namespace sqg {

double DeviceParams::coupling(int squid) const
{
    if (squid < 1 || squid > 3)
        throw DomainError("SQUID index must be 1..3");
    return g[static_cast<std::size_t>(squid - 1)];
}

double DeviceParams::omega(int squid, LevelPair transition) const
{
    if (auto it = omega_overrides.find({squid, transition}); it != omega_overrides.end())
        return it->second;
    return omega_default;
}

int DeviceParams::physical_level(int squid, int logical) const
{
    if (squid < 1 || squid > 3 || logical < 0 || logical > 1)
        throw DomainError("logical level lookup out of range");
    return level_map[static_cast<std::size_t>(squid - 1)][static_cast<std::size_t>(logical)];
}

double DeviceParams::dispersive_shift() const
{
    if (!(delta_c > 0.0))
        throw DomainError("dispersive shift needs delta_c > 0");
    return g[2] * g[2] / delta_c;
}

DeviceParams paper_device()
{
    DeviceParams p;
    const double g = 3e9;
    p.g = {g, g, g};
    p.delta_c = 10.0 * g;
    p.omega_default = 10.0 * g;
    p.gamma3 = 1.0 / 3.2e-6;
    p.gamma2 = 1.0 / 0.16e-3;
    p.kappa = 1.0 / 0.76e-6;
    return p;
}

void validate(const DeviceParams& p)
{
    if (!(p.g[0] > 0.0))
        throw DomainError("g1 must be positive (it is the time reference)");
    for (double gi : p.g)
        if (!(gi >= 0.0))
            throw DomainError("couplings must be nonnegative");
    if (!(p.delta_c >= 0.0) || !(p.omega_default >= 0.0) || !(p.gamma3 >= 0.0) || !(p.gamma2 >= 0.0) ||
        !(p.kappa >= 0.0))
        throw DomainError("rates and frequencies must be nonnegative");
    for (const auto& [key, w] : p.omega_overrides)
        if (!(w >= 0.0))
            throw DomainError("Rabi frequency overrides must be nonnegative");
    for (const auto& row : p.level_map)
        if (row[0] == row[1] || row[0] < 0 || row[0] > 1 || row[1] < 0 || row[1] > 1)
            throw DomainError("level map must send logical 0/1 to distinct physical levels 0/1");
}

std::vector<std::string> validity_warnings(const DeviceParams& p)
{
    std::vector<std::string> out;
    if (p.delta_c < 5.0 * p.g[2])
        out.push_back("delta_c < 5 g3: dispersive approximation is marginal");
    if (p.gamma2 > 0.0 && p.omega_default > 0.0) {
        // Level 2 is held for one 0<->2 pulse plus one exchange window.
        const double held = std::numbers::pi / (2.0 * p.omega_default) + std::numbers::pi / (2.0 * p.g[0]);
        if (held * p.gamma2 > 0.01)
            out.push_back("level-2 occupation time is not short against 1/gamma2");
    }
    return out;
}

double to_dimensionless(double seconds, double g_ref)
{
    if (!(g_ref > 0.0))
        throw DomainError("reference coupling must be positive");
    return seconds * g_ref;
}

double to_seconds(double gt, double g_ref)
{
    if (!(g_ref > 0.0))
        throw DomainError("reference coupling must be positive");
    return gt / g_ref;
}

}  // namespace sqg
