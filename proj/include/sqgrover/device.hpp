#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sqg {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Unordered pair of physical levels, stored low-high.
struct LevelPair {
    int lo = 0;
    int hi = 1;

    static LevelPair of(int a, int b) { return a < b ? LevelPair{a, b} : LevelPair{b, a}; }
    friend auto operator<=>(const LevelPair&, const LevelPair&) = default;
};

/// Logical qubit value -> physical level, per SQUID.
using LevelMap = std::array<std::array<int, 2>, 3>;

/// SQUIDs 1 and 2 use the natural encoding. SQUID 3 stores logical 1 in its
/// ground level and logical 0 in its first excited level.
inline constexpr LevelMap kPaperLevelMap{{{0, 1}, {0, 1}, {1, 0}}};

/// Device constants in SI units (rad/s for couplings and Rabi frequencies,
/// 1/s for decay rates).
struct DeviceParams {
    std::array<double, 3> g{};
    double delta_c = 0.0;
    double omega_default = 0.0;
    /// Per-(SQUID, transition) overrides; missing entries use omega_default.
    std::map<std::pair<int, LevelPair>, double> omega_overrides;
    double gamma3 = 0.0;
    /// Level-|2> decay. Only feeds validity checks, never the dynamics.
    double gamma2 = 0.0;
    double kappa = 0.0;
    LevelMap level_map = kPaperLevelMap;

    double g1() const { return g[0]; }
    double coupling(int squid) const;
    double omega(int squid, LevelPair transition) const;
    int physical_level(int squid, int logical) const;
    /// g3^2 / delta_c, the residual dispersive shift on SQUID 3.
    double dispersive_shift() const;
};

/// Which non-unitary channels are active.
struct NoiseConfig {
    bool enable_gamma3 = false;
    bool enable_kappa = false;
    bool enable_offresonant_leakage = false;
    /// Apply e^{-kappa t n} for the duration of classical pulses as well.
    bool kappa_during_pulses = false;

    bool any() const { return enable_gamma3 || enable_kappa || enable_offresonant_leakage; }
    static NoiseConfig ideal() { return {}; }
};

DeviceParams paper_device();

/// Throws DomainError on negative rates or a nonpositive g1.
void validate(const DeviceParams& params);

/// Human-readable warnings for regimes where the model's assumptions weaken
/// (delta_c < 5 g3, level-2 occupation not short against 1/gamma2).
std::vector<std::string> validity_warnings(const DeviceParams& params);

double to_dimensionless(double seconds, double g_ref);
double to_seconds(double gt, double g_ref);

}  // namespace sqg
