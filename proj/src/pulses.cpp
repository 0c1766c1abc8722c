#include "sqgrover/pulses.hpp"

#include <cmath>
#include <numbers>

namespace sqg {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx sinc(cplx z)
{
    if (std::abs(z) < 1e-4) {
        const cplx z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

void check_transition(Transition t)
{
    if (t.from == t.to)
        throw DomainError("pulse transition needs two distinct levels");
    if (t.from < 0 || t.from >= kLevels || t.to < 0 || t.to >= kLevels)
        throw BoundsError("pulse transition level outside 0..3");
}

Eigen::Matrix4cd pulse_matrix(Transition t, double area, double phase)
{
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    const double c = std::cos(area);
    const double s = std::sin(area);
    m(t.from, t.from) = c;
    m(t.to, t.to) = c;
    m(t.to, t.from) = -kI * std::exp(-kI * phase) * s;
    m(t.from, t.to) = -kI * std::exp(kI * phase) * s;
    return m;
}

}  // namespace

std::string to_string(StepKind kind)
{
    switch (kind) {
    case StepKind::ClassicalPulse: return "pulse";
    case StepKind::ResonantExchange: return "exchange";
    case StepKind::DispersiveWait: return "dispersive";
    case StepKind::Idle: return "idle";
    }
    return "unknown";
}

Eigen::Matrix2cd exp_2x2(const Eigen::Matrix2cd& h, double t)
{
    const cplx mean = 0.5 * (h(0, 0) + h(1, 1));
    const cplx half_split = 0.5 * (h(0, 0) - h(1, 1));
    const cplx w = std::sqrt(half_split * half_split + h(0, 1) * h(1, 0));
    const Eigen::Matrix2cd k = h - mean * Eigen::Matrix2cd::Identity();
    return std::exp(-kI * mean * t) * (std::cos(w * t) * Eigen::Matrix2cd::Identity() - kI * t * sinc(w * t) * k);
}

StateVector classical_pulse(const StateVector& state, int squid, Transition transition, double area, double phase)
{
    check_transition(transition);
    return apply_squid_operator(state, squid, pulse_matrix(transition, area, phase));
}

StateVector resonant_exchange(const StateVector& state, int squid, double duration, const NoiseConfig& noise,
                              const DeviceParams& params)
{
    if (squid != 1 && squid != 2)
        throw DomainError("resonant exchange is only defined for SQUIDs 1 and 2");
    if (duration < 0.0)
        throw DomainError("negative exchange duration");

    const double g_ref = params.g1();
    const double g = params.coupling(squid) / g_ref;
    const double gamma = noise.enable_gamma3 ? params.gamma3 / g_ref : 0.0;
    const double kappa = noise.enable_kappa ? params.kappa / g_ref : 0.0;
    const int n_max = state.n_max();

    const CVector& in = state.amplitudes();
    CVector out = in;
    auto at = [&](const BasisLabel& l) { return static_cast<Eigen::Index>(basis_index(l, n_max)); };

    // Spectator levels of the other two SQUIDs index 16 independent copies.
    for (int a = 0; a < kLevels; ++a) {
        for (int b = 0; b < kLevels; ++b) {
            BasisLabel base = squid == 1 ? BasisLabel{0, a, b, 0} : BasisLabel{a, 0, b, 0};
            for (int n = 0; n <= n_max; ++n) {
                // Uncoupled levels 0, 1 only see photon loss.
                for (int lvl : {0, 1}) {
                    const auto i = at(base.with_squid(squid, lvl).with_photons(n));
                    out[i] = in[i] * std::exp(-kappa * n * duration);
                }
            }
            // |2>|0> is dark.
            // |3>|n> couples to |2>|n+1> with strength g sqrt(n+1).
            for (int n = 0; n < n_max; ++n) {
                const auto i3 = at(base.with_squid(squid, 3).with_photons(n));
                const auto i2 = at(base.with_squid(squid, 2).with_photons(n + 1));
                Eigen::Matrix2cd h;
                const double c = g * std::sqrt(static_cast<double>(n + 1));
                h << cplx(0.0, -(gamma + kappa * n)), c, c, cplx(0.0, -kappa * (n + 1));
                const Eigen::Matrix2cd u = exp_2x2(h, duration);
                const cplx x3 = in[i3];
                const cplx x2 = in[i2];
                out[i3] = u(0, 0) * x3 + u(0, 1) * x2;
                out[i2] = u(1, 0) * x3 + u(1, 1) * x2;
            }
            // Top of the truncation: |3>|n_max> has no partner.
            const auto top = at(base.with_squid(squid, 3).with_photons(n_max));
            out[top] = in[top] * std::exp(-(gamma + kappa * n_max) * duration);
        }
    }
    return StateVector(std::move(out), n_max);
}

StateVector dispersive_wait(const StateVector& state, double duration, const DeviceParams& params)
{
    if (duration < 0.0)
        throw DomainError("negative dispersive wait");
    const int n_max = state.n_max();
    if (n_max < 1)
        return state;
    const double g_ref = params.g1();
    const double shift = params.dispersive_shift() / g_ref;
    const cplx up = std::exp(kI * shift * duration);
    const cplx down = std::exp(-kI * shift * duration);

    CVector out = state.amplitudes();
    for (int s1 = 0; s1 < kLevels; ++s1) {
        for (int s2 = 0; s2 < kLevels; ++s2) {
            out[static_cast<Eigen::Index>(basis_index({s1, s2, 2, 1}, n_max))] *= up;
            out[static_cast<Eigen::Index>(basis_index({s1, s2, 3, 1}, n_max))] *= down;
        }
    }
    return StateVector(std::move(out), n_max);
}

StateVector free_cavity_decay(const StateVector& state, double duration, double kappa)
{
    if (duration < 0.0)
        throw DomainError("negative decay duration");
    const int n_max = state.n_max();
    CVector out = state.amplitudes();
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        const auto n = static_cast<int>(i % (n_max + 1));
        if (n != 0)
            out[i] *= std::exp(-kappa * duration * n);
    }
    return StateVector(std::move(out), n_max);
}

LeakageAmplitudes leakage_amplitudes(double omega, double delta)
{
    if (!(omega > 0.0))
        throw DomainError("leakage amplitudes need a positive Rabi frequency");
    const double root = std::sqrt(delta * delta + 4.0 * omega * omega);
    const double xi = std::numbers::pi * root / (4.0 * omega);
    return {std::cos(xi), delta * std::sin(xi) / root, 2.0 * omega * std::sin(xi) / root, xi};
}

Transition squid3_drive_transition(const DeviceParams& params) { return {params.physical_level(3, 1), 2}; }

StateVector pulse_with_dispersive_leakage(const StateVector& state, double area, double phase,
                                          const DeviceParams& params)
{
    const Transition tr = squid3_drive_transition(params);
    const double omega = params.omega(3, LevelPair::of(tr.from, tr.to));
    if (!(omega > 0.0))
        throw DomainError("leakage pulse needs a nonzero SQUID-3 Rabi frequency");
    const double delta = params.dispersive_shift();
    if (state.n_max() < 1)
        return classical_pulse(state, 3, tr, area, phase);

    // Traceless driven pair in the one-photon manifold, time in units of 1/omega.
    Eigen::Matrix2cd h;
    h << 0.5 * delta / omega, std::exp(kI * phase), std::exp(-kI * phase), -0.5 * delta / omega;
    const Eigen::Matrix2cd u = exp_2x2(h, area);

    StateVector out = classical_pulse(state, 3, tr, area, phase);
    CVector& amps = out.mutable_amplitudes();
    const CVector& in = state.amplitudes();
    const int n_max = state.n_max();
    for (int s1 = 0; s1 < kLevels; ++s1) {
        for (int s2 = 0; s2 < kLevels; ++s2) {
            const auto ii = static_cast<Eigen::Index>(basis_index({s1, s2, tr.from, 1}, n_max));
            const auto ij = static_cast<Eigen::Index>(basis_index({s1, s2, tr.to, 1}, n_max));
            const cplx xi = in[ii];
            const cplx xj = in[ij];
            amps[ii] = u(0, 0) * xi + u(0, 1) * xj;
            amps[ij] = u(1, 0) * xi + u(1, 1) * xj;
        }
    }
    return out;
}

}  // namespace sqg
