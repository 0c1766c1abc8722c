#pragma once

#include <string>

#include <Eigen/Dense>

#include "sqgrover/device.hpp"
#include "sqgrover/hilbert.hpp"

namespace sqg {

/// Ordered level pair (i, j). The order fixes the sign of the drive phase.
struct Transition {
    int from = 0;
    int to = 1;

    friend bool operator==(const Transition&, const Transition&) = default;
};

enum class StepKind { ClassicalPulse, ResonantExchange, DispersiveWait, Idle };

std::string to_string(StepKind kind);

/// One primitive evolution. Durations are in units of 1/g1.
struct PulseStep {
    StepKind kind = StepKind::Idle;
    int squid = 1;
    Transition transition{};
    double area = 0.0;   // Omega_ij * t, radians
    double phase = 0.0;  // drive phase, radians
    double duration = 0.0;
    int stage = 0;
    /// Runs at the same time as the previous step; contributes no extra time.
    bool concurrent = false;
};

/// exp(-i H t) for a general (possibly non-Hermitian) 2x2 generator, by the
/// closed form e^{-i m t}[cos(w t) I - i t sinc(w t)(H - m I)].
Eigen::Matrix2cd exp_2x2(const Eigen::Matrix2cd& generator, double t);

/// Resonant drive on transition (i, j) of one SQUID:
///   |i> -> cos(A)|i> - i e^{-i phi} sin(A)|j>
///   |j> -> cos(A)|j> - i e^{+i phi} sin(A)|i>
StateVector classical_pulse(const StateVector& state, int squid, Transition transition, double area, double phase);

/// SQUID-cavity exchange on the |2>-|3> transition of SQUID 1 or 2 for
/// `duration` (units of 1/g1). With decay enabled this is the no-jump
/// conditional evolution under
///   g_i (a^dag |2><3| + h.c.) - i Gamma3 |3><3| - i kappa a^dag a.
StateVector resonant_exchange(const StateVector& state, int squid, double duration, const NoiseConfig& noise,
                              const DeviceParams& params);

/// Dispersive phase on SQUID 3 in the single-photon manifold:
/// |2>|1> gets e^{+i d t}, |3>|1> gets e^{-i d t}, with d = g3^2 / delta_c.
StateVector dispersive_wait(const StateVector& state, double duration, const DeviceParams& params);

/// Scales each photon-n amplitude by e^{-kappa t n}. `kappa` is in units of g1.
StateVector free_cavity_decay(const StateVector& state, double duration, double kappa);

/// Closed-form amplitudes of a pulse of area pi/2 driven while the pair sees
/// a residual shift delta.
struct LeakageAmplitudes {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double xi = 0.0;
};

LeakageAmplitudes leakage_amplitudes(double omega, double delta);

/// SQUID-3 pulse on (logical 1, |2>) while the residual dispersive shift
/// delta = g3^2/delta_c acts in the single-photon manifold. Vacuum components
/// see the plain classical pulse. Reduces to classical_pulse at delta = 0.
StateVector pulse_with_dispersive_leakage(const StateVector& state, double area, double phase,
                                          const DeviceParams& params);

/// The (i, j) pair the leakage pulse drives on SQUID 3.
Transition squid3_drive_transition(const DeviceParams& params);

}  // namespace sqg
