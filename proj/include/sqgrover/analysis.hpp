#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sqgrover/device.hpp"
#include "sqgrover/gates.hpp"
#include "sqgrover/hilbert.hpp"

namespace sqg {

enum class ReportSource { Analytic, Quadrature, Simulation };

std::string to_string(ReportSource source);

struct FidelityReport {
    double r = 1.0;
    double f_ave = 1.0;
    double p = 1.0;
    ReportSource source = ReportSource::Analytic;
};

// ---------------------------------------------------------------------------
// Level decay (Gamma3) during the four exchange windows.

/// Amplitude surviving one pi/2g exchange under the -i Gamma3 |3><3| term:
/// r = (2g/lambda) e^{-eta} sin(theta), lambda = sqrt(4g^2 - Gamma3^2),
/// eta = pi Gamma3 / 4g, theta = pi lambda / 4g. Needs 0 <= gamma3 < 2g.
double r_factor(double gamma3, double g);

/// Phase-gate fidelity for the product input (cos nu|0> + sin nu|1>)^{x3}.
double phase_gate_fidelity(double r, double nu);

/// (63 + 48 r^2 + 164 r^4 + 32 r^6 + 8 r^8) / 315.
double favg_level_decay(double r);

/// Same average evaluated by 64-node Gauss-Legendre over nu (phi integrates
/// trivially since the fidelity does not depend on it).
double favg_level_decay_quadrature(double r);

using AmplitudeProfile = LogicalAmplitudes;

/// a'..h' for the shared-angle product state.
AmplitudeProfile generic_profile(double nu);

/// |a'|^2 + ... + r^8(|e'|^2 + |f'|^2) + r^4(|g'|^2 + |h'|^2).
double success_level_decay(const AmplitudeProfile& profile, double r);

// ---------------------------------------------------------------------------
// Cavity decay (kappa) during the exchange windows.

struct CavityDecayReport {
    double f_ave = 1.0;
    double p = 1.0;
};

/// Closed forms for the uniform input; `kappa * t` is the only combination
/// that matters, with t the exchange time.
CavityDecayReport favg_cavity_decay(double kappa, double t);

// ---------------------------------------------------------------------------
// Simulation-backed averages.

/// Images of the eight logical basis states under the phase gate.
std::vector<StateVector> phase_gate_images(const NoiseConfig& noise, const DeviceParams& params);

/// Output of the gate for an arbitrary logical input, by linearity.
StateVector apply_images(const std::vector<StateVector>& images, const AmplitudeProfile& input);

/// Joint |<psi_ideal|psi>|^2 where psi_ideal = Q_pi input (x) vacuum.
double simulated_fidelity(const std::vector<StateVector>& images, const AmplitudeProfile& input,
                          const DeviceParams& params);

/// Surviving norm^2 of each logical basis input after the gate.
std::array<double, kLogicalDim> simulated_survival(const std::vector<StateVector>& images);

/// Average of the simulated joint fidelity over the (nu, phi) family with
/// whichever of Gamma3, kappa are nonzero (SI rates). 64-node Gauss-Legendre.
double favg_combined(double gamma3, double kappa, const DeviceParams& params);

/// Monte-Carlo version of favg_combined: cos(nu) uniform on [-1, 1].
double favg_combined_random(double gamma3, double kappa, const DeviceParams& params, int samples,
                            std::uint64_t seed);

/// Simulated counterpart of favg_cavity_decay: only kappa active, uniform
/// input, fidelity conditioned on no photon loss (the closed form's shape).
CavityDecayReport simulate_cavity_decay(double kappa, const DeviceParams& params);

/// Full report from simulation: f_ave averaged, p for the uniform input.
FidelityReport simulate_phase_gate(const NoiseConfig& noise, const DeviceParams& params);

// ---------------------------------------------------------------------------
// Off-resonant leakage on SQUID 3 during the stage-4/5 pulses.

/// |1 - x - x c|^2 with c = alpha^2 - beta^2 - gamma^2, x = |h|^2.
double offresonant_fidelity(double x, const LeakageAmplitudes& amps);

/// Closed-form average over x in [0, 1].
double favg_offresonant(double omega12, double g3, double delta_c);

/// Average over x of the fidelity obtained from the simulated gate with the
/// leakage model on. The non-|111> weight is spread evenly over the other
/// seven inputs.
double favg_offresonant_simulated(const DeviceParams& params);

// ---------------------------------------------------------------------------
// Timing.

struct TimingTerm {
    std::string name;
    double seconds = 0.0;
    double gt = 0.0;
};

struct TimingBudget {
    std::vector<TimingTerm> terms;  // the seven contributions to one phase gate
    double tau_gate = 0.0;          // seconds
    double tau_single = 1.5e-9;     // seconds per simultaneous single-qubit layer
    double g_ref = 1.0;
    int iterations = 0;

    int phase_gates(int k) const { return 2 * k; }
    int single_layers(int k) const { return 4 * k + 1; }
    double tau_algorithm(int k) const { return phase_gates(k) * tau_gate + single_layers(k) * tau_single; }
};

TimingBudget timing_budget(const DeviceParams& params, int iterations);

// ---------------------------------------------------------------------------
// Figure tables.

enum class FigureId { Fig3, Fig4a, Fig4b, Fig5a, Fig5b, Fig6, Fig7 };

std::string to_string(FigureId id);
/// Throws std::invalid_argument for unknown ids.
FigureId parse_figure(const std::string& text);
const std::vector<std::string>& figure_ids();

struct FigureGrid {
    std::vector<double> gamma3_over_g{0.0, 0.001, 0.002, 0.003, 0.004, 0.005, 0.006, 0.007, 0.008, 0.009, 0.01};
    std::vector<double> level_decay_runs{0.0, 0.001, 0.004};
    std::vector<double> cavity_decay_runs{0.0, 0.004, 0.007};
    std::vector<double> kappa_over_g{0.0, 0.002, 0.004, 0.006, 0.008, 0.01};
    std::vector<double> omega12_over_g3{0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6,
                                        0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0};
    int k_max = 10;
    int target = 7;
    DeviceParams params = paper_device();
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Table figure_data(FigureId figure, const FigureGrid& grid);

}  // namespace sqg
