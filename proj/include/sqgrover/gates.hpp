#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqgrover/device.hpp"
#include "sqgrover/hilbert.hpp"
#include "sqgrover/pulses.hpp"

namespace sqg {

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kLogicalDim = 8;
using LogicalGateMatrix = Eigen::Matrix<cplx, kLogicalDim, kLogicalDim>;
using LogicalAmplitudes = std::array<cplx, kLogicalDim>;

/// Logical basis index b = 4 q1 + 2 q2 + q3.
BasisLabel logical_label(int index, const DeviceParams& params);
StateVector logical_basis_state(int index, const DeviceParams& params, int n_max = kDefaultNMax);
StateVector logical_state(const LogicalAmplitudes& amps, const DeviceParams& params, int n_max = kDefaultNMax);
LogicalAmplitudes logical_amplitudes(const StateVector& state, const DeviceParams& params);
/// norm^2 minus the population of the logical (x) vacuum subspace.
double population_outside_logical(const StateVector& state, const DeviceParams& params);

/// Ordered primitive steps with their stage labels (1..8 for the phase gate).
struct Schedule {
    std::vector<PulseStep> steps;
    double total_duration = 0.0;  // units of 1/g1

    /// Wall time of a step list: concurrent steps share the slot of the step
    /// they follow, and the slot lasts as long as its longest member.
    static double duration_of(const std::vector<PulseStep>& steps);
};

/// The eight-stage controlled-phase sequence with durations from `params`.
Schedule phase_gate_schedule(const DeviceParams& params);

StateVector apply_schedule(const StateVector& state, const Schedule& schedule, const NoiseConfig& noise,
                           const DeviceParams& params);

/// Text listing: stage, kind, SQUID, transition, area, duration (gt and ns), phase.
std::string dump_schedule(const Schedule& schedule, const DeviceParams& params);

/// cos(theta) I - i sin(theta)(e^{i phi}|0><1| + e^{-i phi}|1><0|) on the
/// logical levels of one SQUID, i.e. a classical pulse on (logical 0, logical 1).
StateVector single_qubit_gate(const StateVector& state, int squid, double theta, double phi,
                              const DeviceParams& params);

/// H1 = single_qubit_gate(pi/4, -pi/2) on all three SQUIDs.
StateVector walsh_hadamard(const StateVector& state, const DeviceParams& params);
StateVector inverse_walsh_hadamard(const StateVector& state, const DeviceParams& params);

/// -i sigma_x on each listed SQUID (pulse of area pi/2, phase 0).
StateVector sigma_x_layer(const StateVector& state, const std::vector<int>& squids, const DeviceParams& params);

/// Controlled-phase Q_pi realized by the eight-stage pulse schedule. With
/// all noise off the input must lie in the logical (x) vacuum subspace.
StateVector three_qubit_phase_gate(const StateVector& state, const NoiseConfig& noise, const DeviceParams& params);

using GateApplier = std::function<StateVector(const StateVector&)>;

/// Columns are the images of the logical basis states (x) vacuum. Throws if
/// any image leaves more than `tolerance` outside the logical subspace.
LogicalGateMatrix extract_logical_matrix(const GateApplier& gate, const DeviceParams& params,
                                         int n_max = kDefaultNMax, double tolerance = 1e-9);

/// |tr(M^dag R)| / 8; equals 1 iff M = e^{i a} R for unitary R.
double global_phase_agreement(const LogicalGateMatrix& m, const LogicalGateMatrix& reference);

/// Largest entrywise deviation after removing the best global phase.
double max_deviation_up_to_phase(const LogicalGateMatrix& m, const LogicalGateMatrix& reference);

LogicalGateMatrix controlled_phase_matrix();

}  // namespace sqg
