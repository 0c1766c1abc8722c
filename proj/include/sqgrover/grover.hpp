#pragma once

#include <array>
#include <string>
#include <vector>

#include "sqgrover/device.hpp"
#include "sqgrover/gates.hpp"
#include "sqgrover/hilbert.hpp"

namespace sqg {

/// Marked basis state |q1 q2 q3>.
struct LogicalState {
    int q1 = 1;
    int q2 = 1;
    int q3 = 1;

    int index() const { return 4 * q1 + 2 * q2 + q3; }
    std::string str() const;
    static LogicalState from_index(int index);
    /// Parses "101"-style strings; throws std::invalid_argument otherwise.
    static LogicalState parse(const std::string& text);

    friend bool operator==(const LogicalState&, const LogicalState&) = default;
};

/// Sign-change operator for `target`: sigma_x dressing around Q_pi with the
/// global signs of the eight published constructions.
StateVector oracle(const StateVector& state, LogicalState target, const NoiseConfig& noise,
                   const DeviceParams& params);

/// Inversion about the mean, I - 2|psi><psi|: (H1^-1 layer) Q_pi (H1 layer).
StateVector diffusion(const StateVector& state, const NoiseConfig& noise, const DeviceParams& params);

/// G = -N C.
StateVector grover_iteration(const StateVector& state, LogicalState target, const NoiseConfig& noise,
                             const DeviceParams& params);

struct Measurement {
    std::array<double, kLogicalDim> probabilities{};
    double leakage = 0.0;
};

/// Joint readout of the logical (x) vacuum populations. Nothing is renormalized.
Measurement measure_probabilities(const StateVector& state, const DeviceParams& params);

struct GroverConfig {
    LogicalState target{};
    int iterations = 0;
    NoiseConfig noise{};
    DeviceParams params = paper_device();
    int n_max = kDefaultNMax;
};

struct IterationRecord {
    int k = 0;
    double target_probability = 0.0;
    double target_probability_conditional = 0.0;
    double fidelity_joint = 0.0;
    double fidelity_conditional = 0.0;
    double norm_squared = 0.0;
    double leakage = 0.0;
    double guard_population = 0.0;  // photon number n = 2
};

struct RunResult {
    /// records[k] is taken after k Grover iterations; records[0] follows W.
    std::vector<IterationRecord> records;
};

RunResult grover_run(const GroverConfig& config);

/// sin^2((2k+1) asin(1/sqrt 8)).
double ideal_success_probability(int k);

}  // namespace sqg
