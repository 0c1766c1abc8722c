#include "sqgrover/grover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqg {

namespace {

struct OracleDressing {
    double sign;
    std::vector<int> flips;
};

// Flip every SQUID whose target bit is 0 so the marked state becomes |111>.
OracleDressing dressing_for(LogicalState t)
{
    switch (t.index()) {
    case 0b000: return {-1.0, {1, 2, 3}};
    case 0b001: return {1.0, {1, 2}};
    case 0b010: return {1.0, {1, 3}};
    case 0b011: return {-1.0, {1}};
    case 0b100: return {1.0, {2, 3}};
    case 0b101: return {-1.0, {2}};
    case 0b110: return {-1.0, {3}};
    case 0b111: return {1.0, {}};
    }
    throw std::invalid_argument("target outside the three-qubit register");
}

}  // namespace

std::string LogicalState::str() const
{
    return std::string{static_cast<char>('0' + q1), static_cast<char>('0' + q2), static_cast<char>('0' + q3)};
}

LogicalState LogicalState::from_index(int index)
{
    if (index < 0 || index >= kLogicalDim)
        throw std::invalid_argument("logical index outside 0..7");
    return {(index >> 2) & 1, (index >> 1) & 1, index & 1};
}

LogicalState LogicalState::parse(const std::string& text)
{
    if (text.size() != 3)
        throw std::invalid_argument("target must be three binary digits, got '" + text + "'");
    for (char c : text)
        if (c != '0' && c != '1')
            throw std::invalid_argument("target must be three binary digits, got '" + text + "'");
    return {text[0] - '0', text[1] - '0', text[2] - '0'};
}

StateVector oracle(const StateVector& state, LogicalState target, const NoiseConfig& noise,
                   const DeviceParams& params)
{
    const OracleDressing d = dressing_for(target);
    StateVector s = sigma_x_layer(state, d.flips, params);
    s = three_qubit_phase_gate(s, noise, params);
    s = sigma_x_layer(s, d.flips, params);
    return d.sign == 1.0 ? s : cplx(d.sign) * s;
}

StateVector diffusion(const StateVector& state, const NoiseConfig& noise, const DeviceParams& params)
{
    // H1^-1 |1> = (|0> + |1>)/sqrt 2, so this conjugation is exactly
    // I - 2|psi><psi| for the uniform state.
    StateVector s = walsh_hadamard(state, params);
    s = three_qubit_phase_gate(s, noise, params);
    return inverse_walsh_hadamard(s, params);
}

StateVector grover_iteration(const StateVector& state, LogicalState target, const NoiseConfig& noise,
                             const DeviceParams& params)
{
    return cplx(-1.0) * diffusion(oracle(state, target, noise, params), noise, params);
}

Measurement measure_probabilities(const StateVector& state, const DeviceParams& params)
{
    Measurement m;
    const auto amps = logical_amplitudes(state, params);
    double inside = 0.0;
    for (std::size_t b = 0; b < amps.size(); ++b) {
        m.probabilities[b] = std::norm(amps[b]);
        inside += m.probabilities[b];
    }
    m.leakage = std::max(0.0, state.norm_squared() - inside);
    return m;
}

double ideal_success_probability(int k)
{
    const double theta = std::asin(1.0 / std::sqrt(8.0));
    const double s = std::sin((2.0 * k + 1.0) * theta);
    return s * s;
}

RunResult grover_run(const GroverConfig& config)
{
    if (config.iterations < 0)
        throw std::invalid_argument("iteration count must be nonnegative");
    validate(config.params);

    const DeviceParams& p = config.params;
    const bool noisy = config.noise.any();
    const StateVector start = walsh_hadamard(StateVector::basis(logical_label(0, p), config.n_max), p);

    StateVector actual = start;
    StateVector ideal = start;
    RunResult result;
    result.records.reserve(static_cast<std::size_t>(config.iterations) + 1);

    auto record = [&](int k) {
        IterationRecord r;
        r.k = k;
        const Measurement m = measure_probabilities(actual, p);
        r.norm_squared = actual.norm_squared();
        r.target_probability = m.probabilities[static_cast<std::size_t>(config.target.index())];
        r.leakage = m.leakage;
        r.fidelity_joint = std::norm(overlap(ideal, actual));
        r.target_probability_conditional = r.norm_squared > 0.0 ? r.target_probability / r.norm_squared : 0.0;
        r.fidelity_conditional = r.norm_squared > 0.0 ? r.fidelity_joint / r.norm_squared : 0.0;
        r.guard_population = actual.photon_population(2);
        result.records.push_back(r);
    };

    record(0);
    for (int k = 1; k <= config.iterations; ++k) {
        actual = grover_iteration(actual, config.target, config.noise, p);
        ideal = noisy ? grover_iteration(ideal, config.target, NoiseConfig::ideal(), p) : actual;
        record(k);
    }
    return result;
}

}  // namespace sqg
