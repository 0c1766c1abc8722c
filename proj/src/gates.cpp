#include "sqgrover/gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace sqg {

namespace {

constexpr double kPi = std::numbers::pi;

PulseStep pulse(int stage, int squid, Transition tr, double phase, const DeviceParams& p, bool concurrent = false)
{
    const double omega = p.omega(squid, LevelPair::of(tr.from, tr.to));
    if (!(omega > 0.0))
        throw DomainError("Rabi frequency for SQUID " + std::to_string(squid) + " transition must be positive");
    PulseStep s;
    s.kind = StepKind::ClassicalPulse;
    s.squid = squid;
    s.transition = tr;
    s.area = kPi / 2.0;
    s.phase = phase;
    s.duration = s.area * p.g1() / omega;
    s.stage = stage;
    s.concurrent = concurrent;
    return s;
}

PulseStep exchange(int stage, int squid, const DeviceParams& p)
{
    const double g = p.coupling(squid);
    if (!(g > 0.0))
        throw DomainError("coupling g" + std::to_string(squid) + " must be positive");
    PulseStep s;
    s.kind = StepKind::ResonantExchange;
    s.squid = squid;
    s.transition = {2, 3};
    s.duration = kPi / 2.0 * p.g1() / g;
    s.stage = stage;
    return s;
}

PulseStep dispersive(int stage, const DeviceParams& p)
{
    PulseStep s;
    s.kind = StepKind::DispersiveWait;
    s.squid = 3;
    s.transition = {2, 3};
    // Phase pi on |2>_3|1>_c.
    s.duration = kPi / (p.dispersive_shift() / p.g1());
    s.stage = stage;
    return s;
}

}  // namespace

BasisLabel logical_label(int index, const DeviceParams& params)
{
    if (index < 0 || index >= kLogicalDim)
        throw BoundsError("logical index outside 0..7");
    return {params.physical_level(1, (index >> 2) & 1), params.physical_level(2, (index >> 1) & 1),
            params.physical_level(3, index & 1), 0};
}

StateVector logical_basis_state(int index, const DeviceParams& params, int n_max)
{
    return StateVector::basis(logical_label(index, params), n_max);
}

StateVector logical_state(const LogicalAmplitudes& amps, const DeviceParams& params, int n_max)
{
    StateVector s(n_max);
    for (int b = 0; b < kLogicalDim; ++b)
        s.set(logical_label(b, params), amps[static_cast<std::size_t>(b)]);
    return s;
}

LogicalAmplitudes logical_amplitudes(const StateVector& state, const DeviceParams& params)
{
    LogicalAmplitudes out{};
    for (int b = 0; b < kLogicalDim; ++b)
        out[static_cast<std::size_t>(b)] = state.at(logical_label(b, params));
    return out;
}

double population_outside_logical(const StateVector& state, const DeviceParams& params)
{
    double inside = 0.0;
    for (const cplx a : logical_amplitudes(state, params))
        inside += std::norm(a);
    return std::max(0.0, state.norm_squared() - inside);
}

double Schedule::duration_of(const std::vector<PulseStep>& steps)
{
    double total = 0.0;
    double slot = 0.0;
    for (const auto& s : steps) {
        if (s.concurrent) {
            slot = std::max(slot, s.duration);
        } else {
            total += slot;
            slot = s.duration;
        }
    }
    return total + slot;
}

Schedule phase_gate_schedule(const DeviceParams& p)
{
    const int zero1 = p.physical_level(1, 0);
    const int one1 = p.physical_level(1, 1);
    const int zero2 = p.physical_level(2, 0);
    const Transition s3_drive = squid3_drive_transition(p);

    Schedule sch;
    auto& st = sch.steps;
    // 1: |1>_1 -> i|3>_1, then emit the photon: |1>_1|0> -> |2>_1|1>.
    st.push_back(pulse(1, 1, {one1, 3}, kPi, p));
    st.push_back(exchange(1, 1, p));
    // 2: SQUID 1 |2> -> |0>, |0> -> -|2>; SQUID 2 |0> -> |2>, |2> -> -|0>.
    st.push_back(pulse(2, 1, {zero1, 2}, kPi / 2.0, p));
    st.push_back(pulse(2, 2, {zero2, 2}, -kPi / 2.0, p, true));
    // 3: SQUID 2 absorbs the photon, |2>_2|1> -> |0>_2|0>.
    st.push_back(exchange(3, 2, p));
    st.push_back(pulse(3, 2, {3, zero2}, kPi, p));
    // 4: park SQUID 3 logical 1 in |2>, then a pi dispersive phase if a photon is present.
    st.push_back(pulse(4, 3, s3_drive, -kPi / 2.0, p));
    st.push_back(dispersive(4, p));
    // 5: return SQUID 3.
    st.push_back(pulse(5, 3, s3_drive, kPi / 2.0, p));
    // 6: undo stage 3.
    st.push_back(pulse(6, 2, {3, zero2}, kPi, p));
    st.push_back(exchange(6, 2, p));
    // 7: undo stage 2 (phases swapped between the SQUIDs).
    st.push_back(pulse(7, 2, {zero2, 2}, kPi / 2.0, p));
    st.push_back(pulse(7, 1, {zero1, 2}, -kPi / 2.0, p, true));
    // 8: reabsorb into SQUID 1 and return |3>_1 -> |1>_1.
    st.push_back(exchange(8, 1, p));
    st.push_back(pulse(8, 1, {3, one1}, kPi, p));

    sch.total_duration = Schedule::duration_of(st);
    return sch;
}

StateVector apply_schedule(const StateVector& state, const Schedule& schedule, const NoiseConfig& noise,
                           const DeviceParams& params)
{
    StateVector s = state;
    const auto& steps = schedule.steps;
    const double kappa = params.kappa / params.g1();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const PulseStep& step = steps[i];
        switch (step.kind) {
        case StepKind::ClassicalPulse: {
            double slot = 0.0;
            std::size_t j = i;
            for (; j < steps.size() && (j == i || steps[j].concurrent); ++j) {
                const PulseStep& p = steps[j];
                if (p.kind != StepKind::ClassicalPulse)
                    throw DomainError("only pulses may run concurrently");
                if (p.squid == 3 && noise.enable_offresonant_leakage)
                    s = pulse_with_dispersive_leakage(s, p.area, p.phase, params);
                else
                    s = classical_pulse(s, p.squid, p.transition, p.area, p.phase);
                slot = std::max(slot, p.duration);
            }
            if (noise.enable_kappa && noise.kappa_during_pulses)
                s = free_cavity_decay(s, slot, kappa);
            i = j - 1;
            break;
        }
        case StepKind::ResonantExchange:
            s = resonant_exchange(s, step.squid, step.duration, noise, params);
            break;
        case StepKind::DispersiveWait:
            s = dispersive_wait(s, step.duration, params);
            break;
        case StepKind::Idle:
            if (noise.enable_kappa)
                s = free_cavity_decay(s, step.duration, kappa);
            break;
        }
    }
    return s;
}

std::string dump_schedule(const Schedule& schedule, const DeviceParams& params)
{
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-5s %-10s %-5s %-10s %-9s %-12s %-12s %-9s %s\n", "stage", "kind", "squid",
                  "transition", "area", "dur_gt", "dur_ns", "phase", "conc");
    os << line;
    for (const auto& s : schedule.steps) {
        char tr[16];
        std::snprintf(tr, sizeof tr, "%d->%d", s.transition.from, s.transition.to);
        std::snprintf(line, sizeof line, "%-5d %-10s %-5d %-10s %-9.6f %-12.6f %-12.6f %-9.6f %s\n", s.stage,
                      to_string(s.kind).c_str(), s.squid, tr, s.area, s.duration,
                      to_seconds(s.duration, params.g1()) * 1e9, s.phase, s.concurrent ? "yes" : "no");
        os << line;
    }
    std::snprintf(line, sizeof line, "total %.6f gt = %.6f ns\n", schedule.total_duration,
                  to_seconds(schedule.total_duration, params.g1()) * 1e9);
    os << line;
    return os.str();
}

StateVector single_qubit_gate(const StateVector& state, int squid, double theta, double phi,
                              const DeviceParams& params)
{
    const Transition logical{params.physical_level(squid, 0), params.physical_level(squid, 1)};
    return classical_pulse(state, squid, logical, theta, phi);
}

StateVector walsh_hadamard(const StateVector& state, const DeviceParams& params)
{
    StateVector s = state;
    for (int q = 1; q <= kSquids; ++q)
        s = single_qubit_gate(s, q, kPi / 4.0, -kPi / 2.0, params);
    return s;
}

StateVector inverse_walsh_hadamard(const StateVector& state, const DeviceParams& params)
{
    StateVector s = state;
    for (int q = 1; q <= kSquids; ++q)
        s = single_qubit_gate(s, q, kPi / 4.0, kPi / 2.0, params);
    return s;
}

StateVector sigma_x_layer(const StateVector& state, const std::vector<int>& squids, const DeviceParams& params)
{
    StateVector s = state;
    for (int q : squids)
        s = single_qubit_gate(s, q, kPi / 2.0, 0.0, params);
    return s;
}

StateVector three_qubit_phase_gate(const StateVector& state, const NoiseConfig& noise, const DeviceParams& params)
{
    if (!noise.any()) {
        const double outside = population_outside_logical(state, params);
        if (outside > 1e-9)
            throw PreconditionError("phase gate input has population " + std::to_string(outside) +
                                    " outside the logical (x) vacuum subspace");
    }
    return apply_schedule(state, phase_gate_schedule(params), noise, params);
}

LogicalGateMatrix extract_logical_matrix(const GateApplier& gate, const DeviceParams& params, int n_max,
                                         double tolerance)
{
    LogicalGateMatrix m;
    for (int c = 0; c < kLogicalDim; ++c) {
        const StateVector out = gate(logical_basis_state(c, params, n_max));
        const double residue = population_outside_logical(out, params);
        if (residue > tolerance)
            throw PreconditionError("gate image of logical state " + std::to_string(c) + " leaves " +
                                    std::to_string(residue) + " outside the logical (x) vacuum subspace");
        const auto amps = logical_amplitudes(out, params);
        for (int r = 0; r < kLogicalDim; ++r)
            m(r, c) = amps[static_cast<std::size_t>(r)];
    }
    return m;
}

double global_phase_agreement(const LogicalGateMatrix& m, const LogicalGateMatrix& reference)
{
    return std::abs((m.adjoint() * reference).trace()) / kLogicalDim;
}

double max_deviation_up_to_phase(const LogicalGateMatrix& m, const LogicalGateMatrix& reference)
{
    const cplx t = (reference.adjoint() * m).trace();
    const cplx phase = std::abs(t) > 0.0 ? t / std::abs(t) : cplx{1.0, 0.0};
    return (m - phase * reference).cwiseAbs().maxCoeff();
}

LogicalGateMatrix controlled_phase_matrix()
{
    LogicalGateMatrix q = LogicalGateMatrix::Identity();
    q(7, 7) = -1.0;
    return q;
}

}  // namespace sqg
