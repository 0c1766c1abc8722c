#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sqgrover/analysis.hpp"
#include "sqgrover/pulses.hpp"

using namespace sqg;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

double max_diff(const CVector& a, const CVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

NoiseConfig with(bool gamma3, bool kappa)
{
    NoiseConfig n;
    n.enable_gamma3 = gamma3;
    n.enable_kappa = kappa;
    return n;
}

}  // namespace

TEST_CASE("classical_pulse: zero area is the identity")
{
    std::mt19937_64 rng(1);
    const StateVector psi(ref::random_state(rng, 192), 2);
    const StateVector out = classical_pulse(psi, 2, {0, 3}, 0.0, 0.7);
    CHECK(max_diff(out.amplitudes(), psi.amplitudes()) == 0.0);
}

TEST_CASE("classical_pulse: area pi/2, phase 0 is -i times the level swap")
{
    const StateVector a = classical_pulse(StateVector::basis({0, 1, 0, 0}), 1, {0, 1}, kPi / 2.0, 0.0);
    CHECK(std::abs(a.at({1, 1, 0, 0}) + kI) < 1e-15);
    CHECK(a.norm_squared() == doctest::Approx(1.0));
    const StateVector b = classical_pulse(StateVector::basis({1, 1, 0, 0}), 1, {0, 1}, kPi / 2.0, 0.0);
    CHECK(std::abs(b.at({0, 1, 0, 0}) + kI) < 1e-15);
}

TEST_CASE("classical_pulse matches the exponential of its generator")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const StateVector psi(ref::random_state(rng, 192), 2);
    for (int trial = 0; trial < 20; ++trial) {
        const int squid = 1 + trial % 3;
        const Transition tr{trial % 4, (trial + 1 + trial / 4) % 4};
        if (tr.from == tr.to)
            continue;
        const double area = u(rng);
        const double phase = u(rng);
        // |i> -> cos A |i> - i e^{-i phi} sin A |j> is exp(-i A K) with
        // K = e^{i phi}|i><j| + e^{-i phi}|j><i|.
        const CMatrix k = std::exp(kI * phase) * ref::ket_bra(4, tr.from, tr.to) +
                          std::exp(-kI * phase) * ref::ket_bra(4, tr.to, tr.from);
        const CMatrix u_full = ref::evolve(ref::on_squid(squid, k, 2), area);
        const StateVector out = classical_pulse(psi, squid, tr, area, phase);
        CHECK(max_diff(out.amplitudes(), u_full * psi.amplitudes()) < 1e-12);
    }
}

TEST_CASE("classical_pulse rejects a degenerate transition")
{
    CHECK_THROWS_AS(classical_pulse(StateVector(2), 1, {2, 2}, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(classical_pulse(StateVector(2), 1, {0, 4}, 1.0, 0.0), BoundsError);
}

TEST_CASE("step 1 composite sends |1>|0> to |2>|1> with amplitude +1")
{
    const DeviceParams p = paper_device();
    StateVector s = StateVector::basis({1, 0, 1, 0});
    s = classical_pulse(s, 1, {1, 3}, kPi / 2.0, kPi);
    s = resonant_exchange(s, 1, kPi / 2.0, NoiseConfig::ideal(), p);
    CHECK(std::abs(s.at({2, 0, 1, 1}) - 1.0) < 1e-15);
}

TEST_CASE("resonant_exchange: ideal swap amplitudes")
{
    const DeviceParams p = paper_device();
    const StateVector half = resonant_exchange(StateVector::basis({3, 0, 0, 0}), 1, kPi / 2.0, {}, p);
    CHECK(std::abs(half.at({2, 0, 0, 1}) + kI) < 1e-15);
    const StateVector back = resonant_exchange(StateVector::basis({0, 2, 1, 1}), 2, kPi / 2.0, {}, p);
    CHECK(std::abs(back.at({0, 3, 1, 0}) + kI) < 1e-15);
    const StateVector full = resonant_exchange(StateVector::basis({3, 0, 0, 0}), 1, kPi, {}, p);
    CHECK(std::abs(full.at({3, 0, 0, 0}) + 1.0) < 1e-15);
}

TEST_CASE("resonant_exchange equals the closed form for random durations")
{
    const DeviceParams p = paper_device();
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double t = u(rng);
        const StateVector s = resonant_exchange(StateVector::basis({0, 3, 2, 0}), 2, t, {}, p);
        CHECK(std::abs(s.at({0, 3, 2, 0}) - std::cos(t)) < 1e-12);
        CHECK(std::abs(s.at({0, 2, 2, 1}) + kI * std::sin(t)) < 1e-12);
    }
}

TEST_CASE("resonant_exchange agrees with the full-space matrix exponential")
{
    std::mt19937_64 rng(6);
    DeviceParams p = paper_device();
    p.g[1] = 0.8 * p.g1();
    p.gamma3 = 0.004 * p.g1();
    p.kappa = 0.007 * p.g1();
    const StateVector psi(ref::random_state(rng, 192), 2);
    for (int squid : {1, 2}) {
        for (bool gm : {false, true}) {
            for (bool kp : {false, true}) {
                const double t = 1.3;
                const CMatrix h = ref::exchange_hamiltonian(squid, p.coupling(squid) / p.g1(),
                                                               gm ? p.gamma3 / p.g1() : 0.0,
                                                               kp ? p.kappa / p.g1() : 0.0, 2);
                const CVector ref = ref::evolve(h, t) * psi.amplitudes();
                const StateVector out = resonant_exchange(psi, squid, t, with(gm, kp), p);
                CHECK(max_diff(out.amplitudes(), ref) < 1e-12);
            }
        }
    }
}

TEST_CASE("resonant_exchange argument checks")
{
    const DeviceParams p = paper_device();
    CHECK_THROWS_AS(resonant_exchange(StateVector(2), 3, 1.0, {}, p), DomainError);
    CHECK_THROWS_AS(resonant_exchange(StateVector(2), 1, -1.0, {}, p), DomainError);
}

TEST_CASE("resonant_exchange: norm is non-increasing under decay")
{
    std::mt19937_64 rng(8);
    DeviceParams p = paper_device();
    p.gamma3 = 0.01 * p.g1();
    p.kappa = 0.01 * p.g1();
    const StateVector psi(ref::random_state(rng, 192), 2);
    double last = psi.norm_squared();
    for (int i = 1; i <= 50; ++i) {
        const double n = resonant_exchange(psi, 1, 0.1 * i, with(true, true), p).norm_squared();
        CHECK(n <= last + 1e-15);
        last = n;
    }
    CHECK(last < 1.0 - 1e-4);
}

TEST_CASE("noise-off primitives stay unitary over a long composition")
{
    const DeviceParams p = paper_device();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    StateVector s(ref::random_state(rng, 192), 2);
    for (int i = 0; i < 10000; ++i) {
        switch (i % 4) {
        case 0: s = classical_pulse(s, 1 + i % 3, {i % 2, 2 + i % 2}, u(rng), u(rng)); break;
        case 1: s = resonant_exchange(s, 1 + (i / 4) % 2, u(rng), {}, p); break;
        case 2: s = dispersive_wait(s, u(rng), p); break;
        case 3: s = free_cavity_decay(s, u(rng), 0.0); break;
        }
    }
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("dispersive_wait")
{
    const DeviceParams p = paper_device();
    const double d = p.dispersive_shift() / p.g1();
    const StateVector flipped = dispersive_wait(StateVector::basis({0, 1, 2, 1}), kPi / d, p);
    CHECK(std::abs(flipped.at({0, 1, 2, 1}) + 1.0) < 1e-14);

    for (double t : {0.3, 5.0, 31.4}) {
        const StateVector vac = dispersive_wait(StateVector::basis({1, 0, 2, 0}), t, p);
        CHECK(vac.at({1, 0, 2, 0}) == cplx(1.0));
    }

    std::mt19937_64 rng(10);
    const StateVector psi(ref::random_state(rng, 192), 2);
    CHECK(max_diff(dispersive_wait(psi, 0.0, p).amplitudes(), psi.amplitudes()) == 0.0);

    // Against exp(-i H t), H = d (|3><3| - |2><2|) (x) |1><1|.
    const CMatrix h = d * ref::product(ref::eye(4), ref::eye(4),
                                          ref::ket_bra(4, 3, 3) - ref::ket_bra(4, 2, 2),
                                          ref::ket_bra(3, 1, 1));
    CHECK(max_diff(dispersive_wait(psi, 2.7, p).amplitudes(), ref::evolve(h, 2.7) * psi.amplitudes()) < 1e-12);
}

TEST_CASE("dispersive_wait commutes with pulses on SQUIDs 1 and 2")
{
    const DeviceParams p = paper_device();
    std::mt19937_64 rng(12);
    const StateVector psi(ref::random_state(rng, 192), 2);
    for (int squid : {1, 2}) {
        const StateVector a = dispersive_wait(classical_pulse(psi, squid, {0, 2}, 0.9, 0.4), 3.3, p);
        const StateVector b = classical_pulse(dispersive_wait(psi, 3.3, p), squid, {0, 2}, 0.9, 0.4);
        CHECK(max_diff(a.amplitudes(), b.amplitudes()) < 1e-14);
    }
}

TEST_CASE("free_cavity_decay")
{
    std::mt19937_64 rng(13);
    const StateVector psi(ref::random_state(rng, 192), 2);
    const StateVector out = free_cavity_decay(psi, 2.0, 0.3);
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const int n = label_of(i, 2).n;
        CHECK(std::abs(out[i] - psi[i] * std::exp(-0.6 * n)) < 1e-15);
    }
    CHECK(max_diff(free_cavity_decay(psi, 5.0, 0.0).amplitudes(), psi.amplitudes()) == 0.0);
    const StateVector one = free_cavity_decay(StateVector::basis({0, 0, 0, 1}), std::log(2.0), 1.0);
    CHECK(one.at({0, 0, 0, 1}).real() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("leakage amplitudes")
{
    const auto ideal = leakage_amplitudes(1.0, 0.0);
    CHECK(std::abs(ideal.alpha) < 1e-15);
    CHECK(std::abs(ideal.beta) < 1e-15);
    CHECK(ideal.gamma == doctest::Approx(1.0));

    for (double omega : {0.05, 0.1, 0.6, 1.0, 3.0})
        for (double delta : {0.0, 0.01, 0.1, 0.5, 2.0}) {
            const auto a = leakage_amplitudes(omega, delta);
            CHECK(a.alpha * a.alpha + a.beta * a.beta + a.gamma * a.gamma == doctest::Approx(1.0).epsilon(1e-14));
        }
    CHECK_THROWS_AS(leakage_amplitudes(0.0, 0.1), DomainError);
}

TEST_CASE("pulse_with_dispersive_leakage reduces to classical_pulse at zero shift")
{
    DeviceParams p = paper_device();
    p.delta_c = 1e300;
    std::mt19937_64 rng(14);
    const StateVector psi(ref::random_state(rng, 192), 2);
    const Transition tr = squid3_drive_transition(p);
    const StateVector a = pulse_with_dispersive_leakage(psi, kPi / 2.0, 0.8, p);
    const StateVector b = classical_pulse(psi, 3, tr, kPi / 2.0, 0.8);
    CHECK(max_diff(a.amplitudes(), b.amplitudes()) < 1e-15);
}

TEST_CASE("pulse_with_dispersive_leakage against the driven, shifted generator")
{
    DeviceParams p = paper_device();
    const double g3 = p.coupling(3);
    p.omega_overrides[{3, LevelPair::of(0, 2)}] = 0.3 * g3;
    const Transition tr = squid3_drive_transition(p);
    REQUIRE(tr.from == 0);
    REQUIRE(tr.to == 2);
    const double omega = 0.3 * g3 / p.g1();
    const double delta = p.dispersive_shift() / p.g1();
    const double phase = -kPi / 2.0;

    // Omega (e^{i phi}|i><j| + h.c.) on every photon number, plus the shift
    // (delta/2)(|i><i| - |j><j|) in the one-photon manifold.
    const CMatrix drive = std::exp(kI * phase) * ref::ket_bra(4, tr.from, tr.to) +
                          std::exp(-kI * phase) * ref::ket_bra(4, tr.to, tr.from);
    const CMatrix shift = ref::ket_bra(4, tr.from, tr.from) - ref::ket_bra(4, tr.to, tr.to);
    const CMatrix h = omega * ref::on_squid(3, drive, 2) +
                      0.5 * delta * ref::product(ref::eye(4), ref::eye(4), shift, ref::ket_bra(3, 1, 1));

    std::mt19937_64 rng(15);
    const StateVector psi(ref::random_state(rng, 192), 2);
    const StateVector out = pulse_with_dispersive_leakage(psi, kPi / 2.0, phase, p);
    const CVector ref = ref::evolve(h, kPi / (2.0 * omega)) * psi.amplitudes();
    // Only photon numbers 0 and 1 are modeled; the n = 2 guard sees the plain pulse.
    for (std::size_t i = 0; i < psi.dim(); ++i)
        if (label_of(i, 2).n < 2)
            CHECK(std::abs(out[i] - ref[static_cast<Eigen::Index>(i)]) < 1e-12);

    // The amplitudes of the closed form.
    const auto amps = leakage_amplitudes(omega, delta);
    const StateVector one = pulse_with_dispersive_leakage(StateVector::basis({1, 0, 0, 1}), kPi / 2.0, phase, p);
    CHECK(std::abs(one.at({1, 0, 0, 1}) - cplx(amps.alpha, -amps.beta)) < 1e-14);
    CHECK(std::abs(one.at({1, 0, 2, 1})) == doctest::Approx(amps.gamma));
}

TEST_CASE("pulse_with_dispersive_leakage needs a Rabi frequency")
{
    DeviceParams p = paper_device();
    p.omega_overrides[{3, LevelPair::of(0, 2)}] = 0.0;
    CHECK_THROWS_AS(pulse_with_dispersive_leakage(StateVector(2), kPi / 2.0, 0.0, p), DomainError);
}

TEST_CASE("r_factor against the exponentiated 2x2 block")
{
    for (double ratio : {0.001, 0.004, 0.01, 0.1}) {
        // {|3>|0>, |2>|1>}, units of g.
        CMatrix h(2, 2);
        h << cplx(0.0, -ratio), 1.0, 1.0, 0.0;
        const CMatrix u = ref::evolve(h, kPi / 2.0);
        CHECK(std::abs(u(1, 0)) == doctest::Approx(r_factor(ratio, 1.0)).epsilon(1e-12));
    }
    CHECK(r_factor(0.004, 1.0) == doctest::Approx(0.996863).epsilon(1e-5));
}
