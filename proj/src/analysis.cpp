#include "sqgrover/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "sqgrover/grover.hpp"

namespace sqg {

namespace {

constexpr double kPi = std::numbers::pi;

using Gauss64 = boost::math::quadrature::gauss<double, 64>;

// Evaluates fn(i) for i in [0, n) on worker threads; results keep index order.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using R = decltype(fn(std::size_t{}));
    std::vector<R> out(n);
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < n; i += workers)
                out[i] = fn(i);
        }));
    }
    for (auto& j : jobs)
        j.get();
    return out;
}

DeviceParams with_rates(DeviceParams p, double gamma3, double kappa)
{
    p.gamma3 = gamma3;
    p.kappa = kappa;
    return p;
}

NoiseConfig decay_noise(double gamma3, double kappa)
{
    NoiseConfig n;
    n.enable_gamma3 = gamma3 > 0.0;
    n.enable_kappa = kappa > 0.0;
    return n;
}

AmplitudeProfile ideal_output(const AmplitudeProfile& input)
{
    AmplitudeProfile out = input;
    out[7] = -out[7];
    return out;
}

double averaged_over_family(const std::vector<StateVector>& images, const DeviceParams& params)
{
    // (1/4pi) int dphi int F sin(nu) dnu with F independent of phi.
    return 0.5 * Gauss64::integrate(
                     [&](double nu) { return simulated_fidelity(images, generic_profile(nu), params) * std::sin(nu); },
                     0.0, kPi);
}

}  // namespace

std::string to_string(ReportSource source)
{
    switch (source) {
    case ReportSource::Analytic: return "analytic";
    case ReportSource::Quadrature: return "quadrature";
    case ReportSource::Simulation: return "simulation";
    }
    return "unknown";
}

double r_factor(double gamma3, double g)
{
    if (!(g > 0.0))
        throw DomainError("r_factor needs a positive coupling");
    if (!(gamma3 >= 0.0) || gamma3 >= 2.0 * g)
        throw DomainError("r_factor needs 0 <= gamma3 < 2g (overdamped regime otherwise)");
    const double lambda = std::sqrt(4.0 * g * g - gamma3 * gamma3);
    const double eta = kPi * gamma3 / (4.0 * g);
    const double theta = kPi * lambda / (4.0 * g);
    return (2.0 * g / lambda) * std::exp(-eta) * std::sin(theta);
}

double phase_gate_fidelity(double r, double nu)
{
    const double c2 = std::cos(nu) * std::cos(nu);
    const double s2 = std::sin(nu) * std::sin(nu);
    const double r2 = r * r;
    const double amp = 1.0 + c2 * s2 * (r2 * r2 - 1.0) + s2 * s2 * (r2 - 1.0);
    return amp * amp;
}

double favg_level_decay(double r)
{
    const double r2 = r * r;
    const double r4 = r2 * r2;
    return (63.0 + 48.0 * r2 + 164.0 * r4 + 32.0 * r4 * r2 + 8.0 * r4 * r4) / 315.0;
}

double favg_level_decay_quadrature(double r)
{
    return 0.5 * Gauss64::integrate([r](double nu) { return phase_gate_fidelity(r, nu) * std::sin(nu); }, 0.0, kPi);
}

AmplitudeProfile generic_profile(double nu)
{
    const double c = std::cos(nu);
    const double s = std::sin(nu);
    return {c * c * c, c * c * s, c * c * s, c * s * s, c * c * s, c * s * s, c * s * s, s * s * s};
}

double success_level_decay(const AmplitudeProfile& profile, double r)
{
    double total = 0.0;
    for (const cplx a : profile)
        total += std::norm(a);
    if (std::abs(total - 1.0) > 1e-9)
        throw DomainError("amplitude profile is not normalized");
    const double r4 = r * r * r * r;
    double p = 0.0;
    for (int b = 0; b < 4; ++b)
        p += std::norm(profile[static_cast<std::size_t>(b)]);
    p += r4 * r4 * (std::norm(profile[4]) + std::norm(profile[5]));
    p += r4 * (std::norm(profile[6]) + std::norm(profile[7]));
    return p;
}

CavityDecayReport favg_cavity_decay(double kappa, double t)
{
    if (!(kappa >= 0.0) || !(t >= 0.0))
        throw DomainError("cavity decay needs kappa, t >= 0");
    const double x = kappa * t;
    const double overlap = 4.0 + 2.0 * std::exp(-2.0 * x) + std::exp(-x) + std::exp(-1.5 * x);
    const double norm = 4.0 + 2.0 * std::exp(-4.0 * x) + std::exp(-2.0 * x) + std::exp(-3.0 * x);
    return {overlap * overlap / (8.0 * norm), norm / 8.0};
}

std::vector<StateVector> phase_gate_images(const NoiseConfig& noise, const DeviceParams& params)
{
    std::vector<StateVector> images;
    images.reserve(kLogicalDim);
    for (int b = 0; b < kLogicalDim; ++b)
        images.push_back(three_qubit_phase_gate(logical_basis_state(b, params), noise, params));
    return images;
}

StateVector apply_images(const std::vector<StateVector>& images, const AmplitudeProfile& input)
{
    if (images.size() != kLogicalDim)
        throw DimensionError("expected eight gate images");
    CVector acc = CVector::Zero(static_cast<Eigen::Index>(images.front().dim()));
    for (std::size_t b = 0; b < images.size(); ++b)
        acc += input[b] * images[b].amplitudes();
    return StateVector(std::move(acc), images.front().n_max());
}

double simulated_fidelity(const std::vector<StateVector>& images, const AmplitudeProfile& input,
                          const DeviceParams& params)
{
    const StateVector out = apply_images(images, input);
    const StateVector ideal = logical_state(ideal_output(input), params, out.n_max());
    return std::norm(overlap(ideal, out));
}

std::array<double, kLogicalDim> simulated_survival(const std::vector<StateVector>& images)
{
    if (images.size() != kLogicalDim)
        throw DimensionError("expected eight gate images");
    std::array<double, kLogicalDim> out{};
    for (std::size_t b = 0; b < out.size(); ++b)
        out[b] = images[b].norm_squared();
    return out;
}

double favg_combined(double gamma3, double kappa, const DeviceParams& params)
{
    if (!(gamma3 >= 0.0) || !(kappa >= 0.0))
        throw DomainError("decay rates must be nonnegative");
    const DeviceParams p = with_rates(params, gamma3, kappa);
    return averaged_over_family(phase_gate_images(decay_noise(gamma3, kappa), p), p);
}

double favg_combined_random(double gamma3, double kappa, const DeviceParams& params, int samples,
                            std::uint64_t seed)
{
    if (samples <= 0)
        throw DomainError("sample count must be positive");
    if (!(gamma3 >= 0.0) || !(kappa >= 0.0))
        throw DomainError("decay rates must be nonnegative");
    const DeviceParams p = with_rates(params, gamma3, kappa);
    const auto images = phase_gate_images(decay_noise(gamma3, kappa), p);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double sum = 0.0;
    for (int i = 0; i < samples; ++i)
        sum += simulated_fidelity(images, generic_profile(std::acos(u(rng))), p);
    return sum / samples;
}

CavityDecayReport simulate_cavity_decay(double kappa, const DeviceParams& params)
{
    if (!(kappa >= 0.0))
        throw DomainError("kappa must be nonnegative");
    const DeviceParams p = with_rates(params, 0.0, kappa);
    const auto images = phase_gate_images(decay_noise(0.0, kappa), p);
    const AmplitudeProfile uniform = generic_profile(kPi / 4.0);
    const double norm = apply_images(images, uniform).norm_squared();
    return {simulated_fidelity(images, uniform, p) / norm, norm};
}

FidelityReport simulate_phase_gate(const NoiseConfig& noise, const DeviceParams& params)
{
    const auto images = phase_gate_images(noise, params);
    FidelityReport rep;
    rep.source = ReportSource::Simulation;
    rep.r = noise.enable_gamma3 ? r_factor(params.gamma3, params.g1()) : 1.0;
    rep.f_ave = averaged_over_family(images, params);
    rep.p = apply_images(images, generic_profile(kPi / 4.0)).norm_squared();
    return rep;
}

double offresonant_fidelity(double x, const LeakageAmplitudes& amps)
{
    const double c = amps.alpha * amps.alpha - amps.beta * amps.beta - amps.gamma * amps.gamma;
    const double v = 1.0 - x - x * c;
    return v * v;
}

double favg_offresonant(double omega12, double g3, double delta_c)
{
    if (!(omega12 > 0.0))
        throw DomainError("omega12 must be positive");
    if (!(delta_c > 0.0))
        throw DomainError("delta_c must be positive");
    const auto a = leakage_amplitudes(omega12, g3 * g3 / delta_c);
    const double a2 = a.alpha * a.alpha, b2 = a.beta * a.beta, c2 = a.gamma * a.gamma;
    return (1.0 + a2 * a2 + b2 * b2 + c2 + c2 * c2 + b2 * (1.0 + 2.0 * c2) - a2 * (1.0 + 2.0 * b2 + 2.0 * c2)) / 3.0;
}

double favg_offresonant_simulated(const DeviceParams& params)
{
    NoiseConfig noise;
    noise.enable_offresonant_leakage = true;
    const auto images = phase_gate_images(noise, params);
    auto fidelity = [&](double x) {
        AmplitudeProfile in;
        in.fill(cplx(std::sqrt((1.0 - x) / 7.0)));
        in[7] = std::sqrt(x);
        return simulated_fidelity(images, in, params);
    };
    return Gauss64::integrate(fidelity, 0.0, 1.0);
}

TimingBudget timing_budget(const DeviceParams& params, int iterations)
{
    if (iterations < 0)
        throw DomainError("iteration count must be nonnegative");
    validate(params);
    const Transition s3 = squid3_drive_transition(params);
    const int zero1 = params.physical_level(1, 0);
    const int one1 = params.physical_level(1, 1);
    const int zero2 = params.physical_level(2, 0);
    const std::pair<const char*, double> rates[] = {
        {"omega13", params.omega(1, LevelPair::of(one1, 3))},
        {"g1", params.coupling(1)},
        {"omega02", params.omega(1, LevelPair::of(zero1, 2))},
        {"g2", params.coupling(2)},
        {"omega30", params.omega(2, LevelPair::of(3, zero2))},
        {"omega12", params.omega(3, LevelPair::of(s3.from, s3.to))},
        {"dispersive", params.dispersive_shift()},
    };
    TimingBudget b;
    b.g_ref = params.g1();
    b.iterations = iterations;
    for (const auto& [name, rate] : rates) {
        if (!(rate > 0.0))
            throw DomainError(std::string("timing needs a positive ") + name);
        const double sec = kPi / rate;
        b.terms.push_back({name, sec, sec * b.g_ref});
        b.tau_gate += sec;
    }
    return b;
}

namespace {

constexpr std::array<std::pair<FigureId, const char*>, 7> kFigureNames{{
    {FigureId::Fig3, "fig3"},
    {FigureId::Fig4a, "fig4a"},
    {FigureId::Fig4b, "fig4b"},
    {FigureId::Fig5a, "fig5a"},
    {FigureId::Fig5b, "fig5b"},
    {FigureId::Fig6, "fig6"},
    {FigureId::Fig7, "fig7"},
}};

// Grover runs with one decay channel swept; `level` picks Gamma3 vs kappa.
Table grover_figure(const FigureGrid& grid, bool level, bool probability)
{
    const auto& runs = level ? grid.level_decay_runs : grid.cavity_decay_runs;
    const double g = grid.params.g1();
    const double t_exchange = kPi / 2.0;  // units of 1/g

    auto results = parallel_map(runs.size(), [&](std::size_t i) {
        GroverConfig cfg;
        cfg.target = LogicalState::from_index(grid.target);
        cfg.iterations = grid.k_max;
        cfg.params = grid.params;
        if (level) {
            cfg.params.gamma3 = runs[i] * g;
            cfg.noise.enable_gamma3 = runs[i] > 0.0;
        } else {
            cfg.params.kappa = runs[i] * g;
            cfg.noise.enable_kappa = runs[i] > 0.0;
        }
        return grover_run(cfg);
    });

    Table t;
    const char* x = level ? "gamma3_over_g" : "kappa_over_g";
    if (probability)
        t.header = {x, "k", "prob_analytic", "prob_simulated"};
    else
        t.header = {x, "k", "fidelity_analytic", "fidelity_joint", "fidelity_conditional"};

    for (std::size_t i = 0; i < runs.size(); ++i) {
        double p_gate = 1.0;
        double f_gate = 1.0;
        if (level) {
            const double r = r_factor(runs[i], 1.0);
            p_gate = success_level_decay(generic_profile(kPi / 4.0), r);
            f_gate = favg_level_decay(r);
        } else {
            const auto c = favg_cavity_decay(runs[i], t_exchange);
            p_gate = c.p;
            f_gate = c.f_ave;
        }
        for (const auto& rec : results[i].records) {
            const double gates = 2.0 * rec.k;
            if (probability)
                t.rows.push_back({runs[i], double(rec.k), ideal_success_probability(rec.k) * std::pow(p_gate, gates),
                                  rec.target_probability});
            else
                t.rows.push_back({runs[i], double(rec.k), std::pow(f_gate, gates), rec.fidelity_joint,
                                  rec.fidelity_conditional});
        }
    }
    return t;
}

}  // namespace

std::string to_string(FigureId id)
{
    for (const auto& [f, name] : kFigureNames)
        if (f == id)
            return name;
    return "unknown";
}

FigureId parse_figure(const std::string& text)
{
    for (const auto& [f, name] : kFigureNames)
        if (text == name)
            return f;
    std::string valid;
    for (const auto& n : figure_ids())
        valid += (valid.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown figure '" + text + "' (valid: " + valid + ")");
}

const std::vector<std::string>& figure_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [f, name] : kFigureNames)
            v.emplace_back(name);
        return v;
    }();
    return ids;
}

Table figure_data(FigureId figure, const FigureGrid& grid)
{
    validate(grid.params);
    const DeviceParams& p = grid.params;
    const double g = p.g1();
    Table t;
    switch (figure) {
    case FigureId::Fig3: {
        t.header = {"gamma3_over_g", "favg_analytic", "favg_simulated"};
        const auto& xs = grid.gamma3_over_g;
        auto sim = parallel_map(xs.size(), [&](std::size_t i) { return favg_combined(xs[i] * g, 0.0, p); });
        for (std::size_t i = 0; i < xs.size(); ++i)
            t.rows.push_back({xs[i], favg_level_decay(r_factor(xs[i], 1.0)), sim[i]});
        return t;
    }
    case FigureId::Fig4a: return grover_figure(grid, true, true);
    case FigureId::Fig4b: return grover_figure(grid, true, false);
    case FigureId::Fig5a: return grover_figure(grid, false, true);
    case FigureId::Fig5b: return grover_figure(grid, false, false);
    case FigureId::Fig6: {
        t.header = {"gamma3_over_g", "kappa_over_g", "favg_simulated", "favg_product"};
        const auto& gs = grid.gamma3_over_g;
        const auto& ks = grid.kappa_over_g;
        const std::size_t n = gs.size() * ks.size();
        auto sim = parallel_map(n, [&](std::size_t i) {
            return favg_combined(gs[i / ks.size()] * g, ks[i % ks.size()] * g, p);
        });
        for (std::size_t i = 0; i < n; ++i) {
            const double x = gs[i / ks.size()];
            const double y = ks[i % ks.size()];
            const double product = favg_level_decay(r_factor(x, 1.0)) * favg_cavity_decay(y, kPi / 2.0).f_ave;
            t.rows.push_back({x, y, sim[i], product});
        }
        return t;
    }
    case FigureId::Fig7: {
        t.header = {"omega12_over_g3", "favg_analytic", "favg_simulated"};
        const auto& xs = grid.omega12_over_g3;
        const double g3 = p.coupling(3);
        const Transition s3 = squid3_drive_transition(p);
        auto sim = parallel_map(xs.size(), [&](std::size_t i) {
            DeviceParams q = p;
            q.omega_overrides[{3, LevelPair::of(s3.from, s3.to)}] = xs[i] * g3;
            return favg_offresonant_simulated(q);
        });
        for (std::size_t i = 0; i < xs.size(); ++i)
            t.rows.push_back({xs[i], favg_offresonant(xs[i] * g3, g3, p.delta_c), sim[i]});
        return t;
    }
    }
    throw std::invalid_argument("unknown figure");
}

}  // namespace sqg
