#include "sqgrover/hilbert.hpp"

#include <algorithm>
#include <string>

namespace sqg {

namespace {

void check_level(int level, const char* what)
{
    if (level < 0 || level >= kLevels)
        throw BoundsError(std::string(what) + " level " + std::to_string(level) + " outside 0..3");
}

void check_squid(int which)
{
    if (which < 1 || which > kSquids)
        throw BoundsError("SQUID index " + std::to_string(which) + " outside 1..3");
}

int dim_of(Subsystem s, int n_max) { return s == Subsystem::Cavity ? n_max + 1 : kLevels; }

int component(const BasisLabel& l, Subsystem s)
{
    switch (s) {
    case Subsystem::Squid1: return l.s1;
    case Subsystem::Squid2: return l.s2;
    case Subsystem::Squid3: return l.s3;
    case Subsystem::Cavity: return l.n;
    }
    return 0;
}

}  // namespace

int BasisLabel::squid(int which) const
{
    check_squid(which);
    return which == 1 ? s1 : (which == 2 ? s2 : s3);
}

BasisLabel BasisLabel::with_squid(int which, int level) const
{
    check_squid(which);
    BasisLabel out = *this;
    (which == 1 ? out.s1 : (which == 2 ? out.s2 : out.s3)) = level;
    return out;
}

BasisLabel BasisLabel::with_photons(int photons) const
{
    BasisLabel out = *this;
    out.n = photons;
    return out;
}

std::size_t basis_index(const BasisLabel& label, int n_max)
{
    if (n_max < 0)
        throw BoundsError("negative photon truncation");
    check_level(label.s1, "SQUID 1");
    check_level(label.s2, "SQUID 2");
    check_level(label.s3, "SQUID 3");
    if (label.n < 0 || label.n > n_max)
        throw BoundsError("photon number " + std::to_string(label.n) + " outside 0.." + std::to_string(n_max));
    const std::size_t squids = static_cast<std::size_t>((label.s1 * kLevels + label.s2) * kLevels + label.s3);
    return squids * static_cast<std::size_t>(n_max + 1) + static_cast<std::size_t>(label.n);
}

BasisLabel label_of(std::size_t index, int n_max)
{
    if (n_max < 0 || index >= space_dim(n_max))
        throw BoundsError("flat index " + std::to_string(index) + " outside state space");
    const auto stride = static_cast<std::size_t>(n_max + 1);
    const auto squids = static_cast<int>(index / stride);
    return {squids / 16, (squids / 4) % 4, squids % 4, static_cast<int>(index % stride)};
}

StateVector::StateVector(int n_max)
    : amps_(CVector::Zero(static_cast<Eigen::Index>(space_dim(n_max)))), n_max_(n_max)
{
}

StateVector::StateVector(CVector amplitudes, int n_max) : amps_(std::move(amplitudes)), n_max_(n_max)
{
    if (n_max < 0 || static_cast<std::size_t>(amps_.size()) != space_dim(n_max))
        throw DimensionError("amplitude vector length " + std::to_string(amps_.size()) +
                             " does not match 64*(n_max+1)");
}

StateVector StateVector::basis(const BasisLabel& label, int n_max)
{
    StateVector s(n_max);
    s.set(label, 1.0);
    return s;
}

double StateVector::photon_population(int photons) const
{
    if (photons < 0 || photons > n_max_)
        return 0.0;
    double p = 0.0;
    const auto stride = static_cast<Eigen::Index>(n_max_ + 1);
    for (Eigen::Index i = photons; i < amps_.size(); i += stride)
        p += std::norm(amps_[i]);
    return p;
}

StateVector operator+(const StateVector& a, const StateVector& b)
{
    if (a.n_max_ != b.n_max_)
        throw DimensionError("cannot add states with different photon truncation");
    return StateVector(a.amps_ + b.amps_, a.n_max_);
}

StateVector operator*(cplx c, const StateVector& s) { return StateVector(c * s.amps_, s.n_max_); }

cplx overlap(const StateVector& a, const StateVector& b)
{
    if (a.n_max() != b.n_max() || a.dim() != b.dim())
        throw DimensionError("overlap of states with mismatched dimensions");
    return a.amplitudes().dot(b.amplitudes());
}

Subsystem squid_subsystem(int which)
{
    check_squid(which);
    return static_cast<Subsystem>(which - 1);
}

CMatrix embed_operator(const OperatorBlock& block, int n_max)
{
    std::vector<Subsystem> subs = block.subsystems;
    std::sort(subs.begin(), subs.end());
    if (std::adjacent_find(subs.begin(), subs.end()) != subs.end())
        throw DimensionError("repeated subsystem in operator block");
    if (subs != block.subsystems)
        throw DimensionError("operator block subsystems must be listed in basis order");

    Eigen::Index local_dim = 1;
    for (auto s : subs)
        local_dim *= dim_of(s, n_max);
    if (block.matrix.rows() != local_dim || block.matrix.cols() != local_dim)
        throw DimensionError("block is " + std::to_string(block.matrix.rows()) + "x" +
                             std::to_string(block.matrix.cols()) + ", subsystems need " +
                             std::to_string(local_dim));

    const auto dim = static_cast<Eigen::Index>(space_dim(n_max));
    auto local_index = [&](const BasisLabel& l) {
        Eigen::Index idx = 0;
        for (auto s : subs)
            idx = idx * dim_of(s, n_max) + component(l, s);
        return idx;
    };
    auto untouched_equal = [&](const BasisLabel& a, const BasisLabel& b) {
        for (int f = 0; f < 4; ++f) {
            const auto s = static_cast<Subsystem>(f);
            if (std::find(subs.begin(), subs.end(), s) == subs.end() && component(a, s) != component(b, s))
                return false;
        }
        return true;
    };

    std::vector<BasisLabel> labels;
    labels.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i)
        labels.push_back(label_of(static_cast<std::size_t>(i), n_max));

    CMatrix full = CMatrix::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            if (untouched_equal(labels[r], labels[c]))
                full(r, c) = block.matrix(local_index(labels[r]), local_index(labels[c]));
        }
    }
    return full;
}

StateVector apply_squid_operator(const StateVector& state, int which, const Eigen::Matrix4cd& op)
{
    check_squid(which);
    const int n_max = state.n_max();
    CVector out = CVector::Zero(static_cast<Eigen::Index>(state.dim()));
    const auto& in = state.amplitudes();
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const cplx a = in[static_cast<Eigen::Index>(i)];
        if (a == cplx{})
            continue;
        const BasisLabel l = label_of(i, n_max);
        const int from = l.squid(which);
        for (int to = 0; to < kLevels; ++to) {
            const cplx m = op(to, from);
            if (m != cplx{})
                out[static_cast<Eigen::Index>(basis_index(l.with_squid(which, to), n_max))] += m * a;
        }
    }
    return StateVector(std::move(out), n_max);
}

}  // namespace sqg
