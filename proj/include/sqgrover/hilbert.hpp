#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace sqg {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr int kLevels = 4;
inline constexpr int kSquids = 3;
inline constexpr int kSquidDim = kLevels * kLevels * kLevels;
inline constexpr int kDefaultNMax = 2;

class BoundsError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Physical level of each SQUID plus cavity photon number.
struct BasisLabel {
    int s1 = 0;
    int s2 = 0;
    int s3 = 0;
    int n = 0;

    int squid(int which) const;
    BasisLabel with_squid(int which, int level) const;
    BasisLabel with_photons(int photons) const;

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

inline std::size_t space_dim(int n_max) { return static_cast<std::size_t>(kSquidDim) * (n_max + 1); }

/// Flat index, SQUID1-major and cavity-minor:
/// ((s1*4 + s2)*4 + s3)*(n_max+1) + n.
std::size_t basis_index(const BasisLabel& label, int n_max);
BasisLabel label_of(std::size_t index, int n_max);

/// Amplitudes over |s1 s2 s3>|n>_c. Operations never renormalize, so the
/// squared norm carries the no-jump survival probability.
class StateVector {
public:
    explicit StateVector(int n_max = kDefaultNMax);
    StateVector(CVector amplitudes, int n_max);

    static StateVector basis(const BasisLabel& label, int n_max = kDefaultNMax);

    int n_max() const { return n_max_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const CVector& amplitudes() const { return amps_; }

    cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }
    cplx at(const BasisLabel& label) const { return amps_[static_cast<Eigen::Index>(basis_index(label, n_max_))]; }

    double norm_squared() const { return amps_.squaredNorm(); }
    /// Total population with exactly `photons` in the cavity.
    double photon_population(int photons) const;

    // Mutating helpers used while assembling states and inside primitives.
    void set(const BasisLabel& label, cplx value) { amps_[static_cast<Eigen::Index>(basis_index(label, n_max_))] = value; }
    CVector& mutable_amplitudes() { return amps_; }

    friend StateVector operator+(const StateVector& a, const StateVector& b);
    friend StateVector operator*(cplx c, const StateVector& s);

private:
    CVector amps_;
    int n_max_;
};

/// <a|b>, conjugate-linear in the first argument.
cplx overlap(const StateVector& a, const StateVector& b);

enum class Subsystem { Squid1 = 0, Squid2 = 1, Squid3 = 2, Cavity = 3 };

Subsystem squid_subsystem(int which);

/// A dense operator on an ordered subset of factors. Local index ordering
/// follows the global ordering restricted to the chosen factors.
struct OperatorBlock {
    CMatrix matrix;
    std::vector<Subsystem> subsystems;
};

/// Full-space matrix: identity on untouched factors. Subsystems are sorted
/// into basis order before embedding; the block must use that order.
CMatrix embed_operator(const OperatorBlock& block, int n_max);

/// Applies a 4x4 operator to one SQUID's physical levels.
StateVector apply_squid_operator(const StateVector& state, int which, const Eigen::Matrix4cd& op);

}  // namespace sqg
