#pragma once

#include <Eigen/Eigenvalues>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydpulse/core.hpp"

namespace rydpulse {

/// One constant-Hamiltonian laser pulse. If `h_of_t` is set the segment is
/// explicitly time-dependent and is integrated by midpoint-sampled
/// piecewise-constant sub-steps (`substeps` of them).
struct PulseSegment {
    HamiltonianMatrix hamiltonian;
    double duration = 0.0;  // us
    std::string label;
    std::function<Matrix(double)> h_of_t;  // t local to the segment, in [0, duration)
    int substeps = 0;

    bool time_dependent() const { return static_cast<bool>(h_of_t); }
};

namespace detail {

struct EigenDecomp {
    Eigen::VectorXd w;
    Matrix u;
};

inline EigenDecomp decompose(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("propagate: eigendecomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

inline Vector apply_exp(const EigenDecomp& ed, const Vector& psi, double t) {
    Vector c = ed.u.adjoint() * psi;
    for (int i = 0; i < c.size(); ++i) c(i) *= std::exp(Complex(0.0, -ed.w(i) * t));
    return ed.u * c;
}

inline Vector propagate_td(const PulseSegment& seg, Vector psi) {
    const int n = seg.substeps > 0 ? seg.substeps : 4000;
    const double dt = seg.duration / n;
    for (int k = 0; k < n; ++k) {
        EigenDecomp ed = decompose(seg.h_of_t((k + 0.5) * dt));
        psi = apply_exp(ed, psi, dt);
    }
    return psi;
}

}  // namespace detail

/// exp(-i H t)|psi> by Hermitian eigendecomposition (exact for constant H).
inline StateVector propagate(const StateVector& state, const PulseSegment& segment) {
    if (!(state.basis == segment.hamiltonian.basis))
        throw std::invalid_argument("propagate: state and segment bases differ");
    StateVector out = state;
    if (segment.time_dependent()) {
        out.amps = detail::propagate_td(segment, state.amps);
    } else {
        out.amps = detail::apply_exp(detail::decompose(segment.hamiltonian.m), state.amps,
                                     segment.duration);
    }
    return out;
}

/// Time-resolved record of a pulse sequence.
struct Trajectory {
    LabeledBasis basis;
    std::vector<double> times;              // us, monotone, covers segment boundaries
    std::vector<Vector> states;
    std::vector<int> segment_boundaries;    // index into times at each segment end

    StateVector final_state() const {
        return {basis, states.back()};
    }
};

inline Trajectory run_sequence(const StateVector& initial,
                               const std::vector<PulseSegment>& segments,
                               int n_steps_per_segment = 2000) {
    if (n_steps_per_segment < 2)
        throw std::invalid_argument("run_sequence: need at least 2 steps per segment");
    Trajectory traj;
    traj.basis = initial.basis;
    traj.times.push_back(0.0);
    traj.states.push_back(initial.amps);
    double t0 = 0.0;
    Vector psi = initial.amps;
    for (const auto& seg : segments) {
        if (!(seg.hamiltonian.basis == initial.basis))
            throw std::invalid_argument("run_sequence: segment basis mismatch");
        if (seg.time_dependent()) {
            const int nsub = seg.substeps > 0 ? seg.substeps : 4000;
            const double dt = seg.duration / nsub;
            const int stride = std::max(1, nsub / n_steps_per_segment);
            for (int k = 0; k < nsub; ++k) {
                auto ed = detail::decompose(seg.h_of_t((k + 0.5) * dt));
                psi = detail::apply_exp(ed, psi, dt);
                if ((k + 1) % stride == 0 || k + 1 == nsub) {
                    traj.times.push_back(t0 + (k + 1) * dt);
                    traj.states.push_back(psi);
                }
            }
        } else {
            auto ed = detail::decompose(seg.hamiltonian.m);
            const double dt = seg.duration / (n_steps_per_segment - 1);
            for (int k = 1; k < n_steps_per_segment; ++k) {
                traj.times.push_back(t0 + k * dt);
                traj.states.push_back(detail::apply_exp(ed, psi, k * dt));
            }
            psi = traj.states.back();
        }
        t0 += seg.duration;
        traj.segment_boundaries.push_back(static_cast<int>(traj.times.size()) - 1);
    }
    return traj;
}

/// Expected number of Rydberg excitations: each label weighted by its Rydberg
/// count, so doubly excited labels count twice. This is the decay-rate weight.
inline double rydberg_population(const StateVector& state) {
    double p = 0.0;
    for (int i = 0; i < state.basis.dim(); ++i)
        p += std::norm(state.amps(i)) * rydberg_count(state.basis.labels[i]);
    return p;
}

/// Trapezoidal time integral of rydberg_population along a trajectory (us).
inline double rydberg_time(const Trajectory& traj) {
    if (traj.times.empty()) throw std::invalid_argument("rydberg_time: empty trajectory");
    auto pop = [&](size_t k) {
        double p = 0.0;
        for (int i = 0; i < traj.basis.dim(); ++i)
            p += std::norm(traj.states[k](i)) * rydberg_count(traj.basis.labels[i]);
        return p;
    };
    double integral = 0.0;
    double prev = pop(0);
    for (size_t k = 1; k < traj.times.size(); ++k) {
        double cur = pop(k);
        integral += 0.5 * (prev + cur) * (traj.times[k] - traj.times[k - 1]);
        prev = cur;
    }
    return integral;
}

/// CSV export: time_us, |amplitude|^2 per basis label, phase (rad) of the
/// designated target label.
inline void export_trajectory_csv(const Trajectory& traj, const ProductLabel& target,
                                  std::ostream& os) {
    const int it = traj.basis.index_of(target);
    os << "time_us";
    for (const auto& L : traj.basis.labels) {
        std::string name = to_string(L);
        for (auto& ch : name)
            if (ch == ' ') ch = '.';
        os << ",pop." << name;
    }
    os << ",phase.target\n";
    os.precision(12);
    for (size_t k = 0; k < traj.times.size(); ++k) {
        os << traj.times[k];
        for (int i = 0; i < traj.basis.dim(); ++i) os << ',' << std::norm(traj.states[k](i));
        os << ',' << std::arg(traj.states[k](it)) << '\n';
    }
}

}  // namespace rydpulse
