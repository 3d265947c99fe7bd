#pragma once

#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydpulse/core.hpp"
#include "rydpulse/reports.hpp"

namespace rydpulse {

/// Per-atom level order in the measurement space: g_up, g_dn, c_up, c_dn.
enum class Level : int { g_up = 0, g_dn = 1, c_up = 2, c_dn = 3 };

inline bool level_is_ground(int lv) { return lv < 2; }
inline bool level_is_up(int lv) { return lv % 2 == 0; }

/// Pure state of n atoms in the (g/c (x) up/down) product space, atom 0 most
/// significant. States coming out of embed_report keep the sub-unit norm left
/// after dropping Rydberg leakage; everything else is unit-normalized.
struct PureState {
    int n_atoms = 2;
    Vector amps;

    static PureState zero(int n) {
        PureState s;
        s.n_atoms = n;
        s.amps = Vector::Zero(1 << (2 * n));
        return s;
    }
    int dim() const { return 1 << (2 * n_atoms); }
    int level_of(int index, int atom) const {
        return (index >> (2 * (n_atoms - 1 - atom))) & 3;
    }
    static int index_of(const std::vector<int>& levels) {
        int idx = 0;
        for (int lv : levels) idx = (idx << 2) | lv;
        return idx;
    }
    Complex& at(const std::vector<int>& levels) { return amps(index_of(levels)); }
    double norm() const { return amps.norm(); }
    PureState normalized() const {
        PureState s = *this;
        double n = norm();
        if (n > 0) s.amps /= n;
        return s;
    }
};

inline int level_of_atom_label(const AtomLabel& a) {
    if (a.is_rydberg()) return -1;
    int base = a.e == Electronic::g ? 0 : 2;
    return base + (a.n == Spin::up ? 0 : 1);
}

namespace detail {

inline int product_index(const ProductLabel& L) {
    int idx = 0;
    for (const auto& a : L) {
        int lv = level_of_atom_label(a);
        if (lv < 0) return -1;
        idx = (idx << 2) | lv;
    }
    return idx;
}

}  // namespace detail

constexpr int L_gu = 0, L_gd = 1, L_cu = 2, L_cd = 3;

/// Target SBS of the three-pulse protocol with the realized phases theta_1..3.
inline PureState sbs_state(double th1, double th2, double th3) {
    PureState s = PureState::zero(2);
    const double r8 = 1.0 / std::sqrt(8.0);
    Complex e1 = std::exp(Complex(0, th1)), e2 = std::exp(Complex(0, th2)),
            e3 = std::exp(Complex(0, th3));
    s.at({L_cu, L_gu}) = e1 * r8;
    s.at({L_gu, L_cu}) = e1 * r8;
    s.at({L_cd, L_gd}) = e2 * r8;
    s.at({L_gd, L_cd}) = e2 * r8;
    s.at({L_cu, L_cd}) = e3 * 0.5;
    s.at({L_cd, L_cu}) = e3 * 0.5;
    return s;
}

/// Target three-atom W/GHZ state with realized phases: vartheta_1 on the
/// two-up spin W component, vartheta_2 on the two-down one, vartheta_3/4 on
/// the electronic-W branches with all-up/all-down spins.
inline PureState triangle_state(double vt1, double vt2, double vt3, double vt4) {
    PureState s = PureState::zero(3);
    const double c_w = std::sqrt(6.0) / 2.0 / 2.0 / std::sqrt(3.0);  // (1/2)(sqrt6/2)(1/sqrt3)
    Complex e1 = std::exp(Complex(0, vt1)), e2 = std::exp(Complex(0, vt2));
    const std::array<std::array<int, 3>, 3> two_up = {{{L_cu, L_cu, L_cd},
                                                       {L_cu, L_cd, L_cu},
                                                       {L_cd, L_cu, L_cu}}};
    for (const auto& k : two_up) s.at({k[0], k[1], k[2]}) = e1 * c_w;
    const std::array<std::array<int, 3>, 3> two_dn = {{{L_cu, L_cd, L_cd},
                                                       {L_cd, L_cu, L_cd},
                                                       {L_cd, L_cd, L_cu}}};
    for (const auto& k : two_dn) s.at({k[0], k[1], k[2]}) = e2 * c_w;
    const double c_g = 1.0 / 2.0 / std::sqrt(3.0) / std::sqrt(2.0);  // (1/2)(1/sqrt3)(1/sqrt2)
    Complex e3 = std::exp(Complex(0, vt3)), e4 = std::exp(Complex(0, vt4));
    for (int pos = 0; pos < 3; ++pos) {
        std::vector<int> up = {L_cu, L_cu, L_cu}, dn = {L_cd, L_cd, L_cd};
        up[pos] = L_gu;
        dn[pos] = L_gd;
        s.at(up) = e3 * c_g;
        s.at(dn) = e4 * c_g;
    }
    return s;
}

/// Lift the per-class final states of a protocol run into the measurement
/// space, with the equal-superposition input weights. Rydberg amplitudes have
/// no image here and are dropped, so the result's squared norm is 1 minus the
/// total Rydberg leakage and the overlap with the analytic target equals
/// 1 - state_rotation_error exactly.
inline PureState embed_report(const ProtocolReport& report, Protocol protocol) {
    if (report.classes.empty()) throw std::invalid_argument("embed_report: empty report");
    if (report.protocol != protocol)
        throw std::invalid_argument("embed_report: report/protocol mismatch");
    const int n = static_cast<int>(report.classes.front().name.size());
    PureState out = PureState::zero(n);
    const double w = 1.0 / std::sqrt(static_cast<double>(1 << n));
    for (const auto& c : report.classes) {
        if (c.final_state.basis.dim() == 0)
            throw std::invalid_argument("embed_report: report lacks final states");
        for (int i = 0; i < c.final_state.basis.dim(); ++i) {
            int idx = detail::product_index(c.final_state.basis.labels[i]);
            if (idx >= 0) out.amps(idx) += w * c.final_state.amps(i);
        }
    }
    return out;
}

enum class Classification {
    bell_nuclear,
    bell_electronic,
    ghz_nuclear,
    w_electronic,
    hyperentangled,
    product,
    other,
};

inline std::string to_string(Classification c) {
    switch (c) {
        case Classification::bell_nuclear: return "bell_nuclear";
        case Classification::bell_electronic: return "bell_electronic";
        case Classification::ghz_nuclear: return "ghz_nuclear";
        case Classification::w_electronic: return "w_electronic";
        case Classification::hyperentangled: return "hyperentangled";
        case Classification::product: return "product";
        case Classification::other: return "other";
    }
    return "?";
}

namespace detail {

enum class SectorKind { product, bell, ghz, w, none };

/// Largest overlap of `v` with an equal-weight superposition of the kets in
/// `kets`, free relative phases (the per-atom diagonal phase orbit).
inline double orbit_fidelity(const Vector& v, const std::vector<int>& kets) {
    double s = 0.0;
    for (int k : kets) s += std::abs(v(k));
    return s * s / static_cast<double>(kets.size());
}

inline bool sector_is_product(const Vector& v, int n) {
    for (int atom = 0; atom < n; ++atom) {
        Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
        for (int i = 0; i < v.size(); ++i) {
            for (int j = 0; j < v.size(); ++j) {
                int bi = (i >> (n - 1 - atom)) & 1, bj = (j >> (n - 1 - atom)) & 1;
                if ((i & ~(1 << (n - 1 - atom))) != (j & ~(1 << (n - 1 - atom)))) continue;
                rho(bi, bj) += v(i) * std::conj(v(j));
            }
        }
        double purity = (rho * rho).trace().real();
        if (purity < 0.999) return false;
    }
    return true;
}

inline SectorKind sector_kind(const Vector& v, int n, double th) {
    if (sector_is_product(v, n)) return SectorKind::product;
    if (n == 2) {
        if (orbit_fidelity(v, {0, 3}) >= th || orbit_fidelity(v, {1, 2}) >= th)
            return SectorKind::bell;
    } else if (n == 3) {
        if (orbit_fidelity(v, {0, 7}) >= th) return SectorKind::ghz;
        if (orbit_fidelity(v, {1, 2, 4}) >= th || orbit_fidelity(v, {3, 5, 6}) >= th)
            return SectorKind::w;
    }
    return SectorKind::none;
}

}  // namespace detail

/// Best entanglement class with fidelity >= 0.999, judged up to per-atom
/// diagonal phase redefinitions; "other" when nothing qualifies.
inline Classification classify(const PureState& state) {
    constexpr double th = 0.999;
    const int n = state.n_atoms;
    PureState s = state.normalized();
    if (s.norm() < 1e-12) return Classification::other;

    // Split into electronic (g/c) x nuclear (up/down) sectors and test for a
    // tensor-product structure between them.
    const int d = 1 << n;
    Matrix m = Matrix::Zero(d, d);
    for (int idx = 0; idx < s.dim(); ++idx) {
        int e = 0, nu = 0;
        for (int atom = 0; atom < n; ++atom) {
            int lv = s.level_of(idx, atom);
            e = (e << 1) | (level_is_ground(lv) ? 0 : 1);  // 0 = g, 1 = c
            nu = (nu << 1) | (level_is_up(lv) ? 0 : 1);    // 0 = up, 1 = down
        }
        m(e, nu) += s.amps(idx);
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double sep = svd.singularValues()(0) * svd.singularValues()(0);
    if (sep >= th) {
        Vector ve = svd.matrixU().col(0);
        Vector vn = svd.matrixV().col(0).conjugate();
        auto ke = detail::sector_kind(ve, n, th);
        auto kn = detail::sector_kind(vn, n, th);
        using K = detail::SectorKind;
        if (ke == K::product && kn == K::product) return Classification::product;
        if (n == 2) {
            if (ke == K::product && kn == K::bell) return Classification::bell_nuclear;
            if (ke == K::bell && kn == K::product) return Classification::bell_electronic;
            if (ke == K::bell && kn == K::bell) return Classification::hyperentangled;
        } else {
            if (ke == K::product && kn == K::ghz) return Classification::ghz_nuclear;
            if (ke == K::w && kn == K::product) return Classification::w_electronic;
            if ((ke == K::w || ke == K::ghz) && (kn == K::ghz || kn == K::w))
                return Classification::hyperentangled;
            if (ke == K::product && kn == K::bell) return Classification::bell_nuclear;
        }
        return Classification::other;
    }

    // Electron-nuclear entangled within atoms can still be an atom product.
    bool atom_product = true;
    for (int atom = 0; atom < n && atom_product; ++atom) {
        Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
        const int shift = 2 * (n - 1 - atom);
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j) {
                if ((i & ~(3 << shift)) != (j & ~(3 << shift))) continue;
                rho((i >> shift) & 3, (j >> shift) & 3) += s.amps(i) * std::conj(s.amps(j));
            }
        if ((rho * rho).trace().real() < th) atom_product = false;
    }
    return atom_product ? Classification::product : Classification::other;
}

enum class DetectorOutcome { light, no_light };

inline std::string to_string(DetectorOutcome o) {
    return o == DetectorOutcome::light ? "light" : "no_light";
}

struct MeasurementOutcome {
    double probability = 0.0;
    PureState collapsed;
    Classification classification = Classification::other;
    bool possible = true;  // false for zero-probability branches
};

namespace detail {

inline MeasurementOutcome project(const PureState& state, const Vector& mask) {
    double total = state.amps.squaredNorm();
    if (total <= 0.0) throw std::invalid_argument("measure: zero state");
    PureState proj = state;
    proj.amps = state.amps.cwiseProduct(mask);
    double w = proj.amps.squaredNorm();
    MeasurementOutcome out;
    out.probability = w / total;
    if (w < 1e-24) {
        out.possible = false;
        out.probability = 0.0;
        out.collapsed = PureState::zero(state.n_atoms);
        out.classification = Classification::other;
        return out;
    }
    proj.amps /= std::sqrt(w);
    out.collapsed = proj;
    out.classification = classify(proj);
    return out;
}

}  // namespace detail

/// Projective fluorescence measurement of one atom: `light` projects it onto
/// the ground manifold, `no_light` onto the clock manifold. Nuclear spins are
/// untouched.
inline MeasurementOutcome measure_atom(const PureState& state, int atom, DetectorOutcome outcome) {
    if (atom < 0 || atom >= state.n_atoms) throw std::invalid_argument("measure_atom: bad index");
    Vector mask = Vector::Zero(state.dim());
    for (int i = 0; i < state.dim(); ++i) {
        bool ground = level_is_ground(state.level_of(i, atom));
        mask(i) = (ground == (outcome == DetectorOutcome::light)) ? 1.0 : 0.0;
    }
    return detail::project(state, mask);
}

/// Indistinguishable collective detection: `no_light` projects onto the
/// all-clock subspace; `light` onto its orthogonal complement, preserving
/// coherence between which-atom alternatives.
inline MeasurementOutcome measure_collective(const PureState& state, DetectorOutcome outcome) {
    Vector mask = Vector::Zero(state.dim());
    for (int i = 0; i < state.dim(); ++i) {
        bool all_clock = true;
        for (int atom = 0; atom < state.n_atoms; ++atom)
            all_clock = all_clock && !level_is_ground(state.level_of(i, atom));
        mask(i) = (all_clock == (outcome == DetectorOutcome::no_light)) ? 1.0 : 0.0;
    }
    return detail::project(state, mask);
}

}  // namespace rydpulse
