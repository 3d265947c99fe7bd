#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydpulse/units.hpp"

namespace rydpulse {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Electronic { g, c, r_plus, r_minus };
enum class Spin { up, down, none };

/// One atom's state label. Rydberg levels r+/r- carry their spin content in
/// the electronic label itself (m_F = +-1/2 of the F=3/2 doublet), so their
/// spin tag is `none`; g and c always carry an explicit nuclear spin.
struct AtomLabel {
    Electronic e = Electronic::c;
    Spin n = Spin::up;

    bool is_rydberg() const { return e == Electronic::r_plus || e == Electronic::r_minus; }
    /// +1 for r+, -1 for r-, 0 otherwise.
    int rydberg_sign() const {
        if (e == Electronic::r_plus) return +1;
        if (e == Electronic::r_minus) return -1;
        return 0;
    }
    bool operator==(const AtomLabel&) const = default;
};

inline AtomLabel rydberg_of(Spin s) {
    return {s == Spin::up ? Electronic::r_plus : Electronic::r_minus, Spin::none};
}
inline AtomLabel clock_of(Spin s) { return {Electronic::c, s}; }
inline AtomLabel ground_of(Spin s) { return {Electronic::g, s}; }

inline std::string to_string(const AtomLabel& a) {
    switch (a.e) {
        case Electronic::r_plus: return "r+";
        case Electronic::r_minus: return "r-";
        case Electronic::c: return a.n == Spin::up ? "c_up" : "c_dn";
        case Electronic::g: return a.n == Spin::up ? "g_up" : "g_dn";
    }
    return "?";
}

using ProductLabel = std::vector<AtomLabel>;

inline int rydberg_count(const ProductLabel& L) {
    int k = 0;
    for (const auto& a : L) k += a.is_rydberg() ? 1 : 0;
    return k;
}
inline int rydberg_sign_sum(const ProductLabel& L) {
    int k = 0;
    for (const auto& a : L) k += a.rydberg_sign();
    return k;
}
inline int rydberg_pairs(const ProductLabel& L) {
    int k = rydberg_count(L);
    return k * (k - 1) / 2;
}
inline std::string to_string(const ProductLabel& L) {
    std::string s;
    for (size_t i = 0; i < L.size(); ++i) {
        if (i) s += ' ';
        s += to_string(L[i]);
    }
    return s;
}

/// Conserved-m_F block: the fixed nuclear spin of each atom.
struct SpinClass {
    std::vector<Spin> spins;

    static SpinClass from_string(const std::string& s) {
        SpinClass c;
        for (char ch : s) {
            if (ch == 'u') c.spins.push_back(Spin::up);
            else if (ch == 'd') c.spins.push_back(Spin::down);
            else throw std::invalid_argument("SpinClass: expected 'u'/'d', got '" + s + "'");
        }
        return c;
    }
    std::string name() const {
        std::string s;
        for (Spin x : spins) s += (x == Spin::up ? 'u' : 'd');
        return s;
    }
    int n_atoms() const { return static_cast<int>(spins.size()); }
    bool uniform() const {
        return std::all_of(spins.begin(), spins.end(), [&](Spin x) { return x == spins[0]; });
    }
    int n_up() const {
        return static_cast<int>(std::count(spins.begin(), spins.end(), Spin::up));
    }
    bool operator==(const SpinClass&) const = default;
};

enum class Channel { clock_rydberg, ground_rydberg };

/// Ordered list of product labels spanning one conserved-m_F block.
struct LabeledBasis {
    SpinClass cls;
    Channel channel = Channel::clock_rydberg;
    std::vector<ProductLabel> labels;

    int dim() const { return static_cast<int>(labels.size()); }
    int n_atoms() const { return cls.n_atoms(); }
    int index_of(const ProductLabel& L) const {
        for (int i = 0; i < dim(); ++i)
            if (labels[i] == L) return i;
        throw std::invalid_argument("LabeledBasis: label '" + to_string(L) + "' not in basis");
    }
    bool contains(const ProductLabel& L) const {
        return std::any_of(labels.begin(), labels.end(), [&](const auto& x) { return x == L; });
    }
    bool operator==(const LabeledBasis& o) const {
        return cls == o.cls && channel == o.channel && labels == o.labels;
    }
};

namespace detail {

/// Clock-Rydberg block: every atom in {r_sigma, c_sigma}; ordered by
/// descending Rydberg count, then lexicographically with r before c.
inline std::vector<ProductLabel> clock_labels(const SpinClass& cls) {
    const int n = cls.n_atoms();
    std::vector<ProductLabel> labs;
    for (int mask = 0; mask < (1 << n); ++mask) {
        ProductLabel L(n);
        for (int k = 0; k < n; ++k) {
            bool ryd = !((mask >> (n - 1 - k)) & 1);  // bit 0 = rydberg
            L[k] = ryd ? rydberg_of(cls.spins[k]) : clock_of(cls.spins[k]);
        }
        labs.push_back(std::move(L));
    }
    std::sort(labs.begin(), labs.end(), [](const ProductLabel& a, const ProductLabel& b) {
        int ra = rydberg_count(a), rb = rydberg_count(b);
        if (ra != rb) return ra > rb;
        for (size_t k = 0; k < a.size(); ++k) {
            int xa = a[k].is_rydberg() ? 0 : 1, xb = b[k].is_rydberg() ? 0 : 1;
            if (xa != xb) return xa < xb;
        }
        return false;
    });
    return labs;
}

/// Ground-Rydberg block (single-excitation sector): one atom in r or g, the
/// rest in c. Rydberg labels first, then their ground partners.
inline std::vector<ProductLabel> ground_labels(const SpinClass& cls) {
    const int n = cls.n_atoms();
    std::vector<ProductLabel> labs;
    for (int k = 0; k < n; ++k) {
        ProductLabel L(n);
        for (int j = 0; j < n; ++j) L[j] = j == k ? rydberg_of(cls.spins[j]) : clock_of(cls.spins[j]);
        labs.push_back(std::move(L));
    }
    for (int k = 0; k < n; ++k) {
        ProductLabel L(n);
        for (int j = 0; j < n; ++j) L[j] = j == k ? ground_of(cls.spins[j]) : clock_of(cls.spins[j]);
        labs.push_back(std::move(L));
    }
    return labs;
}

}  // namespace detail

inline LabeledBasis build_basis(int n_atoms, const SpinClass& cls, Channel channel) {
    if (n_atoms != 2 && n_atoms != 3)
        throw std::invalid_argument("build_basis: only 2- and 3-atom blocks exist");
    if (cls.n_atoms() != n_atoms)
        throw std::invalid_argument("build_basis: class '" + cls.name() + "' has wrong atom count");
    if (channel == Channel::ground_rydberg && !cls.uniform())
        throw std::invalid_argument("build_basis: ground-Rydberg blocks exist only for uniform "
                                    "spin classes (got '" + cls.name() + "')");
    LabeledBasis b;
    b.cls = cls;
    b.channel = channel;
    b.labels = channel == Channel::clock_rydberg ? detail::clock_labels(cls)
                                                 : detail::ground_labels(cls);
    return b;
}

/// Dense Hermitian block Hamiltonian, entries in rad/us.
struct HamiltonianMatrix {
    LabeledBasis basis;
    Matrix m;

    double hermiticity_defect() const {
        double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
    }
};

namespace detail {

/// Clock-Rydberg coupling: c_sigma <-> r_sigma with Omega_{c,sigma}/2; the
/// upper-triangle (more-Rydberg row) holds Omega, the lower holds Omega*.
/// Diagonal: V per Rydberg pair plus +-Delta per r+-.
inline HamiltonianMatrix h_clock_rydberg(const SpinClass& cls, Complex omega_up,
                                         Complex omega_down, double delta, double v) {
    HamiltonianMatrix H;
    H.basis = build_basis(cls.n_atoms(), cls, Channel::clock_rydberg);
    const int d = H.basis.dim();
    H.m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const ProductLabel& L = H.basis.labels[i];
        H.m(i, i) = v * rydberg_pairs(L) + delta * rydberg_sign_sum(L);
        for (int k = 0; k < cls.n_atoms(); ++k) {
            if (!L[k].is_rydberg()) continue;
            ProductLabel P = L;
            P[k] = clock_of(cls.spins[k]);
            int j = H.basis.index_of(P);
            Complex om = cls.spins[k] == Spin::up ? omega_up : omega_down;
            H.m(i, j) = om / 2.0;
            H.m(j, i) = std::conj(om) / 2.0;
        }
    }
    return H;
}

/// Ground-Rydberg coupling on the single-excitation block: |..r..> <-> |..g..>
/// with omega_g/2, zero diagonal. The caller passes the signed Rabi frequency
/// (spin-down uses the opposite sign of spin-up).
inline HamiltonianMatrix h_ground_rydberg(const SpinClass& cls, Complex omega_g) {
    HamiltonianMatrix H;
    H.basis = build_basis(cls.n_atoms(), cls, Channel::ground_rydberg);
    const int n = cls.n_atoms();
    H.m = Matrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        H.m(k, n + k) = omega_g / 2.0;
        H.m(n + k, k) = std::conj(omega_g) / 2.0;
    }
    return H;
}

}  // namespace detail

inline HamiltonianMatrix h_clock_rydberg_2atom(const SpinClass& cls, Complex omega_up,
                                               Complex omega_down, double delta, double v) {
    if (cls.n_atoms() != 2) throw std::invalid_argument("h_clock_rydberg_2atom: need a 2-atom class");
    return detail::h_clock_rydberg(cls, omega_up, omega_down, delta, v);
}

inline HamiltonianMatrix h_clock_rydberg_3atom(const SpinClass& cls, Complex omega_up,
                                               Complex omega_down, double delta, double v) {
    if (cls.n_atoms() != 3) throw std::invalid_argument("h_clock_rydberg_3atom: need a 3-atom class");
    return detail::h_clock_rydberg(cls, omega_up, omega_down, delta, v);
}

inline HamiltonianMatrix h_ground_rydberg_2atom(const SpinClass& cls, Complex omega_g) {
    if (cls.n_atoms() != 2 || !cls.uniform())
        throw std::invalid_argument("h_ground_rydberg_2atom: need class uu or dd");
    return detail::h_ground_rydberg(cls, omega_g);
}

inline HamiltonianMatrix h_ground_rydberg_3atom(const SpinClass& cls, Complex omega_g) {
    if (cls.n_atoms() != 3 || !cls.uniform())
        throw std::invalid_argument("h_ground_rydberg_3atom: need class uuu or ddd");
    return detail::h_ground_rydberg(cls, omega_g);
}

/// Complex amplitude vector over a labeled basis.
struct StateVector {
    LabeledBasis basis;
    Vector amps;

    static StateVector unit(const LabeledBasis& b, const ProductLabel& L) {
        StateVector s;
        s.basis = b;
        s.amps = Vector::Zero(b.dim());
        s.amps(b.index_of(L)) = 1.0;
        return s;
    }
    double norm() const { return amps.norm(); }
    Complex amplitude(const ProductLabel& L) const { return amps(basis.index_of(L)); }
};

/// Rotating-frame change between the clock-Rydberg frame and the resonant
/// ground-Rydberg frame: each r+ picks up +phi, each r- picks up -phi.
inline StateVector frame_phase_sbs(const StateVector& state, double phi) {
    StateVector out = state;
    for (int i = 0; i < state.basis.dim(); ++i)
        out.amps(i) *= std::exp(Complex(0.0, phi * rydberg_sign_sum(state.basis.labels[i])));
    return out;
}

/// Stark-assisted frame change: every Rydberg excitation picks up +kappa
/// regardless of its sign (doubly excited labels get 2*kappa).
inline StateVector frame_phase_stark(const StateVector& state, double kappa) {
    StateVector out = state;
    for (int i = 0; i < state.basis.dim(); ++i)
        out.amps(i) *= std::exp(Complex(0.0, kappa * rydberg_count(state.basis.labels[i])));
    return out;
}

/// Physical parameters of a run. Angular frequencies in rad/us, times in us.
struct SystemConfig {
    double delta = 0.0;       // Zeeman half-splitting
    double v0 = 0.0;          // nominal Rydberg interaction
    double tau = 330.0;       // Rydberg lifetime (us)
    double epsilon = 0.0;     // relative interaction spread, [0, 1)
    int n_atoms = 2;
    std::optional<double> b_field_gauss;

    void validate() const {
        if (!(delta > 0.0)) throw std::invalid_argument("SystemConfig: delta must be > 0");
        if (!(v0 > 0.0)) throw std::invalid_argument("SystemConfig: v0 must be > 0");
        if (!(tau > 0.0)) throw std::invalid_argument("SystemConfig: tau must be > 0");
        if (epsilon < 0.0 || epsilon >= 1.0)
            throw std::invalid_argument("SystemConfig: epsilon must lie in [0, 1)");
        if (n_atoms != 2 && n_atoms != 3)
            throw std::invalid_argument("SystemConfig: n_atoms must be 2 or 3");
        if (b_field_gauss && std::abs(b_field_to_delta(*b_field_gauss) - delta) > 1e-9)
            throw std::invalid_argument("SystemConfig: delta inconsistent with b_field_gauss");
    }
};

}  // namespace rydpulse
