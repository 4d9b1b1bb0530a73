#pragma once

// State catalog: Fock states, coherent states and finite superpositions of
// them, with exact Bargmann functions f(w) = exp(|w|^2/2) <psi|w>, their
// derivative towers, and position-space wavefunctions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "bargwig/error.hpp"
#include "bargwig/phase_point.hpp"
#include "bargwig/special.hpp"

namespace bargwig {

inline constexpr std::size_t kMaxSuperpositionTerms = 64;
inline constexpr double kNormalizationTolerance = 1e-12;

struct Fock {
    int n = 0;
};

/// Coherent state |U>. The label U is relative to the state's own width B:
/// sqrt(2) U = Q/B + i B P / hbar. An unset width means "same as the basis".
struct Coherent {
    complex label;
    std::optional<double> width;
};

using PureState = std::variant<Fock, Coherent>;

struct Term {
    complex coeff;
    PureState state;
};

struct Superposition {
    std::vector<Term> terms;
};

class StateSpec {
public:
    using Variant = std::variant<Fock, Coherent, Superposition>;

    static StateSpec fock(int n) {
        if (n < 0) throw InvalidArgument("Fock number must be non-negative");
        return StateSpec(Fock{n});
    }

    static StateSpec coherent(complex label, std::optional<double> width = std::nullopt) {
        if (width && !(*width > 0.0)) throw InvalidArgument("coherent-state width must be positive");
        return StateSpec(Coherent{label, width});
    }

    /// Builds a superposition. Unless `normalize` is set, the coefficients
    /// must already give a unit-norm state.
    static StateSpec superposition(std::vector<Term> terms, bool normalize = false);

    [[nodiscard]] const Variant& variant() const noexcept { return v_; }

    /// Degree of the Bargmann polynomial, if f is a polynomial.
    [[nodiscard]] std::optional<int> exact_degree() const;

    /// Common width of the coherent components, if any has one set.
    [[nodiscard]] std::optional<double> coherent_width() const;

    [[nodiscard]] bool is_fock() const { return std::holds_alternative<Fock>(v_); }
    [[nodiscard]] bool is_coherent() const { return std::holds_alternative<Coherent>(v_); }
    [[nodiscard]] bool is_superposition() const { return std::holds_alternative<Superposition>(v_); }

private:
    explicit StateSpec(Variant v) : v_(std::move(v)) {}

    Variant v_;
};

// ---------------------------------------------------------------------------
// Overlaps

namespace detail {

inline std::optional<double> width_of(const PureState& s) {
    if (const auto* c = std::get_if<Coherent>(&s)) return c->width;
    return std::nullopt;
}

/// <n|U> for a coherent state of the same width as the Fock basis.
inline complex fock_coherent_overlap(int n, complex u) {
    const double lognorm = -0.5 * std::norm(u) - 0.5 * log_factorial(n);
    return std::exp(lognorm) * ipow(u, n);
}

}  // namespace detail

/// <a|b> for two catalog pure states of the same width.
inline complex inner_product(const PureState& a, const PureState& b) {
    return std::visit(
        [](const auto& x, const auto& y) -> complex {
            using X = std::decay_t<decltype(x)>;
            using Y = std::decay_t<decltype(y)>;
            if constexpr (std::is_same_v<X, Fock> && std::is_same_v<Y, Fock>) {
                return x.n == y.n ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<X, Fock> && std::is_same_v<Y, Coherent>) {
                return detail::fock_coherent_overlap(x.n, y.label);
            } else if constexpr (std::is_same_v<X, Coherent> && std::is_same_v<Y, Fock>) {
                return std::conj(detail::fock_coherent_overlap(y.n, x.label));
            } else {
                return std::exp(-0.5 * std::norm(x.label) - 0.5 * std::norm(y.label) + std::conj(x.label) * y.label);
            }
        },
        a, b);
}

inline double norm_squared(const std::vector<Term>& terms) {
    ComplexNeumaierSum acc;
    for (const auto& tk : terms) {
        for (const auto& tl : terms) acc.add(std::conj(tk.coeff) * tl.coeff * inner_product(tk.state, tl.state));
    }
    return acc.value().real();
}

inline StateSpec StateSpec::superposition(std::vector<Term> terms, bool normalize) {
    if (terms.empty()) throw InvalidArgument("superposition needs at least one term");
    if (terms.size() > kMaxSuperpositionTerms) {
        throw InvalidArgument("superposition has " + std::to_string(terms.size()) + " terms; the limit is " +
                              std::to_string(kMaxSuperpositionTerms));
    }
    std::optional<double> width;
    bool width_seen = false;
    for (const auto& t : terms) {
        if (const auto* f = std::get_if<Fock>(&t.state); f && f->n < 0) {
            throw InvalidArgument("Fock number must be non-negative");
        }
        if (std::holds_alternative<Coherent>(t.state)) {
            const auto w = detail::width_of(t.state);
            if (w && !(*w > 0.0)) throw InvalidArgument("coherent-state width must be positive");
            if (width_seen && w != width) {
                throw InvalidArgument("coherent components of a superposition must share one width");
            }
            width = w;
            width_seen = true;
        }
    }
    const bool has_fock = std::any_of(terms.begin(), terms.end(),
                                      [](const Term& t) { return std::holds_alternative<Fock>(t.state); });
    if (has_fock && width) {
        throw InvalidArgument("a superposition with Fock components cannot fix a separate coherent width");
    }
    const double n2 = norm_squared(terms);
    if (!(n2 > 0.0)) throw InvalidArgument("superposition has zero norm");
    if (normalize) {
        const double scale = 1.0 / std::sqrt(n2);
        for (auto& t : terms) t.coeff *= scale;
    } else if (std::abs(n2 - 1.0) > kNormalizationTolerance) {
        throw InvalidArgument("superposition is not normalized (norm^2 = " + std::to_string(n2) +
                              "); pass normalize to rescale");
    }
    return StateSpec(Superposition{std::move(terms)});
}

inline std::optional<int> StateSpec::exact_degree() const {
    return std::visit(
        [](const auto& s) -> std::optional<int> {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Fock>) {
                return s.n;
            } else if constexpr (std::is_same_v<S, Coherent>) {
                // The vacuum is the only coherent state with polynomial f.
                if (s.label == complex{}) return 0;
                return std::nullopt;
            } else {
                int degree = 0;
                for (const auto& t : s.terms) {
                    if (const auto* f = std::get_if<Fock>(&t.state)) {
                        degree = std::max(degree, f->n);
                    } else if (std::get<Coherent>(t.state).label != complex{}) {
                        return std::nullopt;
                    }
                }
                return degree;
            }
        },
        v_);
}

inline std::optional<double> StateSpec::coherent_width() const {
    if (const auto* c = std::get_if<Coherent>(&v_)) return c->width;
    if (const auto* s = std::get_if<Superposition>(&v_)) {
        for (const auto& t : s->terms) {
            if (auto w = detail::width_of(t.state)) return w;
        }
    }
    return std::nullopt;
}

/// Throws unless every coherent component of `state` has the basis width.
/// States of a different width have no catalog Bargmann tower in this basis.
inline void require_basis_width(const StateSpec& state, const BasisParams& basis) {
    const auto w = state.coherent_width();
    if (w && std::abs(*w - basis.b()) > 1e-15 * basis.b()) {
        throw InvalidArgument("coherent state of width " + std::to_string(*w) + " differs from basis width " +
                              std::to_string(basis.b()) + "; only the closed form handles cross-width states");
    }
}

// ---------------------------------------------------------------------------
// Bargmann functions

inline complex bargmann_of_fock(int n, complex z) {
    return detail::ipow(z, n) * std::exp(-0.5 * log_factorial(n));
}

/// f(z) = exp(conj(U) z - |U|^2 / 2).
inline complex bargmann_of_coherent(complex u, complex z) {
    return std::exp(std::conj(u) * z - 0.5 * std::norm(u));
}

inline complex bargmann(const PureState& s, complex z) {
    if (const auto* f = std::get_if<Fock>(&s)) return bargmann_of_fock(f->n, z);
    return bargmann_of_coherent(std::get<Coherent>(s).label, z);
}

/// f_psi(z). For |psi> = sum_k c_k |k>, f_psi = sum_k conj(c_k) f_k since f
/// is built from the bra <psi|.
inline complex bargmann(const StateSpec& state, complex z) {
    return std::visit(
        [z](const auto& s) -> complex {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Superposition>) {
                complex acc{};
                for (const auto& t : s.terms) acc += std::conj(t.coeff) * bargmann(t.state, z);
                return acc;
            } else {
                return bargmann(PureState{s}, z);
            }
        },
        state.variant());
}

/// Values f, f', ..., f^(K) at z.
struct BargmannDerivatives {
    complex z;
    std::vector<complex> values;
    std::optional<int> exact_degree;

    [[nodiscard]] int order() const { return static_cast<int>(values.size()) - 1; }
};

namespace detail {

inline void add_tower(const PureState& s, complex weight, complex z, std::vector<complex>& out) {
    const int top = static_cast<int>(out.size()) - 1;
    if (const auto* f = std::get_if<Fock>(&s)) {
        // d^j/dz^j z^N / sqrt(N!) = sqrt(N!) z^(N-j) / (N-j)!
        const int n = f->n;
        const double half_log_nfact = 0.5 * log_factorial(n);
        complex zpow{1.0, 0.0};
        for (int j = n; j >= 0; --j) {
            if (j <= top) out[static_cast<std::size_t>(j)] += weight * std::exp(half_log_nfact - log_factorial(n - j)) * zpow;
            zpow *= z;
        }
        return;
    }
    const complex u_bar = std::conj(std::get<Coherent>(s).label);
    complex v = weight * bargmann_of_coherent(std::get<Coherent>(s).label, z);
    for (int j = 0; j <= top; ++j) {
        out[static_cast<std::size_t>(j)] += v;
        v *= u_bar;
    }
}

}  // namespace detail

/// Exact derivatives d^j f / dz^j for j = 0..K.
inline BargmannDerivatives derivative_tower(const StateSpec& state, complex z, int order) {
    if (order < 0) throw InvalidArgument("derivative order must be non-negative");
    BargmannDerivatives d{z, std::vector<complex>(static_cast<std::size_t>(order) + 1), state.exact_degree()};
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Superposition>) {
                for (const auto& t : s.terms) detail::add_tower(t.state, std::conj(t.coeff), z, d.values);
            } else {
                detail::add_tower(PureState{s}, complex{1.0, 0.0}, z, d.values);
            }
        },
        state.variant());
    return d;
}

// ---------------------------------------------------------------------------
// Position representation

namespace detail {

inline complex position_wavefunction(const PureState& s, double y, const BasisParams& basis) {
    if (const auto* f = std::get_if<Fock>(&s)) {
        return hermite_psi(f->n, y / basis.b()) / std::sqrt(basis.b());
    }
    const auto& c = std::get<Coherent>(s);
    const double width = c.width.value_or(basis.b());
    const complex u = c.label;
    const complex shift = y / width - std::numbers::sqrt2 * u;
    const complex exponent = -0.5 * shift * shift + 0.5 * u * (u - std::conj(u));
    return std::exp(exponent) / (std::sqrt(std::sqrt(std::numbers::pi)) * std::sqrt(width));
}

}  // namespace detail

/// <y|psi>. Fock states use the basis width as their length scale; coherent
/// states use their own width.
inline complex position_wavefunction(const StateSpec& state, double y, const BasisParams& basis) {
    return std::visit(
        [&](const auto& s) -> complex {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Superposition>) {
                complex acc{};
                for (const auto& t : s.terms) acc += t.coeff * detail::position_wavefunction(t.state, y, basis);
                return acc;
            } else {
                return detail::position_wavefunction(PureState{s}, y, basis);
            }
        },
        state.variant());
}

}  // namespace bargwig
