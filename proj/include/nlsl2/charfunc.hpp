#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace nlsl2 {

/// Orbits whose magnitude exceeds this bound are treated as escaping.
inline constexpr double kEscapeBound = 1e12;

enum class FuncKind { Linear, Quadratic, Polynomial };

std::string_view to_string(FuncKind kind);

/**
 * The characteristic function f of the algebra.
 *
 * Linear:     f(x) = r x - s
 * Quadratic:  f(x) = t x^2 + r x - s   (t != 0)
 * Polynomial: f(x) = sum_k c_k x^k     (ascending coefficients)
 *
 * All kinds are stored as ascending coefficient lists with trailing zeros
 * trimmed, so a Polynomial of degree <= 2 behaves exactly like the
 * equivalent Linear/Quadratic form. Instances are immutable.
 */
class CharFunc {
public:
    static CharFunc linear(double r, double s);
    static CharFunc quadratic(double t, double r, double s);
    static CharFunc polynomial(std::vector<double> coeffs);

    FuncKind kind() const noexcept { return kind_; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    // Coefficient views in the r, s, t parametrisation; zero when absent.
    double r() const noexcept { return coeff(1); }
    double s() const noexcept { return -coeff(0); }
    double t() const noexcept { return coeff(2); }
    double coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

    /// Horner evaluation. Throws DomainError on non-finite x.
    double operator()(double x) const;

    /// Horner evaluation without the finiteness check (used inside solvers,
    /// where +-inf carries sign information).
    double eval_unchecked(double x) const noexcept;
    double derivative_unchecked(double x) const noexcept;

    /// Same polynomial, regardless of the declared kind.
    bool same_function(const CharFunc& other) const noexcept { return coeffs_ == other.coeffs_; }

    /// Linear / quadratic classification by actual degree.
    bool is_linear() const noexcept { return degree() == 1; }
    bool is_quadratic() const noexcept { return degree() == 2; }

private:
    CharFunc(FuncKind kind, std::vector<double> coeffs);

    FuncKind kind_;
    std::vector<double> coeffs_;
};

double eval(const CharFunc& f, double x);

/// f'(x).
double derivative(const CharFunc& f, double x);

/// (f^m)'(x) by the chain rule, no escape guard.
double iterate_derivative(const CharFunc& f, double x, std::size_t m) noexcept;

/// f^m(x) without the escape guard; may return +-inf.
double iterate_value(const CharFunc& f, double x, std::size_t m) noexcept;

/// x0, f(x0), ..., f^m(x0). Throws DivergenceError carrying the first index
/// whose value is non-finite or exceeds kEscapeBound in magnitude.
std::vector<double> iterate(const CharFunc& f, double x0, std::size_t m);

/// Non-throwing variant of iterate(): on escape the sequence is truncated
/// after the escaping value and escaped_at holds its index.
struct Orbit {
    std::vector<double> values;
    std::optional<std::size_t> escaped_at;
};
Orbit orbit(const CharFunc& f, double x0, std::size_t m, double escape_bound = kEscapeBound);

}  // namespace nlsl2
