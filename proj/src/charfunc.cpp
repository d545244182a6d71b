#include "nlsl2/charfunc.hpp"

#include <cmath>
#include <string>

#include "nlsl2/error.hpp"

namespace nlsl2 {

DivergenceError::DivergenceError(std::size_t index, double value)
    : Error("orbit escaped at iterate " + std::to_string(index) + " (value " + std::to_string(value) + ")"),
      index_(index),
      value_(value) {}

NotUnitaryError::NotUnitaryError(std::size_t m, double nsq)
    : Error("ladder is not unitary: N_" + std::to_string(m) + "^2 = " + std::to_string(nsq) + " < 0"),
      m_(m),
      nsq_(nsq) {}

std::string_view to_string(FuncKind kind) {
    switch (kind) {
        case FuncKind::Linear: return "linear";
        case FuncKind::Quadratic: return "quadratic";
        case FuncKind::Polynomial: return "polynomial";
    }
    return "unknown";
}

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

CharFunc::CharFunc(FuncKind kind, std::vector<double> coeffs) : kind_(kind), coeffs_(std::move(coeffs)) {
    for (double c : coeffs_) require_finite(c, "coefficient");
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

CharFunc CharFunc::linear(double r, double s) {
    require_finite(r, "r");
    require_finite(s, "s");
    return CharFunc(FuncKind::Linear, {-s, r});
}

CharFunc CharFunc::quadratic(double t, double r, double s) {
    require_finite(t, "t");
    if (t == 0.0) throw DomainError("quadratic characteristic function requires t != 0");
    return CharFunc(FuncKind::Quadratic, {-s, r, t});
}

CharFunc CharFunc::polynomial(std::vector<double> coeffs) {
    return CharFunc(FuncKind::Polynomial, std::move(coeffs));
}

double CharFunc::eval_unchecked(double x) const noexcept {
    double acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
}

double CharFunc::derivative_unchecked(double x) const noexcept {
    if (coeffs_.size() < 2) return 0.0;
    std::size_t n = coeffs_.size() - 1;
    double acc = static_cast<double>(n) * coeffs_[n];
    for (std::size_t k = n - 1; k >= 1; --k) acc = acc * x + static_cast<double>(k) * coeffs_[k];
    return acc;
}

double CharFunc::operator()(double x) const {
    require_finite(x, "argument");
    return eval_unchecked(x);
}

double eval(const CharFunc& f, double x) { return f(x); }

double derivative(const CharFunc& f, double x) {
    require_finite(x, "argument");
    return f.derivative_unchecked(x);
}

double iterate_value(const CharFunc& f, double x, std::size_t m) noexcept {
    for (std::size_t k = 0; k < m; ++k) x = f.eval_unchecked(x);
    return x;
}

double iterate_derivative(const CharFunc& f, double x, std::size_t m) noexcept {
    double prod = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        prod *= f.derivative_unchecked(x);
        x = f.eval_unchecked(x);
    }
    return prod;
}

Orbit orbit(const CharFunc& f, double x0, std::size_t m, double escape_bound) {
    require_finite(x0, "starting point");
    Orbit out;
    out.values.reserve(m + 1);
    out.values.push_back(x0);
    double x = x0;
    for (std::size_t k = 1; k <= m; ++k) {
        x = f.eval_unchecked(x);
        out.values.push_back(x);
        if (!std::isfinite(x) || std::abs(x) > escape_bound) {
            out.escaped_at = k;
            break;
        }
    }
    return out;
}

std::vector<double> iterate(const CharFunc& f, double x0, std::size_t m) {
    Orbit o = orbit(f, x0, m);
    if (o.escaped_at) throw DivergenceError(*o.escaped_at, o.values.back());
    return std::move(o.values);
}

}  // namespace nlsl2
