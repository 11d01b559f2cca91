#include "gutkin/trig_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gutkin {

TrigPolynomial::TrigPolynomial(double constant) : constant_(constant) {}

TrigPolynomial::TrigPolynomial(double constant, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : constant_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    const std::size_t n = std::max(cos_.size(), sin_.size());
    cos_.resize(n, 0.0);
    sin_.resize(n, 0.0);
}

TrigPolynomial TrigPolynomial::harmonic(double constant, int k, double a, double b) {
    if (k < 1) {
        throw std::invalid_argument("TrigPolynomial::harmonic: k must be >= 1");
    }
    std::vector<double> c(static_cast<std::size_t>(k), 0.0);
    std::vector<double> s(static_cast<std::size_t>(k), 0.0);
    c[k - 1] = a;
    s[k - 1] = b;
    return {constant, std::move(c), std::move(s)};
}

double TrigPolynomial::cos_coeff(int k) const {
    if (k < 1 || static_cast<std::size_t>(k) > cos_.size()) return 0.0;
    return cos_[k - 1];
}

double TrigPolynomial::sin_coeff(int k) const {
    if (k < 1 || static_cast<std::size_t>(k) > sin_.size()) return 0.0;
    return sin_[k - 1];
}

int TrigPolynomial::degree() const {
    for (std::size_t k = cos_.size(); k > 0; --k) {
        if (cos_[k - 1] != 0.0 || sin_[k - 1] != 0.0) return static_cast<int>(k);
    }
    return 0;
}

double TrigPolynomial::eval(double phi) const {
    double f = constant_;
    for (std::size_t i = 0; i < cos_.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        f += cos_[i] * std::cos(k * phi) + sin_[i] * std::sin(k * phi);
    }
    return f;
}

TrigPolynomial::Jet TrigPolynomial::eval_jet(double phi) const {
    Jet j{constant_, 0.0, 0.0};
    for (std::size_t i = 0; i < cos_.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        const double c = std::cos(k * phi);
        const double s = std::sin(k * phi);
        j.value += cos_[i] * c + sin_[i] * s;
        j.d1 += k * (sin_[i] * c - cos_[i] * s);
        j.d2 -= k * k * (cos_[i] * c + sin_[i] * s);
    }
    return j;
}

TrigPolynomial TrigPolynomial::derivative() const {
    std::vector<double> c(cos_.size());
    std::vector<double> s(sin_.size());
    for (std::size_t i = 0; i < cos_.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        c[i] = k * sin_[i];
        s[i] = -k * cos_[i];
    }
    return {0.0, std::move(c), std::move(s)};
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& other) const {
    const std::size_t n = std::max(size(), other.size());
    std::vector<double> c(n, 0.0);
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const int k = static_cast<int>(i + 1);
        c[i] = cos_coeff(k) + other.cos_coeff(k);
        s[i] = sin_coeff(k) + other.sin_coeff(k);
    }
    return {constant_ + other.constant_, std::move(c), std::move(s)};
}

TrigPolynomial TrigPolynomial::operator*(double s) const {
    std::vector<double> c = cos_;
    std::vector<double> sn = sin_;
    for (auto& x : c) x *= s;
    for (auto& x : sn) x *= s;
    return {constant_ * s, std::move(c), std::move(sn)};
}

}  // namespace gutkin
