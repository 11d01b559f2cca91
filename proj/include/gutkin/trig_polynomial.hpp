#pragma once

#include <cstddef>
#include <vector>

namespace gutkin {

/// Finite Fourier series
///   f(phi) = c0 + sum_{k=1}^{N} (a_k cos(k phi) + b_k sin(k phi)).
///
/// Coefficient vectors are indexed by harmonic minus one, so cos_coeffs()[0]
/// is a_1. Both vectors always have the same length; trailing zeros are kept
/// so that degree() reports the highest harmonic with a nonzero coefficient.
class TrigPolynomial {
public:
    TrigPolynomial() = default;
    explicit TrigPolynomial(double constant);
    TrigPolynomial(double constant, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

    /// Single harmonic c0 + a cos(k phi) + b sin(k phi).
    static TrigPolynomial harmonic(double constant, int k, double a, double b = 0.0);

    double constant() const { return constant_; }
    const std::vector<double>& cos_coeffs() const { return cos_; }
    const std::vector<double>& sin_coeffs() const { return sin_; }

    /// Cosine / sine coefficient of harmonic k >= 1 (zero beyond the stored range).
    double cos_coeff(int k) const;
    double sin_coeff(int k) const;

    /// Highest harmonic with a nonzero coefficient (0 for constants).
    int degree() const;
    std::size_t size() const { return cos_.size(); }

    double operator()(double phi) const { return eval(phi); }
    double eval(double phi) const;

    /// Value together with first and second derivative.
    struct Jet {
        double value;
        double d1;
        double d2;
    };
    Jet eval_jet(double phi) const;

    TrigPolynomial derivative() const;

    TrigPolynomial operator+(const TrigPolynomial& other) const;
    TrigPolynomial operator*(double s) const;

    bool operator==(const TrigPolynomial& other) const = default;

private:
    double constant_ = 0.0;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

}  // namespace gutkin
