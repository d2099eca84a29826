#pragma once

#include <array>
#include <cmath>

namespace lorval {

// Truncated Taylor series c_0 + c_1 t + ... + c_m t^m about a fixed centre.
// Binary operations keep the larger order; plain doubles act as constants.
class Jet {
public:
    static constexpr int kCap = 48;

    Jet() = default;
    Jet(double v) { c_[0] = v; }  // NOLINT: implicit constants are intended

    static Jet variable(double x0, int order);
    static Jet constant(double v, int order);

    int order() const { return m_; }
    double operator[](int i) const { return i <= m_ ? c_[i] : 0.0; }
    double& coef(int i) { return c_[i]; }
    double value() const { return c_[0]; }
    double derivative(int i) const;  // f^{(i)} at the centre
    double eval(double h) const;     // Taylor polynomial at offset h
    double eval_tail(double h, int from) const;  // sum over i >= from

    Jet with_order(int order) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(Jet a, const Jet& b) { return a /= b; }

private:
    int m_ = 0;
    std::array<double, kCap + 1> c_{};
};

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet pow(const Jet& a, double p);
Jet sqrt(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet atan(const Jet& a);
Jet asin(const Jet& a);
Jet acos(const Jet& a);
Jet atan2(const Jet& y, const Jet& x);

// d/dt (the top coefficient becomes zero) and the antiderivative vanishing at 0
Jet differentiate(const Jet& a);
Jet integrate(const Jet& a);

}  // namespace lorval
