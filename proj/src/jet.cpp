#include "lorval/jet.hpp"

#include <algorithm>

#include "lorval/errors.hpp"

namespace lorval {

Jet Jet::variable(double x0, int order) {
    if (order < 0 || order > kCap) throw InputError("jet order out of range");
    Jet j;
    j.m_ = order;
    j.c_[0] = x0;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
}

Jet Jet::constant(double v, int order) {
    if (order < 0 || order > kCap) throw InputError("jet order out of range");
    Jet j;
    j.m_ = order;
    j.c_[0] = v;
    return j;
}

double Jet::derivative(int i) const {
    double f = 1.0;
    for (int k = 2; k <= i; ++k) f *= k;
    return (*this)[i] * f;
}

double Jet::eval(double h) const {
    double s = 0.0;
    for (int i = m_; i >= 0; --i) s = s * h + c_[i];
    return s;
}

double Jet::eval_tail(double h, int from) const {
    double s = 0.0;
    for (int i = m_; i >= from; --i) s = s * h + c_[i];
    return s * std::pow(h, from);
}

Jet Jet::with_order(int order) const {
    Jet j = *this;
    for (int i = order + 1; i <= m_; ++i) j.c_[i] = 0.0;
    j.m_ = std::min(order, kCap);
    return j;
}

Jet Jet::operator-() const {
    Jet j = *this;
    for (int i = 0; i <= m_; ++i) j.c_[i] = -c_[i];
    return j;
}

Jet& Jet::operator+=(const Jet& o) {
    m_ = std::max(m_, o.m_);
    for (int i = 0; i <= o.m_; ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    m_ = std::max(m_, o.m_);
    for (int i = 0; i <= o.m_; ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    const int m = std::max(m_, o.m_);
    std::array<double, kCap + 1> r{};
    for (int i = 0; i <= m_; ++i) {
        if (c_[i] == 0.0) continue;
        for (int j = 0; j <= o.m_ && i + j <= m; ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = r;
    m_ = m;
    return *this;
}

Jet& Jet::operator/=(const Jet& o) {
    if (o.c_[0] == 0.0) throw NumericalError("jet division by zero");
    const int m = std::max(m_, o.m_);
    std::array<double, kCap + 1> q{};
    for (int k = 0; k <= m; ++k) {
        double s = k <= m_ ? c_[k] : 0.0;
        for (int j = 1; j <= std::min(k, o.m_); ++j) s -= o.c_[j] * q[k - j];
        q[k] = s / o.c_[0];
    }
    c_ = q;
    m_ = m;
    return *this;
}

Jet exp(const Jet& a) {
    Jet b = Jet::constant(std::exp(a[0]), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * a[j] * b[k - j];
        b.coef(k) = s / k;
    }
    return b;
}

Jet log(const Jet& a) {
    if (a[0] <= 0.0) throw NumericalError("jet log of a nonpositive value");
    Jet b = Jet::constant(std::log(a[0]), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        double s = a[k];
        for (int j = 1; j < k; ++j) s -= (static_cast<double>(j) / k) * b[j] * a[k - j];
        b.coef(k) = s / a[0];
    }
    return b;
}

Jet pow(const Jet& a, double p) {
    if (a[0] == 0.0) {
        if (p == 0.0) return Jet::constant(1.0, a.order());
        throw NumericalError("jet power at a zero base");
    }
    Jet b = Jet::constant(std::pow(a[0], p), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += ((p + 1.0) * j - k) * a[j] * b[k - j];
        b.coef(k) = s / (k * a[0]);
    }
    return b;
}

Jet sqrt(const Jet& a) { return pow(a, 0.5); }

namespace {

void sincos(const Jet& a, Jet& s, Jet& c) {
    s = Jet::constant(std::sin(a[0]), a.order());
    c = Jet::constant(std::cos(a[0]), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * a[j] * c[k - j];
            cc -= j * a[j] * s[k - j];
        }
        s.coef(k) = ss / k;
        c.coef(k) = cc / k;
    }
}

}  // namespace

Jet sin(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s;
}

Jet cos(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return c;
}

Jet tan(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s / c;
}

Jet differentiate(const Jet& a) {
    Jet d = Jet::constant(0.0, a.order());
    for (int i = 1; i <= a.order(); ++i) d.coef(i - 1) = i * a[i];
    return d;
}

Jet integrate(const Jet& a) {
    Jet d = Jet::constant(0.0, a.order());
    for (int i = a.order(); i >= 1; --i) d.coef(i) = a[i - 1] / i;
    return d;
}

Jet atan(const Jet& a) {
    Jet r = integrate(differentiate(a) / (1.0 + a * a));
    r.coef(0) = std::atan(a[0]);
    return r;
}

Jet asin(const Jet& a) {
    if (std::abs(a[0]) >= 1.0) throw NumericalError("jet asin outside (-1, 1)");
    Jet r = integrate(differentiate(a) / sqrt(1.0 - a * a));
    r.coef(0) = std::asin(a[0]);
    return r;
}

Jet acos(const Jet& a) {
    Jet r = -asin(a);
    r.coef(0) = std::acos(a[0]);
    return r;
}

Jet atan2(const Jet& y, const Jet& x) {
    Jet r = integrate((x * differentiate(y) - y * differentiate(x)) / (x * x + y * y));
    r.coef(0) = std::atan2(y[0], x[0]);
    return r;
}

}  // namespace lorval
