#include "lorval/mero.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lorval/errors.hpp"
#include "lorval/quadrature.hpp"

namespace lorval {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxJ = 64;

}  // namespace

cplx LaurentValue::reported() const {
    if (pole_order == 0) return regular_value;
    return residue_is_value ? residue : finite_part;
}

LaurentValue LaurentValue::regular(cplx at, cplx v) {
    LaurentValue r;
    r.at = at;
    r.regular_value = v;
    r.finite_part = v;
    return r;
}

LaurentValue& LaurentValue::operator+=(const LaurentValue& o) {
    pole_order = std::max(pole_order, o.pole_order);
    regular_value += o.regular_value;
    residue += o.residue;
    finite_part += o.finite_part;
    return *this;
}

LaurentValue& LaurentValue::operator*=(double s) {
    regular_value *= s;
    residue *= s;
    finite_part *= s;
    return *this;
}

LaurentValue operator+(LaurentValue a, const LaurentValue& b) { return a += b; }
LaurentValue operator-(LaurentValue a, const LaurentValue& b) {
    LaurentValue c = b;
    c *= -1.0;
    return a += c;
}
LaurentValue operator*(double s, LaurentValue a) { return a *= s; }

const std::vector<double>& log_sinc_series() {
    static const std::vector<double> ell = [] {
        // sin x / x = sum_i (-1)^i u^i / (2i+1)!, u = x^2; log by the usual recurrence
        std::vector<long double> a(kMaxJ + 1), b(kMaxJ + 1, 0.0L);
        long double fact = 1.0L;
        for (int i = 0; i <= kMaxJ; ++i) {
            if (i > 0) fact *= static_cast<long double>(2 * i) * (2 * i + 1);
            a[i] = (i % 2 ? -1.0L : 1.0L) / fact;
        }
        for (int k = 1; k <= kMaxJ; ++k) {
            long double s = a[k];
            for (int j = 1; j < k; ++j) s -= static_cast<long double>(j) / k * b[j] * a[k - j];
            b[k] = s;
        }
        return std::vector<double>(b.begin(), b.end());
    }();
    return ell;
}

CSeries c_series(cplx lambda, int J) {
    if (J < 0 || J > kMaxJ) throw InputError("J must be at most 64");
    const auto& ell = log_sinc_series();
    CSeries cs{lambda, std::vector<cplx>(J + 1), std::vector<cplx>(J + 1)};
    cs.c[0] = 1.0;
    cs.dc[0] = 0.0;
    for (int j = 1; j <= J; ++j) {
        cplx s = 0.0, ds = 0.0;
        for (int i = 1; i <= j; ++i) {
            s += static_cast<double>(i) * ell[i] * cs.c[j - i];
            ds += static_cast<double>(i) * ell[i] * (cs.c[j - i] + lambda * cs.dc[j - i]);
        }
        cs.c[j] = lambda * s / static_cast<double>(j);
        cs.dc[j] = ds / static_cast<double>(j);
    }
    return cs;
}

std::vector<cplx> c_coeffs(cplx lambda, int J) { return c_series(lambda, J).c; }

cplx snap_lambda(cplx lambda) {
    double r = std::round(lambda.real());
    if (r <= -1.0 && std::abs(lambda - cplx(r, 0.0)) < kPoleWindow) return {r, 0.0};
    return lambda;
}

LaurentValue moment_M(const CSeries& cs, int i, double a) {
    if (!(a > 0.0 && a < kPi)) throw InputError("moment cutoff must lie in (0, pi)");
    const cplx lam = cs.lambda;
    const double la = std::log(a);
    LaurentValue out;
    out.at = lam;
    int pole_j = -1;
    {
        cplx s = lam + static_cast<double>(i + 1);
        double jr = std::round(-s.real() / 2.0);
        if (jr >= 0 && jr < static_cast<double>(cs.c.size()) && std::abs(s + 2.0 * jr) < kPoleWindow)
            pole_j = static_cast<int>(jr);
    }
    cplx sum = 0.0;
    int small = 0;
    for (size_t j = 0; j < cs.c.size(); ++j) {
        const double e = static_cast<double>(i + 2 * j + 1);
        if (static_cast<int>(j) == pole_j) {
            out.pole_order = 1;
            out.residue = cs.c[j];
            sum += cs.dc[j] + cs.c[j] * la;
            continue;
        }
        cplx term = cs.c[j] * std::exp((lam + e) * la) / (lam + e);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            if (++small >= 2 && static_cast<int>(j) > pole_j) break;
        } else {
            small = 0;
        }
    }
    out.finite_part = sum;
    if (out.pole_order == 0) out.regular_value = sum;
    return out;
}

LaurentValue moment_I(int k, cplx lambda) {
    if (k < 0) throw InputError("k must be nonnegative");
    cplx lam = snap_lambda(lambda);
    LaurentValue r = moment_M(c_series(lam), k, 1.0);
    r.at = lambda;
    return r;
}

namespace {

// int over [lo, hi] of sin^lambda x psi(x), split into real and imaginary parts
cplx numeric_part(const TestFunction& psi, cplx lam, double lo, double hi, bool graded) {
    if (hi <= lo) return 0.0;
    std::vector<double> cuts{lo, hi};
    for (double b : psi.breaks)
        if (b > lo && b < hi) cuts.push_back(b);
    if (graded)
        for (double x = 2 * lo; x < hi; x *= 2) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto re = [&](double x) {
        double v = psi.value(x);
        if (v == 0.0) return 0.0;
        double L = std::log(std::sin(x));
        return v * std::exp(lam.real() * L) * std::cos(lam.imag() * L);
    };
    auto im = [&](double x) {
        double v = psi.value(x);
        if (v == 0.0) return 0.0;
        double L = std::log(std::sin(x));
        return v * std::exp(lam.real() * L) * std::sin(lam.imag() * L);
    };
    cplx s = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double r = quad::tanh_sinh(re, cuts[i], cuts[i + 1], 1e-14);
        double m = lam.imag() == 0.0 ? 0.0 : quad::tanh_sinh(im, cuts[i], cuts[i + 1], 1e-14);
        s += cplx(r, m);
    }
    return s;
}

double choose_cutoff(const TestFunction& psi, const PairingOptions& opt) {
    double a = opt.cutoff > 0 ? opt.cutoff : std::min(0.25, 0.5 * psi.radius);
    // Taylor data at 0 is useless past the first break
    for (double b : psi.breaks)
        if (b > 0) a = std::min(a, 0.5 * b);
    return std::min(a, 0.5 * psi.upper);
}

}  // namespace

LaurentValue regularized_pairing(const TestFunction& psi, cplx lambda, const PairingOptions& opt) {
    const cplx lam = snap_lambda(lambda);
    const int need = std::max(0, static_cast<int>(std::ceil(-lam.real())));
    if (psi.max_jet < need) throw InputError("test function carries too few jets for this lambda");
    const int N = std::min({opt.taylor_order, psi.max_jet, Jet::kCap});
    const double a = choose_cutoff(psi, opt);
    const Jet jet = psi.f(Jet::variable(0.0, N));
    const CSeries cs = c_series(lam);
    LaurentValue out = LaurentValue::regular(lambda, 0.0);
    for (int i = 0; i <= N; ++i) {
        if (jet[i] == 0.0) continue;
        out += jet[i] * moment_M(cs, i, a);
    }
    cplx rest = numeric_part(psi, lam, a, psi.upper, opt.graded);
    out.finite_part += rest;
    if (out.pole_order == 0) out.regular_value = out.finite_part;
    out.at = lambda;
    return out;
}

LaurentValue sin_pm_lambda(Side side, const TestFunction& phi, cplx lambda, int K) {
    TestFunction psi = phi;
    if (side == Side::Minus) {
        JetFn f = phi.f;
        psi.f = [f](const Jet& x) { return f(-x); };
    }
    if (K < 0) return regularized_pairing(psi, lambda);

    const cplx lam = snap_lambda(lambda);
    if (K <= -lam.real() - 1.0) throw InputError("subtraction order too small for this lambda");
    if (K > psi.max_jet) throw InputError("test function carries too few jets");
    const int N = std::min(Jet::kCap, psi.max_jet);
    const double a = std::min({0.25, 0.5 * psi.radius, 0.5, choose_cutoff(psi, PairingOptions{})});
    const Jet jet = psi.f(Jet::variable(0.0, std::max(N, K)));
    const CSeries cs = c_series(lam);
    LaurentValue out = LaurentValue::regular(lambda, 0.0);
    for (int i = 0; i < K; ++i) out += jet[i] * moment_M(cs, i, 1.0);
    // int_0^1 sin^lambda (psi - J_K psi): Taylor tail on [0, a], numerics on [a, 1]
    for (int i = K; i <= N; ++i) out += jet[i] * moment_M(cs, i, a);
    TestFunction rem = psi;
    rem.f = [f = psi.f, jet, K](const Jet& x) {
        double v = x.value();
        double poly = 0.0;
        for (int i = K - 1; i >= 0; --i) poly = poly * v + jet[i];
        return Jet(f(Jet(v)).value() - poly);
    };
    rem.breaks.clear();
    for (double b : psi.breaks)
        if (b < 1.0) rem.breaks.push_back(b);
    out.finite_part += numeric_part(rem, lam, a, std::min(1.0, psi.upper), false);
    if (psi.upper > 1.0) out.finite_part += numeric_part(psi, lam, 1.0, psi.upper, false);
    if (out.pole_order == 0) out.regular_value = out.finite_part;
    out.at = lambda;
    return out;
}

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::ConeSym: return "sym";
        case Parity::ConeAntisym: return "antisym";
        case Parity::S: return "S";
        case Parity::T: return "T";
    }
    return "?";
}

Parity parse_parity(const std::string& s) {
    if (s == "sym" || s == "cone_sym") return Parity::ConeSym;
    if (s == "antisym" || s == "cone_antisym") return Parity::ConeAntisym;
    if (s == "S") return Parity::S;
    if (s == "T") return Parity::T;
    throw InputError("parity must be sym, antisym, S or T");
}

LaurentValue combine_parity(Parity p, const LaurentValue& s, const LaurentValue& t) {
    LaurentValue r;
    switch (p) {
        case Parity::S: r = s; break;
        case Parity::T: r = t; break;
        case Parity::ConeSym: r = s + t; break;
        case Parity::ConeAntisym: r = s - t; break;
    }
    r.at = s.at;
    r.residue_is_value = false;
    if (r.pole_order == 1 && (p == Parity::ConeSym || p == Parity::ConeAntisym)) {
        const int m = static_cast<int>(std::lround(-r.at.real()));
        const bool odd = m % 2 != 0;
        const bool has_pole = (p == Parity::ConeSym) == odd;
        if (has_pole) {
            r.residue_is_value = true;
        } else {
            // residues cancel between the two sides of every light-cone point
            r.pole_order = 0;
            r.residue = 0.0;
            r.regular_value = r.finite_part;
        }
    }
    return r;
}

namespace {

// half-arc x in [0, pi/2] at light-cone point p going in direction dir
TestFunction half_arc(const CircleFunction& phi, double p, double dir) {
    TestFunction t;
    t.f = [f = phi.f, p, dir](const Jet& x) { return 0.5 * f(p + (0.5 * dir) * x); };
    t.radius = 2.0 * phi.radius;
    t.upper = kPi / 2;
    return t;
}

}  // namespace

LaurentValue f_lambda(Parity parity, const CircleFunction& phi, cplx lambda) {
    const double q = kPi / 4;
    LaurentValue S = regularized_pairing(half_arc(phi, q, -1.0), lambda);
    S += regularized_pairing(half_arc(phi, -q, +1.0), lambda);
    S += regularized_pairing(half_arc(phi, 3 * q, +1.0), lambda);
    S += regularized_pairing(half_arc(phi, 5 * q, -1.0), lambda);
    LaurentValue T = regularized_pairing(half_arc(phi, q, +1.0), lambda);
    T += regularized_pairing(half_arc(phi, 3 * q, -1.0), lambda);
    T += regularized_pairing(half_arc(phi, 5 * q, +1.0), lambda);
    T += regularized_pairing(half_arc(phi, 7 * q, -1.0), lambda);
    S.at = T.at = lambda;
    return combine_parity(parity, S, T);
}

CircleFunction boost_pushforward(const CircleFunction& phi, double theta) {
    CircleFunction out;
    const double ch = std::cosh(theta), sh = std::sinh(theta);
    const double c2 = std::cosh(2 * theta), s2 = std::sinh(2 * theta);
    out.f = [f = phi.f, ch, sh, c2, s2](const Jet& b) {
        Jet cb = cos(b), sb = sin(b);
        Jet t = atan2(ch * sb - sh * cb, ch * cb - sh * sb);
        // keep the branch continuous with b
        double shift = 2 * kPi * std::round((b.value() - t.value()) / (2 * kPi));
        t += Jet(shift);
        Jet jac = 1.0 / (c2 - s2 * sin(2.0 * b));
        return f(t) * jac;
    };
    out.radius = phi.radius / (std::cosh(2 * theta) + std::abs(std::sinh(2 * theta)));
    return out;
}

double boost_multiplier(double theta, double lambda, double alpha) {
    return std::pow(std::cosh(2 * theta) + std::sinh(2 * theta) * std::sin(2 * alpha), -lambda);
}

CircleFunction multiply_by_multiplier(const CircleFunction& phi, double theta, double lambda) {
    CircleFunction out;
    const double c2 = std::cosh(2 * theta), s2 = std::sinh(2 * theta);
    out.f = [f = phi.f, c2, s2, lambda](const Jet& a) { return f(a) * pow(c2 + s2 * sin(2.0 * a), -lambda); };
    out.radius = phi.radius;
    return out;
}

double covariance_residual(Parity parity, const CircleFunction& phi, double theta, double lambda) {
    LaurentValue lhs = f_lambda(parity, boost_pushforward(phi, theta), lambda);
    LaurentValue rhs = f_lambda(parity, multiply_by_multiplier(phi, theta, lambda), lambda);
    if (lhs.pole_order == 1) return std::abs(lhs.residue - rhs.residue);
    return std::abs(lhs.reported() - rhs.reported());
}

double g_density(int n, int k, double alpha) {
    if (k < 1 || k > n - 1) throw InputError("k out of range for g_{n,k}");
    return g_density_t<double>(n, k, alpha);
}

namespace {

TestFunction zonal_half(const ZonalData& H, double dir) {
    TestFunction t;
    const double q = kPi / 4;
    t.f = [f = H.f, q, dir](const Jet& x) { return 0.5 * f(q + (0.5 * dir) * x); };
    t.radius = 2.0 * H.radius;
    t.upper = kPi / 2;
    for (double b : H.breaks) {
        double x = 2.0 * dir * (b - q);
        if (x > 0 && x < kPi / 2) t.breaks.push_back(x);
    }
    return t;
}

}  // namespace

LaurentValue zonal_space_half(const ZonalData& H, cplx lambda, const PairingOptions& opt) {
    return 4.0 * regularized_pairing(zonal_half(H, -1.0), lambda, opt);
}

LaurentValue zonal_time_half(const ZonalData& H, cplx lambda, const PairingOptions& opt) {
    return 4.0 * regularized_pairing(zonal_half(H, +1.0), lambda, opt);
}

double crofton_lambda(int n) { return -(n + 1) / 2.0; }

Parity light_cone_parity(int n) {
    if (n % 2 == 0) throw InputError("light-cone residue functionals exist for odd n");
    return ((n + 1) / 2) % 2 ? Parity::ConeSym : Parity::ConeAntisym;
}

LaurentValue crofton_apply(int n, int k, Parity parity, const ZonalData& h) {
    if (n < 2 || k < 1 || k > n - 1) throw InputError("need 1 <= k <= n-1");
    if (h.radius <= 0) throw InputError("zonal data must be smooth near the light cone");
    ZonalData H = h;
    H.f = [f = h.f, n, k](const Jet& a) { return f(a) * g_density_t<Jet>(n, n - k, a); };
    const double lam = crofton_lambda(n);
    LaurentValue S = zonal_space_half(H, lam), T = zonal_time_half(H, lam);
    return combine_parity(parity, S, T);
}

double jet_subtract(const JetFn& w, const JetFn& h, int m, double x) {
    const int N = Jet::kCap;
    Jet X = Jet::variable(0.0, N);
    Jet jw = w(X), jh = h(X), jwh = jw * jh;
    double rem_wh = jwh.eval_tail(x, m + 1);
    double rem_h = jh.eval_tail(x, m + 1);
    double rem_w = jw.eval_tail(x, m + 1);
    double hx = h(Jet(x)).value();
    return rem_wh - jw[0] * rem_h - hx * rem_w;
}

double jet_subtract_order(const JetFn& w, const JetFn& h, int m, double lo, double hi, int pts) {
    std::vector<double> X, Y;
    for (int i = 0; i < pts; ++i) {
        double x = lo * std::pow(hi / lo, static_cast<double>(i) / (pts - 1));
        double d = std::abs(jet_subtract(w, h, m, x));
        if (d > 0 && std::isfinite(d)) {
            X.push_back(std::log(x));
            Y.push_back(std::log(d));
        }
    }
    if (X.size() < 3) return std::numeric_limits<double>::infinity();
    double mx = 0, my = 0;
    for (size_t i = 0; i < X.size(); ++i) mx += X[i], my += Y[i];
    mx /= X.size();
    my /= Y.size();
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < X.size(); ++i) sxy += (X[i] - mx) * (Y[i] - my), sxx += (X[i] - mx) * (X[i] - mx);
    return sxy / sxx;
}

}  // namespace lorval
