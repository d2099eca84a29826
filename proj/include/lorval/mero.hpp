#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "lorval/jet.hpp"

namespace lorval {

using cplx = std::complex<double>;

struct LaurentValue {
    cplx at;
    int pole_order = 0;
    cplx regular_value{};  // meaningful when pole_order == 0
    cplx residue{};
    cplx finite_part{};    // equals regular_value when there is no pole
    bool residue_is_value = false;  // the family is normalized by its residue here

    // The number reported to callers: the regular value, the residue where
    // the family is normalized by it, or else the finite part.
    cplx reported() const;
    static LaurentValue regular(cplx at, cplx v);
    LaurentValue& operator+=(const LaurentValue& o);
    LaurentValue& operator*=(double s);
};

LaurentValue operator+(LaurentValue a, const LaurentValue& b);
LaurentValue operator-(LaurentValue a, const LaurentValue& b);
LaurentValue operator*(double s, LaurentValue a);

// Coefficients of log(sin x / x) in powers of x^2 (index 0 is zero).
const std::vector<double>& log_sinc_series();

struct CSeries {
    cplx lambda;
    std::vector<cplx> c;   // c_j(lambda)
    std::vector<cplx> dc;  // d c_j / d lambda
};

CSeries c_series(cplx lambda, int J = 64);
std::vector<cplx> c_coeffs(cplx lambda, int J);

// int_0^a x^i sin^lambda x dx continued in lambda, 0 < a < pi
LaurentValue moment_M(const CSeries& cs, int i, double a);
LaurentValue moment_I(int k, cplx lambda);

// Snap lambda to a nearby pole candidate (negative integer) within the detection window.
cplx snap_lambda(cplx lambda);
constexpr double kPoleWindow = 1e-9;

using JetFn = std::function<Jet(const Jet&)>;

// A function psi on [0, upper] paired against sin^lambda x. Taylor data at 0
// is trusted on [0, radius).
struct TestFunction {
    JetFn f;
    double radius = 0.5;
    double upper = 3.141592653589793;
    std::vector<double> breaks;
    int max_jet = Jet::kCap;
    double value(double x) const { return f(Jet(x)).value(); }
};

struct PairingOptions {
    int taylor_order = 40;
    double cutoff = -1.0;  // moment cutoff a; negative selects min(0.25, radius / 2)
    bool graded = false;   // geometric panels after the cutoff
};

LaurentValue regularized_pairing(const TestFunction& psi, cplx lambda, const PairingOptions& opt = {});

enum class Side { Plus, Minus };

// <sin_{+/-}^lambda, phi>. With subtraction_order K >= 0 the value is assembled
// as sum_{i<K} phi_i I_i + int_0^1 sin^lambda (phi - J_K phi) + int_1^X.
LaurentValue sin_pm_lambda(Side side, const TestFunction& phi, cplx lambda, int subtraction_order = -1);

enum class Parity { ConeSym, ConeAntisym, S, T };
const char* parity_name(Parity p);
Parity parse_parity(const std::string& s);

struct CircleFunction {
    JetFn f;
    double radius = 0.25;  // analyticity radius about each light-cone point
};

LaurentValue combine_parity(Parity p, const LaurentValue& s, const LaurentValue& t);

LaurentValue f_lambda(Parity parity, const CircleFunction& phi, cplx lambda);

// alpha -> angle of boost(-theta) applied to (cos alpha, sin alpha)
CircleFunction boost_pushforward(const CircleFunction& phi, double theta);
double boost_multiplier(double theta, double lambda, double alpha);
CircleFunction multiply_by_multiplier(const CircleFunction& phi, double theta, double lambda);
// |<f, pushforward> - <f, M phi>| on the reported numbers
double covariance_residual(Parity parity, const CircleFunction& phi, double theta, double lambda);

template <class T>
T g_density_t(int n, int k, const T& alpha) {
    using std::cos;
    using std::sin;
    T c = cos(alpha), s = sin(alpha), r = T(1.0);
    for (int i = 0; i < n - k - 1; ++i) r = r * c;
    for (int i = 0; i < k - 1; ++i) r = r * s;
    return r;
}
double g_density(int n, int k, double alpha);

// Zonal data on [0, pi/2] with Taylor data trusted within radius of pi/4.
struct ZonalData {
    JetFn f;
    double radius = 0.25;
    std::vector<double> breaks;  // non-smooth points in alpha
};

// The regularized halves 4 reg int_0^{pi/4} and 4 reg int_{pi/4}^{pi/2} of |cos 2a|^lambda H.
LaurentValue zonal_space_half(const ZonalData& H, cplx lambda, const PairingOptions& opt = {});
LaurentValue zonal_time_half(const ZonalData& H, cplx lambda, const PairingOptions& opt = {});

double crofton_lambda(int n);  // -(n+1)/2
Parity light_cone_parity(int n);  // the parity with a pole at -(n+1)/2, odd n

// f^parity_{-(n+1)/2}(h g_{n,n-k} d alpha)
LaurentValue crofton_apply(int n, int k, Parity parity, const ZonalData& h);

// Residual of the jet-subtraction identity at x for analytic w, h:
// [wh - J_m(wh)] - w(0)[h - J_m h] - h(x)[w - J_m w]
double jet_subtract(const JetFn& w, const JetFn& h, int m, double x);
// log-log slope of |jet_subtract| over [lo, hi]
double jet_subtract_order(const JetFn& w, const JetFn& h, int m, double lo = 1e-3, double hi = 1e-1, int pts = 20);

}  // namespace lorval
