#include "lorval/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "lorval/bodies.hpp"
#include "lorval/errors.hpp"
#include "lorval/quadrature.hpp"

namespace lorval {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kJetOrder = 40;

Jet h_plus_branch(int k, double eta, const Jet& a) {
    if (k == 1) return eta * sin(a);
    return cone_h_plus<Jet>(k, eta, a);
}

Jet h_minus_branch(int k, double eta, const Jet& a) {
    if (k == 1) return cos(a);
    return cone_h_minus<Jet>(k, eta, a);
}

void check_cone_args(int n, double eps) {
    if (n < 3) throw InputError("stretched-cone experiments need n >= 3");
    if (eps == 0.0) throw InputError("eps = 0 is the unstretched cone, where the valuation is undefined");
    if (!(std::abs(eps) >= 1e-6 && std::abs(eps) <= 0.2)) throw InputError("|eps| must lie in [1e-6, 0.2]");
}

}  // namespace

ZonalData cone_plus_branch(int n, double eps) {
    const int k = n - 2;
    const double eta = stretch_eta(eps);
    ZonalData H;
    H.f = [n, k, eta](const Jet& a) { return h_plus_branch(k, eta, a) * g_density_t<Jet>(n, 2, a); };
    H.radius = 0.5;
    return H;
}

ZonalData cone_seam_part(int n, double eps) {
    const int k = n - 2;
    const double eta = stretch_eta(eps), seam = cone_seam(eps);
    ZonalData H;
    H.f = [n, k, eta, seam](const Jet& a) {
        const double c = a.value();
        if (c >= seam || eta * std::tan(c) >= 1.0) return Jet::constant(0.0, a.order());
        return (h_minus_branch(k, eta, a) - h_plus_branch(k, eta, a)) * g_density_t<Jet>(n, 2, a);
    };
    H.radius = std::abs(eps);
    H.breaks = {seam};
    return H;
}

ZonalData cone_total(int n, double eps) {
    const int k = n - 2;
    const double eta = stretch_eta(eps), seam = cone_seam(eps);
    ZonalData H;
    H.f = [n, k, eta, seam](const Jet& a) {
        const double c = a.value();
        Jet h = (c >= seam || eta * std::tan(c) >= 1.0) ? h_plus_branch(k, eta, a) : h_minus_branch(k, eta, a);
        return h * g_density_t<Jet>(n, 2, a);
    };
    H.radius = std::abs(eps);
    H.breaks = {seam};
    return H;
}

ConeParts stretched_cone_parts(int n, double eps) {
    check_cone_args(n, eps);
    const double lam = crofton_lambda(n);
    ZonalData P = cone_plus_branch(n, eps), W = cone_seam_part(n, eps);
    PairingOptions graded;
    graded.graded = true;
    ConeParts r;
    r.S = zonal_space_half(P, lam) + zonal_space_half(W, lam, graded);
    r.T = zonal_time_half(P, lam);
    if (eps < 0) r.T += zonal_time_half(W, lam, graded);
    return r;
}

LaurentValue evaluate_on_stretched_cone_laurent(int n, Parity parity, double eps) {
    ConeParts c = stretched_cone_parts(n, eps);
    return combine_parity(parity, c.S, c.T);
}

double evaluate_on_stretched_cone(int n, Parity parity, double eps) {
    return evaluate_on_stretched_cone_laurent(n, parity, eps).reported().real();
}

namespace {

struct NSetup {
    Jet d;                   // jet of D at x = 0
    std::vector<bool> take;  // subtracted indices
    int order;
};

std::function<double(double)> d_function(NVariant v, const ZonalData& H) {
    return [v, f = H.f](double x) {
        const double q = kPi / 4;
        switch (v) {
            case NVariant::Minus: return f(Jet(q - 0.5 * x)).value() - f(Jet(q + 0.5 * x)).value();
            case NVariant::Plus: return f(Jet(q - 0.5 * x)).value() + f(Jet(q + 0.5 * x)).value();
            case NVariant::SpaceSide: return f(Jet(q - 0.5 * x)).value();
            case NVariant::TimeSide: return f(Jet(q + 0.5 * x)).value();
        }
        return 0.0;
    };
}

Jet d_jet(NVariant v, const ZonalData& H) {
    Jet X = Jet::variable(0.0, kJetOrder);
    const double q = kPi / 4;
    Jet m = H.f(q - 0.5 * X), p = H.f(q + 0.5 * X);
    switch (v) {
        case NVariant::Minus: return m - p;
        case NVariant::Plus: return m + p;
        case NVariant::SpaceSide: return m;
        case NVariant::TimeSide: return p;
    }
    return m;
}

std::vector<bool> subtracted(NVariant v, int m) {
    std::vector<bool> t(kJetOrder + 1, false);
    for (int i = 0; i <= m && i <= kJetOrder; ++i) {
        if (v == NVariant::Minus) t[i] = i % 2 == 1;
        else if (v == NVariant::Plus) t[i] = i % 2 == 0;
        else t[i] = true;
    }
    return t;
}

// every index i < p - 1 + 1 that the parity does not kill must be subtracted
bool integrable(NVariant v, const std::vector<bool>& take, double p) {
    for (int i = 0; i <= kJetOrder && i - p <= -1.0 + 1e-12; ++i) {
        bool killed = (v == NVariant::Minus && i % 2 == 0) || (v == NVariant::Plus && i % 2 == 1);
        if (!killed && !take[i]) return false;
    }
    return true;
}

std::vector<double> x_breaks(NVariant v, const ZonalData& H, double a) {
    std::vector<double> xs;
    for (double b : H.breaks) {
        double d = b - kPi / 4;
        bool use = v == NVariant::Minus || v == NVariant::Plus || (v == NVariant::SpaceSide && d < 0) ||
                   (v == NVariant::TimeSide && d > 0);
        double x = 2.0 * std::abs(d);
        if (use && x > a && x < kPi / 2) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

double n_integral(NVariant v, const ZonalData& H, double p, const Jet& d, const std::vector<bool>& take, int m, double a) {
    auto D = d_function(v, H);
    auto taylor = [&](double x) {
        double s = 0.0, xi = 1.0;
        for (int i = 0; i <= m && i <= kJetOrder; ++i, xi *= x)
            if (take[i]) s += d[i] * xi;
        return s;
    };
    // lowest index left after subtraction, so the ratio can be formed without underflow
    auto keep = [&](int i) {
        bool killed = (v == NVariant::Minus && i % 2 == 0) || (v == NVariant::Plus && i % 2 == 1);
        return !killed && (i > m || !take[i]);
    };
    int low = 0;
    while (low < d.order() && !keep(low)) ++low;
    auto near = [&](double x) {
        double s = 0.0;
        for (int i = d.order(); i >= low; --i) s = keep(i) ? s * x + d[i] : s * x;
        return 0.5 * s * std::pow(x, low - p) * std::pow(x / std::sin(x), p);
    };
    auto far = [&](double x) { return 0.5 * (D(x) - taylor(x)) / std::pow(std::sin(x), p); };
    double r = quad::tanh_sinh(near, 0.0, a, 1e-13);
    double lo = a;
    for (double b : x_breaks(v, H, a)) {
        r += quad::tanh_sinh(far, lo, b, 1e-13);
        lo = b;
    }
    return r + quad::tanh_sinh(far, lo, kPi / 2, 1e-13);
}

int stated_order(NVariant v, int n) {
    switch (v) {
        case NVariant::Minus: return (n - 1) / 2;
        case NVariant::Plus: return (n - 3) / 4;
        default: return (n - 2) / 2;
    }
}

}  // namespace

NIntegral jet_integral_N(NVariant v, const ZonalData& H, int n) {
    if (n < 2) throw InputError("n must be at least 2");
    if (!(H.radius > 0)) throw InputError("H needs a jet at pi/4");
    const double p = (n + 1) / 2.0;
    const int m = static_cast<int>(std::ceil(p)) - 1;
    if (m >= kJetOrder) throw InputError("jet too short for this dimension");
    const double a = std::min(0.25, H.radius);
    Jet d = d_jet(v, H);
    NIntegral out{};
    out.cutoff = a;
    out.order = m;
    auto take = subtracted(v, m);
    out.value = n_integral(v, H, p, d, take, m, a);
    out.order_stated = stated_order(v, n);
    auto take_p = subtracted(v, out.order_stated);
    out.value_stated = integrable(v, take_p, p) ? n_integral(v, H, p, d, take_p, out.order_stated, a)
                                               : std::numeric_limits<double>::quiet_NaN();
    return out;
}

LaurentValue n_route_assembly(Parity parity, const ZonalData& H, int n) {
    NVariant v = parity == Parity::ConeSym       ? NVariant::Plus
                 : parity == Parity::ConeAntisym ? NVariant::Minus
                 : parity == Parity::S           ? NVariant::SpaceSide
                                                 : NVariant::TimeSide;
    NIntegral N = jet_integral_N(v, H, n);
    const double lam = crofton_lambda(n);
    const double a = N.cutoff;
    Jet d = d_jet(v, H);
    auto take = subtracted(v, N.order);
    CSeries cs = c_series(lam);
    LaurentValue total = LaurentValue::regular(lam, N.value);
    for (int i = 0; i <= N.order; ++i) {
        if (!take[i] || d[i] == 0.0) continue;
        double tail = quad::tanh_sinh([&](double x) { return std::pow(std::sin(x), lam) * std::pow(x, i); }, a, kPi / 2, 1e-13);
        LaurentValue q = moment_M(cs, i, a) + LaurentValue::regular(lam, tail);
        total += (0.5 * d[i]) * q;
    }
    total *= 4.0;
    return combine_parity(parity == Parity::T ? Parity::S : parity, total, LaurentValue::regular(lam, 0.0));
}

const char* side_name(SweepSide s) { return s == SweepSide::Plus ? "plus" : "minus"; }

std::vector<double> eps_magnitudes(double eps_min, double eps_max, int points) {
    if (!(eps_min > 0 && eps_max > eps_min)) throw InputError("need 0 < eps_min < eps_max");
    if (points < 2) throw InputError("need at least two grid points");
    std::vector<double> e(points);
    for (int i = 0; i < points; ++i) e[i] = eps_max * std::pow(eps_min / eps_max, static_cast<double>(i) / (points - 1));
    return e;
}

int worker_threads() {
    if (const char* s = std::getenv("LORVAL_THREADS")) {
        int t = std::atoi(s);
        if (t >= 1) return t;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, const std::function<void(int)>& body) {
    const int nt = std::min(count, worker_threads());
    if (nt <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (int i; (i = next++) < count;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

std::vector<SweepRecord> sweep(const SweepConfig& cfg) {
    if (cfg.points < 8) throw InputError("a sweep needs at least 8 grid points per side");
    if (!cfg.plus && !cfg.minus) throw InputError("no side selected");
    check_cone_args(cfg.n, cfg.eps_max);
    check_cone_args(cfg.n, cfg.eps_min);
    auto mags = eps_magnitudes(cfg.eps_min, cfg.eps_max, cfg.points);
    std::vector<SweepRecord> recs;
    for (SweepSide side : {SweepSide::Plus, SweepSide::Minus}) {
        if ((side == SweepSide::Plus && !cfg.plus) || (side == SweepSide::Minus && !cfg.minus)) continue;
        for (double e : mags)
            recs.push_back({cfg.n, cfg.n - 2, cfg.parity, side, side == SweepSide::Plus ? e : -e, 0.0});
    }
    parallel_for(static_cast<int>(recs.size()), [&](int i) {
        recs[i].value = evaluate_on_stretched_cone(cfg.n, cfg.parity, recs[i].eps);
    });
    return recs;
}

Json sweep_metadata(const SweepConfig& cfg) {
    Json j;
    j["n"] = cfg.n;
    j["k"] = cfg.n - 2;
    j["parity"] = parity_name(cfg.parity);
    j["eps_min"] = cfg.eps_min;
    j["eps_max"] = cfg.eps_max;
    j["points"] = cfg.points;
    j["side"] = cfg.plus && cfg.minus ? "both" : cfg.plus ? "plus" : "minus";
    j["lambda"] = crofton_lambda(cfg.n);
    const int pole_order = static_cast<int>(std::ceil((cfg.n + 1) / 2.0));
    j["jet_order"] = {{"from_pole_order", pole_order - 1},
                      {"stated", {{"N_minus", stated_order(NVariant::Minus, cfg.n)},
                                 {"N_plus", stated_order(NVariant::Plus, cfg.n)},
                                 {"one_sided", stated_order(NVariant::SpaceSide, cfg.n)}}}};
    return j;
}

void write_sweep_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRecord>& recs) {
    os << "# " << sweep_metadata(cfg).dump() << "\n";
    os << "n,k,parity,side,eps,value\n";
    char buf[256];
    for (const auto& r : recs) {
        std::snprintf(buf, sizeof buf, "%d,%d,%s,%s,%.12e,%.12e\n", r.n, r.k, parity_name(r.parity), side_name(r.side),
                      r.eps, r.value);
        os << buf;
    }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& is) {
    std::vector<SweepRecord> recs;
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line.rfind("n,k,parity,side,eps,value", 0) != 0) throw InputError("unexpected sweep CSV header");
            header = true;
            continue;
        }
        std::stringstream ss(line);
        std::vector<std::string> f;
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 6) throw InputError("malformed sweep CSV row at line " + std::to_string(lineno));
        SweepRecord r;
        try {
            r.n = std::stoi(f[0]);
            r.k = std::stoi(f[1]);
            r.parity = parse_parity(f[2]);
            if (f[3] == "plus") r.side = SweepSide::Plus;
            else if (f[3] == "minus") r.side = SweepSide::Minus;
            else throw InputError("bad side");
            r.eps = std::stod(f[4]);
            r.value = std::stod(f[5]);
        } catch (const std::logic_error&) {
            throw InputError("malformed sweep CSV row at line " + std::to_string(lineno));
        }
        recs.push_back(r);
    }
    if (!header) throw InputError("sweep CSV has no header");
    return recs;
}

const char* mode_name(DivergenceMode m) {
    switch (m) {
        case DivergenceMode::LogDivergent: return "LogDivergent";
        case DivergenceMode::OneSidedMismatch: return "OneSidedMismatch";
        case DivergenceMode::BoundedNonzeroObstruction: return "BoundedNonzeroObstruction";
    }
    return "?";
}

LineFit fit_log(const std::vector<double>& eps, const std::vector<double>& values) {
    const size_t N = eps.size();
    if (N < 3 || values.size() != N) throw InputError("a log fit needs at least three points");
    std::vector<double> x(N);
    double mx = 0, my = 0;
    for (size_t i = 0; i < N; ++i) {
        x[i] = std::log(1.0 / std::abs(eps[i]));
        mx += x[i];
        my += values[i];
    }
    mx /= N;
    my /= N;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < N; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (values[i] - my);
        syy += (values[i] - my) * (values[i] - my);
    }
    if (sxx == 0) throw InputError("log fit needs distinct eps values");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0;
    for (size_t i = 0; i < N; ++i) {
        double r = values[i] - f.intercept - f.slope * x[i];
        ssr += r * r;
    }
    f.slope_stderr = std::sqrt(ssr / (N - 2) / sxx);
    f.r2 = syy > 0 ? 1.0 - ssr / syy : 1.0;
    return f;
}

std::vector<double> richardson_exponents(int n) {
    if (n % 2) return {1.0, 2.0};
    return {0.5, 1.0, 1.5};
}

Extrapolation richardson(const std::vector<double>& eps, const std::vector<double>& values,
                         const std::vector<double>& exponents, double tol) {
    const int r = static_cast<int>(exponents.size());
    const int N = static_cast<int>(eps.size());
    if (N < r + 3) throw InputError("too few points for Richardson extrapolation");
    std::vector<int> idx(N);
    for (int i = 0; i < N; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(eps[a]) > std::abs(eps[b]); });
    std::vector<double> L;
    for (int w = 0; w < 3; ++w) {
        const int end = N - w;  // window [end - r - 1, end)
        Eigen::MatrixXd A(r + 1, r + 1);
        Eigen::VectorXd b(r + 1);
        for (int row = 0; row < r + 1; ++row) {
            int j = idx[end - r - 1 + row];
            double e = std::abs(eps[j]);
            A(row, 0) = 1.0;
            for (int c = 0; c < r; ++c) A(row, c + 1) = std::pow(e, exponents[c]);
            b(row) = values[j];
        }
        L.push_back(A.colPivHouseholderQr().solve(b)(0));
    }
    auto [lo, hi] = std::minmax_element(L.begin(), L.end());
    Extrapolation x;
    x.limit = L[0];
    x.spread = *hi - *lo;
    x.stable = x.spread <= tol * std::max(1.0, std::abs(x.limit));
    return x;
}

DivergenceVerdict fit_divergence(const std::vector<SweepRecord>& recs) {
    std::vector<double> ep, vp, em, vm;
    int n = -1;
    for (const auto& r : recs) {
        if (n < 0) n = r.n;
        if (r.n != n) throw InputError("records mix dimensions");
        if (!std::isfinite(r.value)) throw NumericalError("non-finite value in sweep records");
        (r.side == SweepSide::Plus ? ep : em).push_back(r.eps);
        (r.side == SweepSide::Plus ? vp : vm).push_back(r.value);
    }
    if (std::max(ep.size(), em.size()) < 8) throw InputError("fit needs at least 8 records on one side");
    auto ex = richardson_exponents(n);
    const size_t need = ex.size() + 3;

    DivergenceVerdict v;
    struct SideFit {
        bool present = false;
        LineFit fit;
        Extrapolation x{};
    } P, M;
    auto analyse = [&](const std::vector<double>& e, const std::vector<double>& val, SideFit& s) {
        if (e.size() < std::max<size_t>(need, 3)) return;
        s.present = true;
        s.fit = fit_log(e, val);
        s.x = richardson(e, val, ex, v.tol);
    };
    analyse(ep, vp, P);
    analyse(em, vm, M);

    auto log_div = [](const SideFit& s) {
        return s.present && s.fit.r2 >= 0.99 && std::abs(s.fit.slope) > 5 * s.fit.slope_stderr && !s.x.stable;
    };
    v.plus_stable = P.present && P.x.stable;
    v.minus_stable = M.present && M.x.stable;
    v.limit_plus = P.present ? P.x.limit : 0.0;
    v.limit_minus = M.present ? M.x.limit : 0.0;
    for (auto* s : {&P, &M}) {
        if (log_div(*s)) {
            v.mode = DivergenceMode::LogDivergent;
            v.side = s == &P ? "plus" : "minus";
            v.fit = s->fit;
            return v;
        }
    }
    v.fit = P.present ? P.fit : M.fit;
    v.side = P.present && M.present ? "both" : P.present ? "plus" : "minus";
    const double scale = std::max({1.0, std::abs(v.limit_plus), std::abs(v.limit_minus)});
    v.tol = 1e-4 * scale;
    if (P.present && M.present) {
        v.gap = v.limit_plus - v.limit_minus;
        if (v.plus_stable && v.minus_stable && std::abs(v.gap) > 10 * v.tol) {
            v.mode = DivergenceMode::OneSidedMismatch;
            return v;
        }
    }
    v.mode = DivergenceMode::BoundedNonzeroObstruction;
    return v;
}

Json verdict_json(const DivergenceVerdict& v) {
    Json j;
    j["mode"] = mode_name(v.mode);
    j["side"] = v.side;
    j["fitted_slope"] = v.fit.slope;
    j["slope_stderr"] = v.fit.slope_stderr;
    j["intercept"] = v.fit.intercept;
    j["r2"] = v.fit.r2;
    j["limit_plus"] = v.limit_plus;
    j["limit_minus"] = v.limit_minus;
    j["plus_stable"] = v.plus_stable;
    j["minus_stable"] = v.minus_stable;
    j["limit_gap"] = v.gap;
    j["tolerance"] = v.tol;
    return j;
}

double obstruction_statistic(double eps) {
    if (!(eps < 0)) throw InputError("the obstruction statistic is taken on the eps < 0 side");
    const double e = std::abs(eps);
    const double eta = std::tan(kPi / 4 - e);
    const double q0 = 1.0 - eta * eta;
    // a - pi/4 = u^2, and tan(pi/4 + t) = (1 + tan t) / (1 - tan t) keeps q - q0 free of cancellation
    auto f = [&](double u) {
        const double t = u * u;
        const double tt = std::tan(t);
        const double ratio = t > 0 ? tt / t : 1.0;
        const double ta = (1.0 + tt) / (1.0 - tt);
        const double q = std::max(0.0, 1.0 - eta * eta * ta * ta);
        return -8.0 * eta * eta * ratio / ((1.0 - tt) * (1.0 - tt)) / (std::sqrt(q) + std::sqrt(q0));
    };
    return -4.0 + quad::tanh_sinh(f, 0.0, std::sqrt(e), 1e-12);
}

double positive_control_value(int n, ValuationKind kind, double eps) {
    if (n < 2) throw InputError("n must be at least 2");
    if (eps == 0.0 || std::abs(eps) >= kPi / 4) throw InputError("eps out of range");
    StretchedCone C = StretchedCone::make(n, eps, n - 1);
    ZonalMeasure z = zonal_surface_measure(RotationBody(C.as_rotation()), n - 1);
    double s = 0.0;
    for (const auto& a : z.atoms) {
        const double b = std::abs(a.beta);
        const bool time_region = b <= kPi / 4;
        if (time_region != (kind == ValuationKind::TimeLike)) continue;
        s += a.mass * std::sqrt(std::abs(std::cos(b) * std::cos(b) - std::sin(b) * std::sin(b)));
    }
    return s;
}

double extrapolate_sqrt(const std::vector<double>& eps, const std::vector<double>& values, int degree) {
    const int N = static_cast<int>(eps.size());
    if (N < degree + 2) throw InputError("too few points to extrapolate");
    Eigen::MatrixXd A(N, degree + 1);
    Eigen::VectorXd b(N);
    for (int i = 0; i < N; ++i) {
        double s = std::sqrt(std::abs(eps[i]));
        for (int c = 0; c <= degree; ++c) A(i, c) = std::pow(s, c);
        b(i) = values[i];
    }
    return A.colPivHouseholderQr().solve(b)(0);
}

}  // namespace lorval
