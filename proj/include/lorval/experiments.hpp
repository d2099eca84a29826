#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lorval/body_io.hpp"
#include "lorval/mero.hpp"
#include "lorval/valuations.hpp"

namespace lorval {

struct ConeParts {
    LaurentValue S, T;
};

// Space and time halves of |cos 2a|^{-(n+1)/2} paired with h_{n-2,eps} g_{n,2}.
ConeParts stretched_cone_parts(int n, double eps);
LaurentValue evaluate_on_stretched_cone_laurent(int n, Parity parity, double eps);
double evaluate_on_stretched_cone(int n, Parity parity, double eps);

// h_{n-2,eps} g_{n,2} as zonal data: the analytic branch through pi/4 and the
// seam correction supported below pi/4 - eps
ZonalData cone_plus_branch(int n, double eps);
ZonalData cone_seam_part(int n, double eps);
ZonalData cone_total(int n, double eps);

enum class NVariant { Minus, Plus, SpaceSide, TimeSide };

struct NIntegral {
    double value;        // with the jet order read off from the pole order
    int order;
    double value_stated;  // with the order given by the closed-form count
    int order_stated;
    double cutoff;       // split point a between the Taylor tail and direct evaluation
};

NIntegral jet_integral_N(NVariant v, const ZonalData& H, int n);

// f^parity(H) at lambda = -(n+1)/2 assembled from the N integral and the
// regularized moments of the subtracted jet terms
LaurentValue n_route_assembly(Parity parity, const ZonalData& H, int n);

enum class SweepSide { Plus, Minus };
const char* side_name(SweepSide s);

struct SweepRecord {
    int n, k;
    Parity parity;
    SweepSide side;
    double eps;  // signed
    double value;
};

struct SweepConfig {
    int n = 3;
    Parity parity = Parity::S;
    double eps_min = 1e-5, eps_max = 1e-1;
    int points = 16;
    bool plus = true, minus = true;
};

std::vector<double> eps_magnitudes(double eps_min, double eps_max, int points);
std::vector<SweepRecord> sweep(const SweepConfig& cfg);
Json sweep_metadata(const SweepConfig& cfg);

void write_sweep_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRecord>& recs);
std::vector<SweepRecord> read_sweep_csv(std::istream& is);

enum class DivergenceMode { LogDivergent, OneSidedMismatch, BoundedNonzeroObstruction };
const char* mode_name(DivergenceMode m);

struct LineFit {
    double slope = 0, intercept = 0, slope_stderr = 0, r2 = 0;
};
// value ~ intercept + slope * log(1/|eps|)
LineFit fit_log(const std::vector<double>& eps, const std::vector<double>& values);

struct Extrapolation {
    double limit;
    double spread;  // across the last three windows
    bool stable;
};
Extrapolation richardson(const std::vector<double>& eps, const std::vector<double>& values,
                         const std::vector<double>& exponents, double tol = 1e-4);
std::vector<double> richardson_exponents(int n);

struct DivergenceVerdict {
    DivergenceMode mode;
    std::string side;  // side the verdict is read from
    LineFit fit;
    double limit_plus = 0, limit_minus = 0;
    bool plus_stable = false, minus_stable = false;
    double gap = 0;
    double tol = 1e-4;
};

DivergenceVerdict fit_divergence(const std::vector<SweepRecord>& recs);
Json verdict_json(const DivergenceVerdict& v);

// -4 + int_{pi/4}^{pi/4+|eps|} [(1 - eta^2 tan^2 a)^{1/2} - (1 - eta^2)^{1/2}] / (a - pi/4)^{3/2} da, eps < 0
double obstruction_statistic(double eps);

// f_T or f_S of C_{n,eps} through the zonal route; should tend to the value on C^n
double positive_control_value(int n, ValuationKind kind, double eps);
// fit in powers of |eps|^{1/2}, returns the constant term
double extrapolate_sqrt(const std::vector<double>& eps, const std::vector<double>& values, int degree = 3);

int worker_threads();
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace lorval
