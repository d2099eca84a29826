#pragma once

#include <functional>
#include <vector>

#include "lorval/bodies.hpp"

namespace lorval {

using ZonalFunction = std::function<double(double)>;

// Mean of |<u, v>| over v at elevation beta (azimuth uniform on S^{k-1}),
// u at elevation alpha.
double zonal_kernel(int k, double alpha, double beta);

struct ZonalKernel {
    int k;
    std::vector<double> alphas, betas;
    Mat table;
    ZonalKernel(int k, std::vector<double> alphas, std::vector<double> betas);
};

double cosine_transform_at(int k, const ZonalMeasure& sigma, double alpha);
ZonalFunction cosine_transform(int k, ZonalMeasure sigma);
std::vector<double> cosine_transform_grid(int k, const ZonalMeasure& sigma, const std::vector<double>& alphas);

// The measure f(x) dx on S^k written in elevation coordinates.
ZonalMeasure function_as_measure(int k, ZonalFunction f);

// Probability-normalized average over the great subsphere orthogonal to
// the direction at elevation alpha.
double radon_at(int k, const ZonalFunction& f, double alpha);
ZonalFunction radon_transform(int k, ZonalFunction f);

// Zonal Laplace-Beltrami operator on S^k, fourth-order differences.
double zonal_laplacian(int k, const ZonalFunction& f, double beta, double h = 1e-2);

// Degree-d zonal harmonic on S^k as a function of elevation.
double zonal_harmonic(int k, int degree, double beta);

struct BoxIdentityReport {
    double residual;        // with the calibrated constant
    double residual_stated;  // with 1 / (2 |S^{k-1}|)
    double c_calibrated;
    double c_stated;
    double scale;
};

BoxIdentityReport box_identity(int k, const ZonalFunction& f, int grid = 25);
double box_identity_residual(int k, const ZonalFunction& f);

}  // namespace lorval
