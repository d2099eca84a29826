#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "lorval/bodies.hpp"

namespace lorval {

enum class ValuationKind { TimeLike, SpaceLike };

struct InvariantValuation {
    ValuationKind kind;
    int n;
};

const char* kind_name(ValuationKind k);
ValuationKind parse_kind(const std::string& s);  // "T" or "S"

// Weight of a unit normal under f_T / f_S: sqrt|sin 2 eps| on the kind's region.
double valuation_weight(ValuationKind kind, const Vec& normal);

double evaluate(const InvariantValuation& v, const ConvexBody& K);

// A flat (n-1)-dimensional convex piece counted with both orientations.
double evaluate_flat(ValuationKind kind, const std::vector<Vec>& pts, const Vec& normal);

enum class Sheet { HPlus, HMinus };

double support_of_hyperboloid(Sheet sheet, const Vec& omega);
double mixed_volume_form(const InvariantValuation& v, const ConvexBody& K);

// Geodesic polygon on a sheet in R^3 given by its vertices; consecutive
// vertices span the bounding planes. Alternatively one closed geodesic
// cut out by a space-like plane with the given normal.
struct HyperboloidPatch {
    Sheet sheet;
    std::vector<Vec> vertices;
    std::optional<Vec> closed_plane_normal;
};

struct ConeAreaResult {
    double lhs;         // boundary length by quadrature of the induced metric
    double lhs_closed;  // arccos / arccosh chord formula
    double rhs;         // f on the cone over the patch, facet sum
};

ConeAreaResult cone_area_identity(const HyperboloidPatch& patch);

HyperboloidPatch random_patch(Sheet sheet, int vertices, std::mt19937_64& rng);

struct CutResult {
    Polytope lower, upper;
    std::vector<Vec> section;
};

// Split by the plane <u, x> = c; both sides must be full-dimensional.
CutResult cut_polytope(const Polytope& P, const Vec& u, double c);

}  // namespace lorval
