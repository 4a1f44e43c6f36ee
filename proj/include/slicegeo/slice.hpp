#pragma once

#include <string>

#include "slicegeo/budget.hpp"
#include "slicegeo/space.hpp"

namespace slicegeo {

/// S(B_X, f, depth) = {x in B_X : <f, x> > 1 - depth} with dual_norm(f) = 1.
/// Closed variants (>=) are used for diameter computations; diameters of a set
/// and of its closure coincide.
struct Slice {
    SpaceSpec space;
    Vec functional;  // stored with dual norm 1
    double depth = 0.0;

    double threshold() const { return 1.0 - depth; }
    bool contains(const Vec& x) const;  // the defining open predicate
    bool contains_closed(const Vec& x, double tol = 1e-9) const;
};

Slice make_slice(const SpaceSpec& space, const Vec& f, double depth);

struct DiameterResult {
    double lower = 0.0;  // attained by the witness pair, always certified
    double upper = 0.0;
    bool exact = false;  // true on the polytopal vertex-enumeration path
    Vec witness_u, witness_v;
};

DiameterResult slice_diameter(const Slice& slice, const SolverBudget& budget = {});

struct MinDiameterResult {
    double upper = 0.0;  // smallest diameter found; certified when upper_certified
    double lower = 0.0;
    bool upper_certified = false;            // per-slice diameters were exact
    bool lower_resolution_qualified = false; // lower is the min over an angular grid
    int resolution = 0;
    Vec witness_functional;
    DiameterResult witness;
};

MinDiameterResult min_slice_diameter(const SpaceSpec& space, double depth,
                                     const SolverBudget& budget = {});

struct SeparationResult {
    bool separated = false;
    Slice slice;                      // meaningful when separated
    double hull_distance_lower = 0.0; // certified Euclidean gap to the sampled hull
    double sup_hull = 0.0;            // sup of the slice functional over sampled midpoints
    double sup_x0 = 0.0;              // value at x0
    double sampling_gap = 0.0;        // boundary-grid slack absorbed by the guard (2D)
    bool certified = false;           // dense 2D sampling path
    std::string note;
};

/// Hahn-Banach step made executable: if x0 is separated from the sampled
/// midpoint set S^{alpha-eps}(X), returns a slice containing x0 and disjoint
/// from it. The construction promises diameter <= alpha - eps; callers verify
/// with slice_diameter.
SeparationResult separating_slice(const SpaceSpec& space, const Vec& x0, double alpha, double eps,
                                  const SolverBudget& budget = {});

struct SpreadWitness {
    bool found = false;
    Vec u, v;
    double separation = 0.0;
    double midpoint_value = 0.0;  // <f, (u+v)/2>
};

/// Searches the half-depth slice for a midpoint of an (alpha-eps)-separated
/// pair; on success both endpoints lie in the original slice.
SpreadWitness slice_spread_witness(const Slice& slice, double alpha, double eps,
                                   const SolverBudget& budget = {});

}  // namespace slicegeo
