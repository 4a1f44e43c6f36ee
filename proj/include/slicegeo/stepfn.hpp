#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slicegeo/error.hpp"
#include "slicegeo/vec.hpp"

namespace slicegeo {

/// Dyadic step function on [0,1]^coords with the product Lebesgue measure.
/// Coordinate j is split into 2^resolutions[j] equal cells; values are stored
/// row-major with coordinate 0 slowest. Every represented function depends on
/// finitely many coordinates by construction.
struct StepFunction {
    int coords = 1;
    std::vector<int> resolutions;  // one entry per coordinate, >= 0
    Vec values;                    // size prod_j 2^resolutions[j]

    std::size_t cell_count() const;
    double cell_measure() const;  // 2^{-sum resolutions}
};

StepFunction constant_fn(double c, int coords = 1);
inline StepFunction one_fn(int coords = 1) { return constant_fn(1.0, coords); }

/// (1/s) * indicator(t_coord in [0, s]); s must be a dyadic 2^-j, j >= 1.
StepFunction spike_fn(double s, int coord = 0, int coords = 1);

StepFunction refine_to(const StepFunction& f, int coords, const std::vector<int>& resolutions);
void unify(StepFunction& f, StepFunction& g);  // common refinement, throws GridIncompatible

StepFunction add_fn(const StepFunction& f, const StepFunction& g);
StepFunction sub_fn(const StepFunction& f, const StepFunction& g);
StepFunction scale_fn(const StepFunction& f, double t);

/// Exact weighted sum of absolute cell values.
double l1_norm(const StepFunction& f);

/// Convergence-in-measure metric inf{eps > 0 : mu(|f-g| >= eps) <= eps},
/// computed exactly from the value breakpoints and tail-measure fixed points
/// of the common refinement.
double dm(const StepFunction& f, const StepFunction& g);

struct CalculusReport {
    int checks = 0;
    int violations = 0;
    double min_subadditivity_margin = 0.0;  // sum d(f_i,0) - d(sum f_i, 0)
    double min_scaling_margin = 0.0;        // d(f,0) - d(lambda f, 0)
};

/// Subadditivity of d_m(.,0) over the list plus the scaling contraction for
/// each (f_i, lambda_i) pair. Violations are reported, never thrown.
CalculusReport check_dm_calculus(const std::vector<StepFunction>& fs, const Vec& lambdas);

struct ProbeRecord {
    double dm_to_zero = 0.0;
    double worst_deficit = 0.0;  // max over g in H of |f| + |g| - |f + g|
    int coord = 0;
    double support = 0.0;
};

struct ScanReport {
    double delta = 0.0;  // largest tested delta with all smaller probes passing
    bool all_within_eps = false;
    std::vector<ProbeRecord> log;
};

/// Empirical sweep for the near-disjointness threshold: spike probes with
/// shrinking d_m against every g in H. Evidence, not a proof.
ScanReport near_disjointness_scan(const std::vector<StepFunction>& H, double eps, int probe_count,
                                  std::uint64_t seed);

/// n unit spikes, each on its own coordinate of [0,1]^n; exactly independent
/// under the product measure with |f_j| = 1 and |f_j - 1| = 2 - 2s.
std::vector<StepFunction> spike_family(double s, int n);

struct SpikeDeficit {
    double value = 0.0;  // |(1/n) sum f_j - 1|
    bool grid_used = false;
    double grid_value = 0.0;
    double oracle_value = 0.0;
};

/// Exact full-product-grid enumeration; throws GridTooLarge above n = 12 or
/// 2^24 cells (the binomial oracle has no such limit).
double spike_deficit_grid(double s, int n);
double spike_deficit_binomial(double s, int n);

/// Computes the deficit both ways where the grid is feasible and asserts
/// agreement to 1e-12; falls back to the oracle alone otherwise.
SpikeDeficit spike_average_deficit(double s, int n);

std::string stepfn_to_json(const StepFunction& f);
StepFunction stepfn_from_json(const std::string& text);

}  // namespace slicegeo
