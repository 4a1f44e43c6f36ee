#pragma once

#include <cstdint>

namespace slicegeo {

/// Knobs for every budgeted search. Defaults are the documented ones; all
/// outputs record the seed and sample budget they were produced with.
struct SolverBudget {
    int samples = 128;           // sphere sample count for sup surrogates
    int starts = 12;             // multi-start count
    int iterations = 120;        // iterations per start
    int resolution = 2048;       // boundary grid resolution (oracles, 2D paths)
    int weight_grid = 64;        // weight discretization for the 2-term oracle
    double margin = 1e-4;        // separation margin for hull projection tests
    int dim_budget = 8;          // max ambient dimension for exact enumeration
    std::uint64_t enum_cap = 2'000'000;  // max basis count in vertex enumeration
    int restore_rounds = 50;     // feasibility restoration cap
    double restore_tol = 1e-9;   // feasibility restoration tolerance
    double fw_gap_tol = 1e-8;    // conditional-gradient duality-gap stop
    std::uint64_t seed = 1;
    int threads = 1;

    SolverBudget with_seed(std::uint64_t s) const {
        SolverBudget b = *this;
        b.seed = s;
        return b;
    }
};

}  // namespace slicegeo
