#pragma once

#include <vector>

#include "slicegeo/vec.hpp"

namespace slicegeo {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    Vec x;  // basic (vertex) solution when optimal
};

/// Row relation for constraints: LE (<=), EQ (=), GE (>=).
enum class Rel { LE, EQ, GE };

/// Minimize c.x subject to A x (rel) b, x >= 0, via dense two-phase simplex.
/// Problems here are small (tens of rows/columns); tolerance is 1e-9.
LpResult solve_lp(const Matrix& A, const Vec& b, const Vec& c, const std::vector<Rel>& rel);

/// Maximize f.x over {x free : A x <= b}. Splits x into positive parts
/// internally and returns a vertex maximizer.
LpResult lp_max_linear(const Matrix& A, const Vec& b, const Vec& f);

}  // namespace slicegeo
