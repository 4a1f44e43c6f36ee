#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "slicegeo/budget.hpp"
#include "slicegeo/error.hpp"
#include "slicegeo/vec.hpp"

namespace slicegeo {

enum class SpaceKind { polytope_v, polytope_h, lp, lip, sum };

const char* kind_name(SpaceKind k);

struct Facet {
    Vec normal;
    double offset = 1.0;  // ball side: <normal, x> <= offset
};

/// Description of a finite-dimensional normed space. Immutable after
/// validation; all operations are pure and safe for concurrent readers.
struct SpaceSpec {
    SpaceKind kind = SpaceKind::lp;
    int dim = 0;
    std::string name;

    std::vector<Vec> vertices;  // polytope_v: unit-ball vertex set
    std::vector<Facet> facets;  // polytope_h
    double p = 2.0;             // lp / sum exponent; infinity() for max
    Matrix metric;              // lip: finite metric, coordinates are values at non-base points
    int base_index = 0;         // lip
    std::shared_ptr<const SpaceSpec> left, right;  // sum components

    std::string id() const;
};

SpaceSpec lp_space(int dim, double p, std::string name = "");
SpaceSpec polytope_v_space(std::vector<Vec> vertices, std::string name = "");
SpaceSpec polytope_h_space(int dim, std::vector<Facet> facets, std::string name = "");
SpaceSpec lip_space(Matrix metric, int base_index, std::string name = "");
SpaceSpec sum_space(SpaceSpec left, SpaceSpec right, double p, std::string name = "");

struct ValidationIssue {
    std::string invariant;
    std::string detail;
    std::vector<int> indices;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
};

ValidationReport validate(const SpaceSpec& spec);
void require_valid(const SpaceSpec& spec);  // throws InvalidSpec with the first issue

/// Minkowski gauge of the unit ball.
double norm(const SpaceSpec& spec, const Vec& x);

/// sup of <f, .> over the unit ball.
double dual_norm(const SpaceSpec& spec, const Vec& f);

/// A maximizer of <f, .> over the unit ball.
Vec support_point(const SpaceSpec& spec, const Vec& f);

/// g with <g, x> = |x| and dual_norm(g) <= 1; zero vector for x = 0.
Vec norm_subgradient(const SpaceSpec& spec, const Vec& x);

Vec project_to_sphere(const SpaceSpec& spec, const Vec& x);

/// Nearest-point projection where it is cheap (cube, Euclidean, product),
/// radial rescaling otherwise. Always lands in the ball.
Vec project_to_ball(const SpaceSpec& spec, const Vec& x);

/// True when exact vertex/facet enumeration is available: polytope kinds,
/// lp with p in {1, inf}, and sums with p in {1, inf} of polytopal parts.
bool is_polytopal(const SpaceSpec& spec);

struct BallGeometry {
    std::vector<Vec> vertices;
    std::vector<Facet> facets;  // non-redundant, symmetric
};

BallGeometry ball_geometry(const SpaceSpec& spec, const SolverBudget& budget = {});

/// Extreme points of the unit ball (exact geometry backend).
std::vector<Vec> ball_vertices(const SpaceSpec& spec, const SolverBudget& budget = {});

/// Deterministic unit-sphere sample. For polytopal spaces the list starts with
/// all ball vertices; the result has max(count, #vertices) entries there and
/// exactly count entries otherwise.
std::vector<Vec> sphere_sample(const SpaceSpec& spec, std::uint64_t seed, int count,
                               const SolverBudget& budget = {});

// Geometry helpers shared with the slice module.
std::vector<Facet> prune_redundant_facets(std::vector<Facet> facets, int dim);
std::vector<Vec> enumerate_h_vertices(const std::vector<Facet>& facets, int dim,
                                      std::uint64_t enum_cap);
std::vector<Facet> facets_from_vertices_2d(const std::vector<Vec>& vertices);

}  // namespace slicegeo
