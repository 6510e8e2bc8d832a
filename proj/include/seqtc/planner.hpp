#pragma once

#include "seqtc/bounds.hpp"
#include "seqtc/geometry.hpp"

#include <string>
#include <vector>

namespace seqtc {

struct PlannerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PlannerOptions {
    double tau_proj = -1.0;           // < 0: 1e-9 * scene_scale
    double epsilon_connector = 0.25;  // fraction of each interval per connector leg, in (0, 1/2)
    double tolerance = 1e-7;          // separation threshold, relative to scene_scale
    double node_tolerance = 1e-9;     // node-equality threshold, relative to scene_scale
    bool fast_path = false;           // skip the perturbation when already generic
};

/* Obstacles and per-robot target lists, kept in the caller's robot order.
 * Validity: obstacles pairwise distinct, and every slice configuration
 * (obstacles plus each robot's target at index min(k, r_i)) consists of
 * pairwise distinct points. */
class Scenario {
public:
    static Scenario create(int d, PlannerMode mode, std::vector<Vec> obstacles,
                           std::vector<std::vector<Vec>> targets);

    const ProblemSpec& spec() const { return spec_; }
    PlannerMode mode() const { return mode_; }
    const std::vector<Vec>& obstacles() const { return obstacles_; }
    const std::vector<std::vector<Vec>>& targets() const { return targets_; }

    /* Largest pairwise distance among all symbol points. */
    double scene_scale() const { return scale_; }

    /* Symbol enumeration: o1..om, then z1^1..z1^r1, z2^1, ... in the
     * caller's robot order. */
    std::vector<std::string> symbol_names() const;
    std::vector<Vec> symbol_points() const;

private:
    Scenario() = default;
    ProblemSpec spec_ = ProblemSpec::create(2, 2, {1});
    PlannerMode mode_ = PlannerMode::general;
    std::vector<Vec> obstacles_;
    std::vector<std::vector<Vec>> targets_;
    double scale_ = 0;
};

/* Projection-equality classes of the symbol set, ordered by projection
 * value. c = classes, mu = classes containing an obstacle, nu = c - mu. */
struct CellDescriptor {
    int c = 0;
    int mu = 0;
    int nu = 0;
    std::vector<std::vector<std::string>> sigma;
    std::vector<double> cluster_values; // one representative per class, ascending
    std::vector<int> symbol_cluster;    // class index per symbol
};

/* General mode: the fixed frame e = first basis direction. Even-optimized
 * mode: e = (o2 - o1)/|o2 - o1| with e_perp its tangent-field image. */
ProjectionFrame projection_frame(const Scenario& sc);

CellDescriptor classify_cell(const Scenario& sc, const ProjectionFrame& frame, double tau_proj);

/* delta_C: half the minimum gap between distinct projection classes, or 1
 * when there is a single class. */
double clearance(const CellDescriptor& cell);

struct Perturbation {
    Scenario scenario; // targets shifted along e; obstacles untouched
    double delta = 0;
};

/* Shift target (i, k) along e by (prefix_i + k) * delta / R, using the
 * sorted robot order; afterwards all target projections are pairwise
 * distinct and distinct from every obstacle projection. */
Perturbation perturb(const Scenario& sc, const ProjectionFrame& frame, const CellDescriptor& cell);

/* Three-segment overpass A -> A + D e_perp -> B + D e_perp -> B with
 * D = max(1, 1 + max_P height(P) - min(height(A), height(B))). Requires
 * the projections of A and B to differ from every blocker's projection.
 * Returns the corner points (single point when A == B). */
std::vector<Vec> single_robot_detour(const Vec& A, const Vec& B, const std::vector<Vec>& blockers,
                                     const ProjectionFrame& frame);

struct Breakpoint {
    double t = 0;
    Vec x;
};

struct PlannedPath {
    std::vector<double> schedule;                 // 0 = t_1 < ... < t_{r_n} = 1
    std::vector<std::vector<Breakpoint>> robots;  // caller's robot order
    CellDescriptor cell;
    double delta = 0;
};

/* Piecewise-linear evaluation (clamped at the ends). */
Vec path_point(const std::vector<Breakpoint>& bps, double t);

/* Sequential plan over a scenario whose target projections are already
 * pairwise distinct and distinct from the obstacles': one robot moves per
 * sub-interval, lowest-index still-moving robot first, everyone else held
 * as an obstacle. */
PlannedPath plan_generic(const Scenario& sc, const ProjectionFrame& frame);

/* Full pipeline: frame, cell, perturbation, generic plan on the perturbed
 * configuration, conjugated per interval so every node is hit exactly:
 * the first epsilon fraction moves all robots from the exact slice points
 * to the perturbed ones, the middle runs the generic plan rescaled, the
 * last epsilon fraction runs the homotopy back. */
PlannedPath plan(const Scenario& sc, const PlannerOptions& options = {});

struct ValidationReport {
    double min_robot_robot = 0;
    double min_robot_obstacle = 0;
    double max_node_interpolation_error = 0;
    double max_stopped_node_violation = 0;
    double scene_scale = 0;
    int samples_per_interval = 0;
    double tolerance = 0;
    double node_tolerance = 0;
    bool pass = false;
};

/* Samples every schedule interval uniformly (endpoints included) and
 * reports the minimum robot-robot and robot-obstacle separations plus the
 * node-equality errors. Parallelized over samples when OpenMP is enabled. */
ValidationReport validate(const PlannedPath& path, const Scenario& sc, int samples_per_interval,
                          double tolerance, double node_tolerance = 1e-9);

/* Serial reference for the parallel validator; same contract, same result. */
ValidationReport validate_reference(const PlannedPath& path, const Scenario& sc,
                                    int samples_per_interval, double tolerance,
                                    double node_tolerance = 1e-9);

} // namespace seqtc
