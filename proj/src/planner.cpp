#include "seqtc/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace seqtc {

namespace {

bool same_point(const Vec& a, const Vec& b)
{
    return a == b;
}

std::string symbol_name_obstacle(int a) { return "o" + std::to_string(a + 1); }

std::string symbol_name_target(int robot, int k)
{
    return "z" + std::to_string(robot + 1) + "^" + std::to_string(k + 1);
}

} // namespace

Scenario Scenario::create(int d, PlannerMode mode, std::vector<Vec> obstacles,
                          std::vector<std::vector<Vec>> targets)
{
    if (mode == PlannerMode::even_optimized && d % 2 != 0)
        throw std::invalid_argument("even-optimized mode requires even d");
    std::vector<int> stops;
    stops.reserve(targets.size());
    for (const auto& list : targets) {
        if (list.empty())
            throw std::invalid_argument("every robot needs at least one target");
        stops.push_back(static_cast<int>(list.size()));
    }

    Scenario sc;
    sc.spec_ = ProblemSpec::create(d, static_cast<int>(obstacles.size()), stops);
    sc.mode_ = mode;

    auto check_dim = [d](const Vec& p) {
        if (static_cast<int>(p.size()) != d)
            throw std::invalid_argument("point dimension mismatch");
    };
    for (const Vec& o : obstacles)
        check_dim(o);
    for (const auto& list : targets)
        for (const Vec& z : list)
            check_dim(z);

    const int m = sc.spec_.obstacle_count();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (same_point(obstacles[a], obstacles[b]))
                throw std::invalid_argument("obstacles must be pairwise distinct");

    const int r_max = sc.spec_.stops().back();
    for (int k = 1; k <= r_max; ++k) {
        std::vector<const Vec*> slice;
        for (const Vec& o : obstacles)
            slice.push_back(&o);
        for (const auto& list : targets)
            slice.push_back(&list[std::min<std::size_t>(k, list.size()) - 1]);
        for (std::size_t a = 0; a < slice.size(); ++a)
            for (std::size_t b = a + 1; b < slice.size(); ++b)
                if (same_point(*slice[a], *slice[b])) {
                    std::ostringstream os;
                    os << "slice " << k << " has coinciding points (symbols " << a << " and " << b
                       << ")";
                    throw std::invalid_argument(os.str());
                }
    }

    sc.obstacles_ = std::move(obstacles);
    sc.targets_ = std::move(targets);

    std::vector<Vec> pts = sc.symbol_points();
    double scale = 0;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            scale = std::max(scale, distance(pts[a], pts[b]));
    sc.scale_ = scale;
    return sc;
}

std::vector<std::string> Scenario::symbol_names() const
{
    std::vector<std::string> names;
    for (int a = 0; a < spec_.obstacle_count(); ++a)
        names.push_back(symbol_name_obstacle(a));
    for (std::size_t i = 0; i < targets_.size(); ++i)
        for (std::size_t k = 0; k < targets_[i].size(); ++k)
            names.push_back(symbol_name_target(static_cast<int>(i), static_cast<int>(k)));
    return names;
}

std::vector<Vec> Scenario::symbol_points() const
{
    std::vector<Vec> pts;
    for (const Vec& o : obstacles_)
        pts.push_back(o);
    for (const auto& list : targets_)
        for (const Vec& z : list)
            pts.push_back(z);
    return pts;
}

ProjectionFrame projection_frame(const Scenario& sc)
{
    const int d = sc.spec().dimension();
    if (sc.mode() == PlannerMode::even_optimized) {
        Vec diff = sub(sc.obstacles()[1], sc.obstacles()[0]);
        double len = norm(diff);
        Vec e = scaled(diff, 1.0 / len);
        return ProjectionFrame{e, tangent_field_image(e)};
    }
    Vec e(d, 0.0), p(d, 0.0);
    e[0] = 1.0;
    p[1] = 1.0;
    return ProjectionFrame{e, p};
}

CellDescriptor classify_cell(const Scenario& sc, const ProjectionFrame& frame, double tau_proj)
{
    if (tau_proj < 0)
        throw std::invalid_argument("tau_proj must be >= 0");
    const std::vector<Vec> pts = sc.symbol_points();
    const std::vector<std::string> names = sc.symbol_names();
    const int count = static_cast<int>(pts.size());
    std::vector<double> proj(count);
    for (int s = 0; s < count; ++s)
        proj[s] = frame.project(pts[s]);

    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (proj[a] != proj[b])
            return proj[a] < proj[b];
        return a < b;
    });

    CellDescriptor cell;
    cell.symbol_cluster.assign(count, -1);
    std::vector<std::vector<int>> members;
    for (int pos = 0; pos < count; ++pos) {
        int s = order[pos];
        if (pos == 0 || proj[s] - proj[order[pos - 1]] > tau_proj)
            members.emplace_back();
        members.back().push_back(s);
        cell.symbol_cluster[s] = static_cast<int>(members.size()) - 1;
    }

    const int m = sc.spec().obstacle_count();
    cell.c = static_cast<int>(members.size());
    for (auto& cls : members) {
        std::sort(cls.begin(), cls.end());
        double sum = 0;
        bool has_obstacle = false;
        std::vector<std::string> cls_names;
        for (int s : cls) {
            sum += proj[s];
            has_obstacle = has_obstacle || s < m;
            cls_names.push_back(names[s]);
        }
        cell.cluster_values.push_back(sum / static_cast<double>(cls.size()));
        cell.sigma.push_back(std::move(cls_names));
        if (has_obstacle)
            ++cell.mu;
    }
    cell.nu = cell.c - cell.mu;

    const int low = sc.mode() == PlannerMode::even_optimized ? 2 : 1;
    if (cell.c < low || cell.c > count)
        throw PlannerError("cell class count out of the legal range (tau_proj too large?)");
    return cell;
}

double clearance(const CellDescriptor& cell)
{
    if (cell.c <= 1)
        return 1.0;
    double gap = cell.cluster_values[1] - cell.cluster_values[0];
    for (std::size_t k = 2; k < cell.cluster_values.size(); ++k)
        gap = std::min(gap, cell.cluster_values[k] - cell.cluster_values[k - 1]);
    return gap / 2.0;
}

Perturbation perturb(const Scenario& sc, const ProjectionFrame& frame, const CellDescriptor& cell)
{
    const ProblemSpec& spec = sc.spec();
    const double delta = clearance(cell);
    const int total = spec.total_targets();

    std::vector<std::vector<Vec>> shifted = sc.targets();
    for (std::size_t i = 0; i < shifted.size(); ++i) {
        int sorted = spec.sorted_position(static_cast<int>(i));
        int prefix = 0;
        for (int p = 0; p < sorted; ++p)
            prefix += spec.stops()[p];
        for (std::size_t k = 0; k < shifted[i].size(); ++k) {
            double coeff = static_cast<double>(prefix + static_cast<int>(k) + 1) / total;
            shifted[i][k] = axpy(shifted[i][k], coeff * delta, frame.e);
        }
    }

    Perturbation out{Scenario::create(spec.dimension(), sc.mode(), sc.obstacles(), std::move(shifted)),
                     delta};

    /* Every target projection must now be separated from every other
     * symbol's projection. */
    const int m = spec.obstacle_count();
    std::vector<Vec> pts = out.scenario.symbol_points();
    std::vector<double> proj(pts.size());
    for (std::size_t s = 0; s < pts.size(); ++s)
        proj[s] = frame.project(pts[s]);
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (a < static_cast<std::size_t>(m) && b < static_cast<std::size_t>(m))
                continue;
            if (proj[a] == proj[b])
                throw InternalError("perturbation failed to separate projections");
        }
    return out;
}

std::vector<Vec> single_robot_detour(const Vec& A, const Vec& B, const std::vector<Vec>& blockers,
                                     const ProjectionFrame& frame)
{
    if (same_point(A, B))
        return {A};
    const double qa = frame.project(A);
    const double qb = frame.project(B);
    double max_height = -std::numeric_limits<double>::infinity();
    for (const Vec& p : blockers) {
        const double qp = frame.project(p);
        if (qp == qa || qp == qb)
            throw PlannerError("blocker shares a projection with a detour endpoint");
        max_height = std::max(max_height, frame.height(p));
    }
    double lift = 1.0;
    if (!blockers.empty())
        lift = std::max(1.0, 1.0 + max_height - std::min(frame.height(A), frame.height(B)));
    return {A, axpy(A, lift, frame.e_perp), axpy(B, lift, frame.e_perp), B};
}

Vec path_point(const std::vector<Breakpoint>& bps, double t)
{
    if (bps.empty())
        throw PlannerError("empty trajectory");
    if (t <= bps.front().t)
        return bps.front().x;
    if (t >= bps.back().t)
        return bps.back().x;
    auto it = std::upper_bound(bps.begin(), bps.end(), t,
                               [](double v, const Breakpoint& b) { return v < b.t; });
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    if (hi.t == lo.t)
        return hi.x;
    return lerp(lo.x, hi.x, (t - lo.t) / (hi.t - lo.t));
}

namespace {

void append_breakpoint(std::vector<Breakpoint>& bps, double t, Vec x)
{
    if (!bps.empty() && bps.back().t == t) {
        if (!same_point(bps.back().x, x))
            throw InternalError("conflicting breakpoints at one time");
        return;
    }
    if (!bps.empty() && t < bps.back().t)
        throw InternalError("breakpoint times must be non-decreasing");
    bps.push_back(Breakpoint{t, std::move(x)});
}

std::vector<double> uniform_schedule(int r_max)
{
    if (r_max == 1)
        return {0.0};
    std::vector<double> t(r_max);
    for (int k = 0; k < r_max; ++k)
        t[k] = static_cast<double>(k) / (r_max - 1);
    t.back() = 1.0;
    return t;
}

/* Sorted-order robot indices (as caller indices) still moving at stage k. */
std::vector<int> movers_at_stage(const ProblemSpec& spec, int k)
{
    std::vector<int> movers;
    for (int p = 0; p < spec.robot_count(); ++p)
        if (spec.stops()[p] >= k)
            movers.push_back(spec.robot_order()[p]);
    return movers;
}

void check_generic(const Scenario& sc, const ProjectionFrame& frame)
{
    const int m = sc.spec().obstacle_count();
    std::vector<Vec> pts = sc.symbol_points();
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (a < static_cast<std::size_t>(m) && b < static_cast<std::size_t>(m))
                continue;
            if (frame.project(pts[a]) == frame.project(pts[b]))
                throw PlannerError("plan_generic requires pairwise distinct target projections");
        }
}

} // namespace

PlannedPath plan_generic(const Scenario& sc, const ProjectionFrame& frame)
{
    const ProblemSpec& spec = sc.spec();
    const int n = spec.robot_count();
    const int r_max = spec.stops().back();
    check_generic(sc, frame);

    PlannedPath path;
    path.schedule = uniform_schedule(r_max);
    path.robots.resize(n);

    std::vector<Vec> cur(n);
    for (int i = 0; i < n; ++i) {
        cur[i] = sc.targets()[i][0];
        append_breakpoint(path.robots[i], 0.0, cur[i]);
    }

    for (int k = 2; k <= r_max; ++k) {
        const double ta = path.schedule[k - 2];
        const double tb = path.schedule[k - 1];
        const std::vector<int> movers = movers_at_stage(spec, k);
        const double sub = (tb - ta) / static_cast<double>(movers.size());
        for (std::size_t idx = 0; idx < movers.size(); ++idx) {
            const int u = movers[idx];
            const double t0 = ta + static_cast<double>(idx) * sub;
            const double t1 = idx + 1 == movers.size() ? tb : ta + static_cast<double>(idx + 1) * sub;
            const Vec& A = cur[u];
            const Vec& B = sc.targets()[u][k - 1];
            if (same_point(A, B))
                continue;
            std::vector<Vec> blockers = sc.obstacles();
            for (int v = 0; v < n; ++v)
                if (v != u)
                    blockers.push_back(cur[v]);
            std::vector<Vec> corners = single_robot_detour(A, B, blockers, frame);
            append_breakpoint(path.robots[u], t0, A);
            append_breakpoint(path.robots[u], t0 + (t1 - t0) / 3.0, corners[1]);
            append_breakpoint(path.robots[u], t0 + 2.0 * (t1 - t0) / 3.0, corners[2]);
            append_breakpoint(path.robots[u], t1, corners[3]);
            cur[u] = B;
        }
        for (int i = 0; i < n; ++i)
            append_breakpoint(path.robots[i], tb, cur[i]);
    }

    path.cell = classify_cell(sc, frame, 0.0);
    path.delta = clearance(path.cell);
    return path;
}

PlannedPath plan(const Scenario& sc, const PlannerOptions& options)
{
    if (!(options.epsilon_connector > 0.0 && options.epsilon_connector < 0.5))
        throw std::invalid_argument("epsilon_connector must lie in (0, 1/2)");
    const ProblemSpec& spec = sc.spec();
    const ProjectionFrame frame = projection_frame(sc);
    const double tau = options.tau_proj < 0 ? 1e-9 * sc.scene_scale() : options.tau_proj;
    const CellDescriptor cell = classify_cell(sc, frame, tau);
    const int n = spec.robot_count();
    const int r_max = spec.stops().back();

    const int symbol_count = spec.obstacle_count() + spec.total_targets();
    const bool fast = options.fast_path && cell.c == symbol_count;

    Scenario generic = sc;
    double delta = clearance(cell);
    if (!fast) {
        Perturbation p = perturb(sc, frame, cell);
        generic = std::move(p.scenario);
        delta = p.delta;
    }

    if (r_max == 1) {
        PlannedPath path;
        path.schedule = {0.0};
        path.robots.resize(n);
        for (int i = 0; i < n; ++i)
            append_breakpoint(path.robots[i], 0.0, sc.targets()[i][0]);
        path.cell = cell;
        path.delta = delta;
        return path;
    }

    const PlannedPath middle = plan_generic(generic, frame);
    const double eps = options.epsilon_connector;

    auto exact_at = [&](int robot, int stage) -> const Vec& {
        const auto& list = sc.targets()[robot];
        return list[std::min<std::size_t>(stage, list.size()) - 1];
    };
    auto shifted_at = [&](int robot, int stage) -> const Vec& {
        const auto& list = generic.targets()[robot];
        return list[std::min<std::size_t>(stage, list.size()) - 1];
    };

    PlannedPath path;
    path.schedule = middle.schedule;
    path.robots.resize(n);
    for (int i = 0; i < n; ++i)
        append_breakpoint(path.robots[i], 0.0, exact_at(i, 1));

    for (int k = 2; k <= r_max; ++k) {
        const double ta = path.schedule[k - 2];
        const double tb = path.schedule[k - 1];
        const double width = tb - ta;
        const double ea = ta + eps * width;
        const double eb = tb - eps * width;
        for (int i = 0; i < n; ++i) {
            append_breakpoint(path.robots[i], ta, exact_at(i, k - 1));
            append_breakpoint(path.robots[i], ea, shifted_at(i, k - 1));
            for (const Breakpoint& bp : middle.robots[i]) {
                if (bp.t <= ta || bp.t >= tb)
                    continue;
                const double t = ea + (bp.t - ta) / width * (eb - ea);
                append_breakpoint(path.robots[i], t, bp.x);
            }
            append_breakpoint(path.robots[i], eb, shifted_at(i, k));
            append_breakpoint(path.robots[i], tb, exact_at(i, k));
        }
    }

    path.cell = cell;
    path.delta = delta;
    return path;
}

namespace {

struct SampleGrid {
    std::vector<double> times;
};

SampleGrid sample_grid(const std::vector<double>& schedule, int samples_per_interval)
{
    SampleGrid grid;
    if (schedule.size() < 2) {
        grid.times = {schedule.empty() ? 0.0 : schedule.front()};
        return grid;
    }
    for (std::size_t k = 1; k < schedule.size(); ++k) {
        const double ta = schedule[k - 1];
        const double tb = schedule[k];
        for (int s = 0; s < samples_per_interval; ++s)
            grid.times.push_back(ta + (tb - ta) * static_cast<double>(s) /
                                          static_cast<double>(samples_per_interval - 1));
    }
    return grid;
}

struct SeparationAtTime {
    double robot_robot;
    double robot_obstacle;
};

SeparationAtTime separations(const PlannedPath& path, const Scenario& sc, double t)
{
    const int n = static_cast<int>(path.robots.size());
    std::vector<Vec> pos(n);
    for (int i = 0; i < n; ++i)
        pos[i] = path_point(path.robots[i], t);
    double rr = std::numeric_limits<double>::infinity();
    double ro = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j)
            rr = std::min(rr, distance(pos[i], pos[j]));
        for (const Vec& o : sc.obstacles())
            ro = std::min(ro, distance(pos[i], o));
    }
    return {rr, ro};
}

ValidationReport validate_impl(const PlannedPath& path, const Scenario& sc,
                               int samples_per_interval, double tolerance, double node_tolerance,
                               bool parallel)
{
    if (samples_per_interval < 2)
        throw std::invalid_argument("samples_per_interval must be >= 2");
    if (path.robots.size() != static_cast<std::size_t>(sc.spec().robot_count()))
        throw std::invalid_argument("path and scenario disagree on the robot count");
    for (const auto& bps : path.robots) {
        if (bps.empty())
            throw std::invalid_argument("a robot trajectory has no breakpoints");
        for (const Breakpoint& bp : bps)
            if (bp.x.size() != static_cast<std::size_t>(sc.spec().dimension()))
                throw std::invalid_argument("breakpoint dimension does not match the scenario");
    }
    ValidationReport rep;
    rep.scene_scale = sc.scene_scale();
    rep.samples_per_interval = samples_per_interval;
    rep.tolerance = tolerance;
    rep.node_tolerance = node_tolerance;

    const ProblemSpec& spec = sc.spec();
    const int n = spec.robot_count();
    double max_node = 0, max_stopped = 0;
    for (std::size_t k = 1; k <= path.schedule.size(); ++k) {
        const double t = path.schedule[k - 1];
        for (int i = 0; i < n; ++i) {
            const auto& list = sc.targets()[i];
            const Vec& want = list[std::min<std::size_t>(k, list.size()) - 1];
            const double err = distance(path_point(path.robots[i], t), want);
            if (k > list.size())
                max_stopped = std::max(max_stopped, err);
            else
                max_node = std::max(max_node, err);
        }
    }
    rep.max_node_interpolation_error = max_node;
    rep.max_stopped_node_violation = max_stopped;

    const SampleGrid grid = sample_grid(path.schedule, samples_per_interval);
    const long count = static_cast<long>(grid.times.size());
    double min_rr = std::numeric_limits<double>::infinity();
    double min_ro = std::numeric_limits<double>::infinity();
    if (parallel) {
#pragma omp parallel for reduction(min : min_rr, min_ro) schedule(static)
        for (long s = 0; s < count; ++s) {
            const SeparationAtTime sep = separations(path, sc, grid.times[s]);
            min_rr = std::min(min_rr, sep.robot_robot);
            min_ro = std::min(min_ro, sep.robot_obstacle);
        }
    } else {
        for (long s = 0; s < count; ++s) {
            const SeparationAtTime sep = separations(path, sc, grid.times[s]);
            min_rr = std::min(min_rr, sep.robot_robot);
            min_ro = std::min(min_ro, sep.robot_obstacle);
        }
    }
    rep.min_robot_robot = n > 1 ? min_rr : std::numeric_limits<double>::infinity();
    rep.min_robot_obstacle = min_ro;

    const double dist_floor = tolerance * rep.scene_scale;
    const double node_ceiling = node_tolerance * rep.scene_scale;
    rep.pass = (n < 2 || rep.min_robot_robot > dist_floor) && rep.min_robot_obstacle > dist_floor &&
               rep.max_node_interpolation_error <= node_ceiling &&
               rep.max_stopped_node_violation <= node_ceiling;
    return rep;
}

} // namespace

ValidationReport validate(const PlannedPath& path, const Scenario& sc, int samples_per_interval,
                          double tolerance, double node_tolerance)
{
    return validate_impl(path, sc, samples_per_interval, tolerance, node_tolerance, true);
}

ValidationReport validate_reference(const PlannedPath& path, const Scenario& sc,
                                    int samples_per_interval, double tolerance,
                                    double node_tolerance)
{
    return validate_impl(path, sc, samples_per_interval, tolerance, node_tolerance, false);
}

} // namespace seqtc
