#include "seqtc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace seqtc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what)
{
    throw ParseError(field + ": " + what);
}

const json& require(const json& doc, const std::string& field)
{
    if (!doc.is_object())
        fail(field, "enclosing value is not an object");
    auto it = doc.find(field);
    if (it == doc.end())
        fail(field, "missing required field");
    return *it;
}

Vec read_point(const json& v, const std::string& field, int d)
{
    if (!v.is_array() || static_cast<int>(v.size()) != d)
        fail(field, "expected an array of " + std::to_string(d) + " numbers");
    Vec p(d);
    for (int k = 0; k < d; ++k) {
        if (!v[k].is_number())
            fail(field, "coordinate " + std::to_string(k + 1) + " is not a number");
        p[k] = v[k].get<double>();
    }
    return p;
}

json point_to_json(const Vec& p)
{
    json a = json::array();
    for (double c : p)
        a.push_back(c);
    return a;
}

double finite_or(double v, double fallback)
{
    return std::isfinite(v) ? v : fallback;
}

json metric(double v)
{
    if (std::isfinite(v))
        return v;
    return nullptr; // no robot pair to measure
}

} // namespace

Scenario scenario_from_json(const json& doc, PlannerOptions* options)
{
    const json& jd = require(doc, "d");
    if (!jd.is_number_integer())
        fail("d", "expected an integer");
    const int d = jd.get<int>();
    if (d < 2)
        fail("d", "dimension must be >= 2");

    PlannerMode mode = PlannerMode::general;
    if (doc.contains("mode")) {
        const json& jm = doc["mode"];
        if (!jm.is_string())
            fail("mode", "expected \"general\" or \"even\"");
        const std::string ms = jm.get<std::string>();
        if (ms == "general")
            mode = PlannerMode::general;
        else if (ms == "even")
            mode = PlannerMode::even_optimized;
        else
            fail("mode", "unknown mode \"" + ms + "\"");
    }

    const json& jo = require(doc, "obstacles");
    if (!jo.is_array() || jo.size() < 2)
        fail("obstacles", "expected an array of at least two points");
    std::vector<Vec> obstacles;
    for (std::size_t a = 0; a < jo.size(); ++a)
        obstacles.push_back(read_point(jo[a], "obstacles[" + std::to_string(a) + "]", d));

    const json& jr = require(doc, "robots");
    if (!jr.is_array() || jr.empty())
        fail("robots", "expected a non-empty array");
    std::vector<std::vector<Vec>> targets;
    for (std::size_t i = 0; i < jr.size(); ++i) {
        const std::string rf = "robots[" + std::to_string(i) + "]";
        const json& jt = require(jr[i], "targets");
        if (!jt.is_array() || jt.empty())
            fail(rf + ".targets", "expected a non-empty array of points");
        std::vector<Vec> list;
        for (std::size_t k = 0; k < jt.size(); ++k)
            list.push_back(read_point(jt[k], rf + ".targets[" + std::to_string(k) + "]", d));
        targets.push_back(std::move(list));
    }

    if (options && doc.contains("options")) {
        const json& op = doc["options"];
        if (!op.is_object())
            fail("options", "expected an object");
        if (op.contains("tau_proj")) {
            if (!op["tau_proj"].is_number())
                fail("options.tau_proj", "expected a number");
            options->tau_proj = op["tau_proj"].get<double>();
        }
        if (op.contains("epsilon_connector")) {
            if (!op["epsilon_connector"].is_number())
                fail("options.epsilon_connector", "expected a number");
            options->epsilon_connector = op["epsilon_connector"].get<double>();
            if (!(options->epsilon_connector > 0 && options->epsilon_connector < 0.5))
                fail("options.epsilon_connector", "must lie in (0, 1/2)");
        }
        if (op.contains("tolerance")) {
            if (!op["tolerance"].is_number())
                fail("options.tolerance", "expected a number");
            options->tolerance = op["tolerance"].get<double>();
        }
    }

    try {
        return Scenario::create(d, mode, std::move(obstacles), std::move(targets));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
}

Scenario load_scenario(const std::string& file, PlannerOptions* options)
{
    std::ifstream in(file);
    if (!in)
        throw ParseError(file + ": cannot open file");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ParseError(file + ": " + e.what());
    }
    return scenario_from_json(doc, options);
}

json scenario_to_json(const Scenario& sc)
{
    json doc;
    doc["d"] = sc.spec().dimension();
    doc["mode"] = sc.mode() == PlannerMode::general ? "general" : "even";
    json jo = json::array();
    for (const Vec& o : sc.obstacles())
        jo.push_back(point_to_json(o));
    doc["obstacles"] = std::move(jo);
    json jr = json::array();
    for (const auto& list : sc.targets()) {
        json jt = json::array();
        for (const Vec& z : list)
            jt.push_back(point_to_json(z));
        jr.push_back(json{{"targets", std::move(jt)}});
    }
    doc["robots"] = std::move(jr);
    return doc;
}

json cell_to_json(const CellDescriptor& cell)
{
    json jc;
    jc["c"] = cell.c;
    jc["mu"] = cell.mu;
    jc["nu"] = cell.nu;
    json sigma = json::array();
    for (const auto& cls : cell.sigma) {
        json names = json::array();
        for (const std::string& s : cls)
            names.push_back(s);
        sigma.push_back(std::move(names));
    }
    jc["sigma"] = std::move(sigma);
    return jc;
}

json path_to_json(const PlannedPath& path)
{
    json doc;
    doc["schedule"] = path.schedule;
    json robots = json::array();
    for (const auto& bps : path.robots) {
        json jb = json::array();
        for (const Breakpoint& bp : bps)
            jb.push_back(json{{"t", bp.t}, {"x", point_to_json(bp.x)}});
        robots.push_back(json{{"breakpoints", std::move(jb)}});
    }
    doc["robots"] = std::move(robots);
    doc["cell"] = cell_to_json(path.cell);
    doc["delta_C"] = path.delta;
    return doc;
}

PlannedPath path_from_json(const json& doc)
{
    PlannedPath path;
    const json& js = require(doc, "schedule");
    if (!js.is_array() || js.empty())
        fail("schedule", "expected a non-empty array of times");
    for (const auto& t : js) {
        if (!t.is_number())
            fail("schedule", "times must be numbers");
        path.schedule.push_back(t.get<double>());
    }

    const json& jr = require(doc, "robots");
    if (!jr.is_array() || jr.empty())
        fail("robots", "expected a non-empty array");
    for (std::size_t i = 0; i < jr.size(); ++i) {
        const std::string rf = "robots[" + std::to_string(i) + "]";
        const json& jb = require(jr[i], "breakpoints");
        if (!jb.is_array() || jb.empty())
            fail(rf + ".breakpoints", "expected a non-empty array");
        std::vector<Breakpoint> bps;
        for (std::size_t k = 0; k < jb.size(); ++k) {
            const std::string bf = rf + ".breakpoints[" + std::to_string(k) + "]";
            const json& jt = require(jb[k], "t");
            if (!jt.is_number())
                fail(bf + ".t", "expected a number");
            const json& jx = require(jb[k], "x");
            if (!jx.is_array() || jx.empty())
                fail(bf + ".x", "expected a coordinate array");
            Breakpoint bp;
            bp.t = jt.get<double>();
            bp.x = read_point(jx, bf + ".x", static_cast<int>(jx.size()));
            bps.push_back(std::move(bp));
        }
        path.robots.push_back(std::move(bps));
    }

    if (doc.contains("cell")) {
        const json& jc = doc["cell"];
        path.cell.c = require(jc, "c").get<int>();
        path.cell.mu = require(jc, "mu").get<int>();
        path.cell.nu = require(jc, "nu").get<int>();
        if (jc.contains("sigma"))
            for (const auto& cls : jc["sigma"])
                path.cell.sigma.push_back(cls.get<std::vector<std::string>>());
    }
    if (doc.contains("delta_C"))
        path.delta = doc["delta_C"].get<double>();
    return path;
}

PlannedPath load_path(const std::string& file)
{
    std::ifstream in(file);
    if (!in)
        throw ParseError(file + ": cannot open file");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ParseError(file + ": " + e.what());
    }
    return path_from_json(doc);
}

json report_to_json(const ValidationReport& rep)
{
    json doc;
    doc["min_robot_robot_distance"] = metric(rep.min_robot_robot);
    doc["min_robot_obstacle_distance"] = metric(rep.min_robot_obstacle);
    doc["max_node_interpolation_error"] = rep.max_node_interpolation_error;
    doc["max_stopped_node_violation"] = rep.max_stopped_node_violation;
    doc["scene_scale"] = rep.scene_scale;
    doc["samples_per_interval"] = rep.samples_per_interval;
    doc["tolerance"] = rep.tolerance;
    doc["node_tolerance"] = rep.node_tolerance;
    doc["pass"] = rep.pass;
    return doc;
}

json tc_report_to_json(const TcReport& rep)
{
    json doc;
    doc["d"] = rep.spec.dimension();
    doc["m"] = rep.spec.obstacle_count();
    doc["n"] = rep.spec.robot_count();
    doc["r"] = rep.spec.stops();
    doc["upper"] = rep.upper;
    doc["lower"] = rep.lower;
    doc["exact"] = rep.exact;
    doc["witness_factor_count"] = rep.witness_factor_count;
    doc["witness_nonzero"] = rep.witness_nonzero;
    doc["witness_terms"] = rep.witness_terms;
    doc["hdim_bound"] = {{"numerator", rep.hdim_numerator}, {"denominator", rep.hdim_denominator}};
    return doc;
}

void write_csv_samples(std::ostream& os, const PlannedPath& path, int samples_per_interval)
{
    if (samples_per_interval < 2)
        throw std::invalid_argument("samples_per_interval must be >= 2");
    const int d = path.robots.empty() || path.robots[0].empty()
                      ? 0
                      : static_cast<int>(path.robots[0][0].x.size());
    os << "t,robot";
    for (int k = 1; k <= d; ++k)
        os << ",x" << k;
    os << "\n";

    std::vector<double> times;
    if (path.schedule.size() < 2) {
        times.push_back(path.schedule.empty() ? 0.0 : path.schedule.front());
    } else {
        for (std::size_t k = 1; k < path.schedule.size(); ++k) {
            const double ta = path.schedule[k - 1];
            const double tb = path.schedule[k];
            const int start = k == 1 ? 0 : 1; // avoid duplicating interior nodes
            for (int s = start; s < samples_per_interval; ++s)
                times.push_back(ta + (tb - ta) * static_cast<double>(s) /
                                         static_cast<double>(samples_per_interval - 1));
        }
    }

    char buf[64];
    for (double t : times) {
        for (std::size_t i = 0; i < path.robots.size(); ++i) {
            Vec x = path_point(path.robots[i], t);
            std::snprintf(buf, sizeof buf, "%.17g", finite_or(t, 0.0));
            os << buf << "," << (i + 1);
            for (double c : x) {
                std::snprintf(buf, sizeof buf, "%.17g", c);
                os << "," << buf;
            }
            os << "\n";
        }
    }
}

} // namespace seqtc
