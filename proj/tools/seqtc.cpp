#include "CLI11.hpp"

#include "seqtc/io.hpp"
#include "seqtc/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

using namespace seqtc;

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<int> parse_list(const std::string& text, const std::string& flag)
{
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        std::size_t dots = item.find("..");
        try {
            if (dots != std::string::npos) {
                int lo = std::stoi(item.substr(0, dots));
                int hi = std::stoi(item.substr(dots + 2));
                for (int v = lo; v <= hi; ++v)
                    out.push_back(v);
            } else {
                out.push_back(std::stoi(item));
            }
        } catch (const std::exception&) {
            throw std::invalid_argument(flag + ": cannot parse \"" + item + "\"");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (out.empty())
        throw std::invalid_argument(flag + ": empty list");
    return out;
}

std::string coeff_string(const Int& c)
{
    return (c < 0 ? "-" : "+") + (c < 0 ? Int(-c) : c).str();
}

void print_tc_text(const TcReport& rep)
{
    std::cout << rep.spec.to_string() << "\n";
    std::cout << "upper bound:     " << rep.upper << "\n";
    std::cout << "dimension bound: < " << rep.hdim_numerator << "/" << rep.hdim_denominator << "\n";
    std::cout << "lower bound:     " << rep.lower << "  (cup-length witness, "
              << rep.witness_factor_count << " factors, " << rep.witness_terms
              << " basis terms)\n";
    std::cout << "exact:           " << rep.exact << "\n";
}

int cmd_tc(int d, int m, const std::string& rlist, const std::string& format)
{
    ProblemSpec spec = ProblemSpec::create(d, m, parse_list(rlist, "--r"));
    TcReport rep = tc_exact(spec);
    if (format == "structured")
        std::cout << tc_report_to_json(rep).dump(2) << "\n";
    else
        print_tc_text(rep);
    return 0;
}

int cmd_witness(int d, int m, const std::string& rlist, const std::string& variant, bool dump,
                const std::string& format)
{
    ProblemSpec spec = ProblemSpec::create(d, m, parse_list(rlist, "--r"));
    Witness w;
    if (variant == "section3")
        w = section3_witness(spec);
    else if (spec.parity() == Parity::even_degree)
        w = odd_witness(spec);
    else
        w = even_witness(spec);

    if (format == "structured") {
        nlohmann::json doc;
        doc["d"] = spec.dimension();
        doc["m"] = spec.obstacle_count();
        doc["r"] = spec.stops();
        doc["variant"] = variant;
        doc["factor_count"] = w.factor_count;
        doc["nonzero"] = !w.product.is_zero();
        doc["term_count"] = w.product.terms().size();
        nlohmann::json jf = nlohmann::json::array();
        for (const ParamElement& f : w.factors)
            jf.push_back(to_string(f));
        doc["factors"] = std::move(jf);
        if (dump) {
            nlohmann::json jt = nlohmann::json::array();
            for (const auto& [mono, coeff] : w.product.terms())
                jt.push_back({{"coefficient", coeff.str()}, {"monomial", to_string(mono)}});
            doc["terms"] = std::move(jt);
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << spec.to_string() << "  variant=" << variant << "\n";
        std::cout << "factors (" << w.factor_count << "):\n";
        for (const ParamElement& f : w.factors)
            std::cout << "  " << to_string(f) << "\n";
        std::cout << "product: " << w.product.terms().size() << " basis terms, "
                  << (w.product.is_zero() ? "ZERO" : "nonzero") << "\n";
        if (dump)
            for (const auto& [mono, coeff] : w.product.terms())
                std::cout << "  " << coeff_string(coeff) << "  " << to_string(mono) << "\n";
    }
    return 0;
}

int cmd_plan(const std::string& scenario_file, const std::string& out_file,
             const std::string& csv_file, int samples)
{
    PlannerOptions opts;
    Scenario sc = load_scenario(scenario_file, &opts);
    PlannedPath path = plan(sc, opts);
    nlohmann::json doc = path_to_json(path);
    if (out_file.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_file);
        if (!out)
            throw std::runtime_error(out_file + ": cannot open for writing");
        out << doc.dump(2) << "\n";
        std::cout << "path written to " << out_file << " (cell c=" << path.cell.c
                  << " mu=" << path.cell.mu << " nu=" << path.cell.nu
                  << " delta_C=" << fmt(path.delta) << ")\n";
    }
    if (!csv_file.empty()) {
        std::ofstream csv(csv_file);
        if (!csv)
            throw std::runtime_error(csv_file + ": cannot open for writing");
        write_csv_samples(csv, path, samples);
    }
    return 0;
}

void print_report_text(const ValidationReport& rep)
{
    auto metric = [](double v) { return std::isfinite(v) ? fmt(v) : std::string("n/a"); };
    std::cout << "min robot-robot distance:     " << metric(rep.min_robot_robot) << "\n";
    std::cout << "min robot-obstacle distance:  " << metric(rep.min_robot_obstacle) << "\n";
    std::cout << "max node interpolation error: " << fmt(rep.max_node_interpolation_error) << "\n";
    std::cout << "max stopped-node violation:   " << fmt(rep.max_stopped_node_violation) << "\n";
    std::cout << "scene scale " << fmt(rep.scene_scale) << ", " << rep.samples_per_interval
              << " samples/interval, tolerance " << fmt(rep.tolerance) << "\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
}

int cmd_validate(const std::string& path_file, const std::string& scenario_file, int samples,
                 double tol_override, const std::string& format)
{
    PlannerOptions opts;
    Scenario sc = load_scenario(scenario_file, &opts);
    PlannedPath path = load_path(path_file);
    const double tol = tol_override >= 0 ? tol_override : opts.tolerance;
    ValidationReport rep = validate(path, sc, samples, tol);
    if (format == "structured")
        std::cout << report_to_json(rep).dump(2) << "\n";
    else
        print_report_text(rep);
    return rep.pass ? 0 : 1;
}

int cmd_cells(const std::string& scenario_file, const std::string& format)
{
    PlannerOptions opts;
    Scenario sc = load_scenario(scenario_file, &opts);
    ProjectionFrame frame = projection_frame(sc);
    const double tau = opts.tau_proj < 0 ? 1e-9 * sc.scene_scale() : opts.tau_proj;
    CellDescriptor cell = classify_cell(sc, frame, tau);
    if (format == "structured") {
        std::cout << cell_to_json(cell).dump(2) << "\n";
    } else {
        std::cout << "c=" << cell.c << " mu=" << cell.mu << " nu=" << cell.nu << "\n";
        std::cout << "sigma:";
        for (const auto& cls : cell.sigma) {
            std::cout << " {";
            for (std::size_t k = 0; k < cls.size(); ++k)
                std::cout << (k ? "," : "") << cls[k];
            std::cout << "}";
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_sweep(const std::string& dlist, const std::string& mlist, const std::string& nlist,
              int rmax, int certify, std::uint64_t seed, const std::string& format)
{
    SweepRanges ranges;
    ranges.dims = parse_list(dlist, "--d");
    ranges.obstacle_counts = parse_list(mlist, "--m");
    ranges.robot_counts = parse_list(nlist, "--n");
    ranges.r_max = rmax;
    std::vector<ProblemSpec> specs = enumerate_specs(ranges);
    std::vector<SpecCheck> checks = check_specs(specs);
    int failures = 0;
    for (std::size_t idx = 0; idx < checks.size(); ++idx) {
        SpecCheck& c = checks[idx];
        /* Optional planner certification: plan and validate seeded random
         * scenarios shaped like this spec. */
        for (int t = 0; c.ok && t < certify; ++t) {
            PlannerMode mode = c.spec.dimension() % 2 == 0 && t % 2 == 1
                                   ? PlannerMode::even_optimized
                                   : PlannerMode::general;
            Scenario sc = random_scenario(c.spec.dimension(), c.spec.obstacle_count(),
                                          c.spec.stops(), mode, seed + 7919 * idx + t, t % 3 == 0);
            ValidationReport rep = validate(plan(sc), sc, 512, 1e-7);
            if (!rep.pass) {
                c.ok = false;
                c.failure = "scenario certification failed (trial " + std::to_string(t) + ")";
            }
        }
        if (!c.ok)
            ++failures;
        if (format == "structured") {
            nlohmann::json doc = c.ok ? tc_report_to_json(c.report) : nlohmann::json{};
            doc["ok"] = c.ok;
            if (!c.ok)
                doc["failure"] = c.failure;
            std::cout << doc.dump() << "\n";
        } else {
            if (c.ok)
                std::cout << "ok   " << c.report.to_line() << "\n";
            else
                std::cout << "FAIL " << c.spec.to_string() << ": " << c.failure << "\n";
        }
    }
    std::cout << (failures == 0 ? "sweep passed: " : "sweep FAILED: ") << specs.size() - failures
              << "/" << specs.size() << " specs ok\n";
    return failures == 0 ? 0 : 1;
}

int cmd_selftest(std::uint64_t seed)
{
    int failures = 0;
    auto suite = [&failures](const std::string& name, const std::string& error) {
        if (error.empty()) {
            std::cout << "ok   " << name << "\n";
        } else {
            std::cout << "FAIL " << name << ": " << error << "\n";
            ++failures;
        }
    };

    /* Arnold relation identities, both parities, N <= 6. */
    {
        std::string err;
        for (int parity_case = 0; parity_case < 2 && err.empty(); ++parity_case) {
            Parity parity = parity_case == 0 ? Parity::even_degree : Parity::odd_degree;
            const int N = 6;
            for (int i = 1; i <= N && err.empty(); ++i)
                for (int j = i + 1; j <= N && err.empty(); ++j) {
                    auto w = [&](int a, int b) {
                        return AlgebraElement::generator(a, b, N, parity);
                    };
                    if (!multiply(w(i, j), w(i, j)).is_zero())
                        err = "square of a generator is nonzero";
                    for (int p = j + 1; p <= N && err.empty(); ++p) {
                        AlgebraElement lhs = multiply(w(i, p), w(j, p));
                        AlgebraElement rhs = multiply(w(i, j), w(j, p)) - multiply(w(i, j), w(i, p));
                        if (!(lhs == rhs))
                            err = "three-term relation fails";
                    }
                }
        }
        suite("arnold relations", err);
    }

    /* Random associativity / distributivity. */
    {
        std::mt19937_64 rng(seed);
        std::string err;
        for (int trial = 0; trial < 60 && err.empty(); ++trial) {
            const int N = 4 + static_cast<int>(rng() % 3);
            Parity parity = rng() % 2 == 0 ? Parity::even_degree : Parity::odd_degree;
            auto random_element = [&]() {
                Monomial word;
                int len = static_cast<int>(rng() % 3) + 1;
                for (int k = 0; k < len; ++k) {
                    int j = 2 + static_cast<int>(rng() % (N - 1));
                    int i = 1 + static_cast<int>(rng() % (j - 1));
                    word.push_back(BaseGenerator(i, j));
                }
                return straighten(word, N, parity);
            };
            AlgebraElement a = random_element(), b = random_element(), c = random_element();
            if (!(multiply(multiply(a, b), c) == multiply(a, multiply(b, c))))
                err = "associativity fails";
            else if (!(multiply(a, b + c) == multiply(a, b) + multiply(a, c)))
                err = "distributivity fails";
        }
        suite("associativity/distributivity", err);
    }

    /* Parametrized algebra: canonical soundness and basis membership. */
    {
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
        std::string err;
        for (int trial = 0; trial < 80 && err.empty(); ++trial) {
            int m = 2 + static_cast<int>(rng() % 2);
            int n = 1 + static_cast<int>(rng() % 2);
            std::vector<int> stops;
            for (int i = 0; i < n; ++i)
                stops.push_back(1 + static_cast<int>(rng() % 3));
            int d = 2 + static_cast<int>(rng() % 2);
            ProblemSpec spec = ProblemSpec::create(d, m, stops);
            ParamElement prod = ParamElement::unit(spec);
            int len = 2 + static_cast<int>(rng() % 3);
            for (int k = 0; k < len; ++k) {
                int j = 2 + static_cast<int>(rng() % (spec.points() - 1));
                int i = 1 + static_cast<int>(rng() % (j - 1));
                int s = 1 + static_cast<int>(rng() % spec.slot_count());
                prod = prod * ParamElement::generator(spec, s, i, j);
            }
            for (const auto& [mono, coeff] : prod.terms())
                if (!is_basis_monomial(mono, spec)) {
                    err = "non-basis term in a reduced product over " + spec.to_string();
                    break;
                }
        }
        suite("slotted reduction basis soundness", err);
    }

    /* Kernel generators vanish under the diagonal restriction. */
    {
        std::string err;
        for (const auto& stops : {std::vector<int>{2, 3}, {1, 2}, {3}, {1, 1}}) {
            for (int d = 2; d <= 3; ++d) {
                ProblemSpec spec = ProblemSpec::create(d, 2, stops);
                for (const ParamElement& g : kernel_generators(spec))
                    if (!diagonal_image(g).is_zero()) {
                        err = "kernel generator survives the diagonal restriction";
                        break;
                    }
            }
        }
        suite("diagonal kernel generators", err);
    }

    /* Closed-form identities over a small sweep. */
    {
        SweepRanges ranges;
        ranges.dims = {2, 3, 4, 5};
        ranges.obstacle_counts = {2, 3};
        ranges.robot_counts = {1, 2};
        ranges.r_max = 2;
        std::string err;
        for (const SpecCheck& c : check_specs(enumerate_specs(ranges)))
            if (!c.ok) {
                err = c.spec.to_string() + ": " + c.failure;
                break;
            }
        suite("tc identities (mini sweep)", err);
    }

    /* Planner certification on seeded scenarios. */
    {
        std::string err;
        int case_id = 0;
        for (int mode_case = 0; mode_case < 2 && err.empty(); ++mode_case) {
            PlannerMode mode = mode_case == 0 ? PlannerMode::general : PlannerMode::even_optimized;
            for (int k = 0; k < 6 && err.empty(); ++k, ++case_id) {
                int d = mode == PlannerMode::even_optimized ? 2 : (k % 2 == 0 ? 2 : 3);
                std::vector<int> stops = k % 3 == 0 ? std::vector<int>{2}
                                         : k % 3 == 1 ? std::vector<int>{1, 2}
                                                      : std::vector<int>{2, 3};
                Scenario sc = random_scenario(d, 2 + k % 2, stops, mode,
                                              seed + 1000 * case_id, k % 2 == 1);
                PlannedPath path = plan(sc, {});
                ValidationReport rep = validate(path, sc, 512, 1e-7);
                if (!rep.pass)
                    err = "scenario " + std::to_string(case_id) + " failed validation";
            }
        }
        suite("planner certification", err);
    }

    std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"sequential parametrized topological complexity of the obstacle fibration: "
                 "exact values, cup-length witnesses, and certified multi-robot plans"};
    app.require_subcommand(1);

    int d = 3, m = 2, rmax = 3, samples_plan = 33, samples_validate = 2048;
    double tol_override = -1;
    std::uint64_t seed = 1;
    std::string rlist, format = "text", variant = "prop";
    std::string scenario_file, path_file, out_file, csv_file;
    std::string dlist = "3", mlist = "2", nlist = "1..2";
    bool dump = false;

    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "structured"}));
    };

    CLI::App* tc = app.add_subcommand("tc", "exact TC value with witness data");
    tc->add_option("--d", d, "ambient dimension")->required();
    tc->add_option("--m", m, "obstacle count")->required();
    tc->add_option("--r", rlist, "target counts, e.g. 2,3")->required();
    add_format(tc);

    CLI::App* wit = app.add_subcommand("witness", "cup-length witness expansion");
    wit->add_option("--d", d, "ambient dimension")->required();
    wit->add_option("--m", m, "obstacle count")->required();
    wit->add_option("--r", rlist, "target counts")->required();
    wit->add_option("--variant", variant, "witness variant")
        ->check(CLI::IsMember({"prop", "section3"}));
    wit->add_flag("--dump", dump, "list every basis monomial with its coefficient");
    add_format(wit);

    CLI::App* planc = app.add_subcommand("plan", "plan a scenario file");
    planc->add_option("scenario", scenario_file, "scenario JSON file")->required();
    planc->add_option("--out", out_file, "write the path document here (default stdout)");
    planc->add_option("--csv", csv_file, "also emit sampled trajectories as CSV");
    planc->add_option("--samples", samples_plan, "CSV samples per interval");

    CLI::App* val = app.add_subcommand("validate", "validate a planned path against its scenario");
    val->add_option("path", path_file, "path JSON file")->required();
    val->add_option("scenario", scenario_file, "scenario JSON file")->required();
    val->add_option("--samples", samples_validate, "samples per interval");
    val->add_option("--tol", tol_override, "separation tolerance (relative to scene scale)");
    add_format(val);

    CLI::App* cells = app.add_subcommand("cells", "cell descriptor of a scenario");
    cells->add_option("scenario", scenario_file, "scenario JSON file")->required();
    add_format(cells);

    CLI::App* self = app.add_subcommand("selftest", "run the invariant suites");
    self->add_option("--seed", seed, "random seed");

    int certify = 0;
    CLI::App* sweep = app.add_subcommand("sweep", "closed-form identities over parameter ranges");
    sweep->add_option("--d", dlist, "dimensions, e.g. 3,5");
    sweep->add_option("--m", mlist, "obstacle counts");
    sweep->add_option("--n", nlist, "robot counts, e.g. 1..3");
    sweep->add_option("--rmax", rmax, "largest target count");
    sweep->add_option("--certify", certify, "also plan/validate this many scenarios per spec");
    sweep->add_option("--seed", seed, "scenario generation seed");
    add_format(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tc->parsed())
            return cmd_tc(d, m, rlist, format);
        if (wit->parsed())
            return cmd_witness(d, m, rlist, variant, dump, format);
        if (planc->parsed())
            return cmd_plan(scenario_file, out_file, csv_file, samples_plan);
        if (val->parsed())
            return cmd_validate(path_file, scenario_file, samples_validate, tol_override, format);
        if (cells->parsed())
            return cmd_cells(scenario_file, format);
        if (self->parsed())
            return cmd_selftest(seed);
        if (sweep->parsed())
            return cmd_sweep(dlist, mlist, nlist, rmax, certify, seed, format);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
