/* Timing comparison of the OpenMP kernels against their serial references:
 * the trajectory validator's sampling loop and the sweep driver. */

#include "seqtc/sweep.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace seqtc;

namespace {

template <typename F> double time_seconds(F&& f)
{
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main()
{
#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled; both columns run serially\n");
#endif

    {
        Scenario sc = random_scenario(3, 3, {3, 3, 3}, PlannerMode::general, 555, false);
        PlannedPath path = plan(sc);
        const int samples = 200000;
        ValidationReport serial_rep, parallel_rep;
        const double t_serial =
            time_seconds([&] { serial_rep = validate_reference(path, sc, samples, 1e-7); });
        const double t_parallel =
            time_seconds([&] { parallel_rep = validate(path, sc, samples, 1e-7); });
        std::printf("validator (%d samples/interval): serial %.3fs, parallel %.3fs, speedup %.2fx\n",
                    samples, t_serial, t_parallel, t_serial / t_parallel);
        std::printf("  results identical: %s\n",
                    serial_rep.min_robot_robot == parallel_rep.min_robot_robot &&
                            serial_rep.min_robot_obstacle == parallel_rep.min_robot_obstacle
                        ? "yes"
                        : "NO");
    }

    {
        SweepRanges ranges;
        ranges.dims = {2, 3, 4, 5};
        ranges.obstacle_counts = {2, 3};
        ranges.robot_counts = {1, 2, 3};
        ranges.r_max = 3;
        std::vector<ProblemSpec> specs = enumerate_specs(ranges);
        std::vector<SpecCheck> serial_out, parallel_out;
        const double t_serial = time_seconds([&] { serial_out = check_specs(specs, false); });
        const double t_parallel = time_seconds([&] { parallel_out = check_specs(specs, true); });
        bool identical = serial_out.size() == parallel_out.size();
        for (std::size_t k = 0; identical && k < serial_out.size(); ++k)
            identical = serial_out[k].ok == parallel_out[k].ok &&
                        serial_out[k].report.to_line() == parallel_out[k].report.to_line();
        std::printf("sweep (%zu specs): serial %.3fs, parallel %.3fs, speedup %.2fx\n", specs.size(),
                    t_serial, t_parallel, t_serial / t_parallel);
        std::printf("  results identical: %s\n", identical ? "yes" : "NO");
    }
    return 0;
}
