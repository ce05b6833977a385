// Times the serial reference kernels against their OpenMP variants on
// benchmark-sized inputs and prints a comparison table.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chuasync/coupling.hpp"
#include "chuasync/kernels.hpp"
#include "chuasync/matrix.hpp"
#include "chuasync/rng.hpp"
#include "chuasync/simulate.hpp"
#include "chuasync/topology.hpp"

namespace {

using clock_type = std::chrono::high_resolution_clock;

double time_ms(int repeats, const std::function<void()>& body) {
    body(); // warm up
    const auto begin = clock_type::now();
    for (int r = 0; r < repeats; ++r) body();
    const auto end = clock_type::now();
    return std::chrono::duration<double, std::milli>(end - begin).count() / repeats;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serially\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    // network vector field, dense graph
    {
        const std::size_t n = 256;
        const chuasync::ChuaParams params(15.61, 25.581, 0.0, -1.142, -0.715);
        const chuasync::Topology topo = chuasync::Topology::complete(n);
        const chuasync::NetworkSystem system(params, topo,
                                             chuasync::make_linear_plus_arctan(3.0));
        std::vector<double> x(3 * n), dx(3 * n);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = chuasync::draw_symmetric(7, i);
        const double serial =
            time_ms(20, [&] { system.rhs_serial(x, dx); });
        const double parallel =
            time_ms(20, [&] { system.rhs_parallel(x, dx); });
        report("network rhs (n=256, dense)", serial, parallel);
    }

    // sector violation scan
    {
        const chuasync::SectorCoupling coupling = chuasync::make_linear_plus_arctan(3.0);
        const std::size_t samples = 2'000'000;
        const auto violation = [&](std::size_t i) {
            const double e = 1e3 * chuasync::draw_symmetric(11, i);
            const double ke = coupling.evaluator(e);
            return std::abs(ke) - coupling.k2 * std::abs(e);
        };
        const double serial =
            time_ms(5, [&] { chuasync::kernels::max_scan_serial(samples, violation); });
        const double parallel =
            time_ms(5, [&] { chuasync::kernels::max_scan_parallel(samples, violation); });
        report("sector scan (2e6 samples)", serial, parallel);
    }

    // coupling inequality residual scan
    {
        const chuasync::SectorCoupling coupling = chuasync::make_linear_plus_arctan(3.0);
        const std::size_t pairs = 1'000'000;
        const double serial =
            time_ms(5, [&] { chuasync::check_lemma1(coupling, pairs, 1e3); });
        // check_lemma1 itself runs the parallel kernel; re-measure through the
        // serial scan for the reference column.
        const auto residual = [&](std::size_t i) {
            const double ei = 1e3 * chuasync::draw_symmetric(chuasync::kDefaultSamplingSeed, 2 * i);
            const double ej =
                1e3 * chuasync::draw_symmetric(chuasync::kDefaultSamplingSeed, 2 * i + 1);
            const double lhs =
                std::abs(chuasync::tilde_k(coupling, ei - ej) + chuasync::tilde_k(coupling, ej));
            const double rhs = (coupling.k2 - coupling.k1) * (std::abs(ei) + std::abs(ej));
            return (lhs - rhs) / (1.0 + std::abs(ei) + std::abs(ej));
        };
        const double serial_ref =
            time_ms(5, [&] { chuasync::kernels::max_scan_serial(pairs, residual); });
        report("lemma residual (1e6 pairs)", serial_ref, serial);
    }

    // comparison-system matvec
    {
        const std::size_t n = 1024;
        chuasync::Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = chuasync::draw_symmetric(3, i * n + j);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = chuasync::draw_symmetric(5, i);
        const double serial = time_ms(50, [&] { chuasync::matvec_serial(m, x, y); });
        const double parallel = time_ms(50, [&] { chuasync::matvec_parallel(m, x, y); });
        report("matvec (1024x1024)", serial, parallel);
    }

    // end-to-end short network integration
    {
        const std::size_t n = 128;
        const chuasync::ChuaParams params(15.61, 25.581, 0.0, -1.142, -0.715);
        const chuasync::Topology topo = chuasync::Topology::complete(n);
        const chuasync::SectorCoupling coupling = chuasync::make_linear_plus_arctan(3.0);
        const chuasync::NetworkState init = chuasync::seeded_initial_states(n, 1, 1.0);
        const double serial = time_ms(3, [&] {
            chuasync::simulate_network(params, topo, coupling, init, 1e-3, 0.2, false);
        });
        const double parallel = time_ms(3, [&] {
            chuasync::simulate_network(params, topo, coupling, init, 1e-3, 0.2, true);
        });
        report("rk4 network (n=128, t=0.2)", serial, parallel);
    }
    return 0;
}
