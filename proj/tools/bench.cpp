// Compares the OpenMP kernels against their serial references: quartet
// enumeration (fast parallel vs fast single-thread vs the restriction-based
// reference) and the brute-force MAF oracle (sharded vs serial scan).
// Results must agree bit for bit; timings show what the parallel paths buy.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "maf/forest.hpp"
#include "maf/instances.hpp"
#include "maf/lp.hpp"
#include "maf/quartets.hpp"

using namespace maf;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int hardware_threads() {
#ifdef _OPENMP
    static const int n = omp_get_max_threads();   // before any override
    return n;
#else
    return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

template <class F>
double timed(F&& f) {
    double t0 = now_s();
    f();
    return now_s() - t0;
}

void bench_quartets() {
    std::printf("== incompatible quartet enumeration ==\n");

    {
        auto trees = random_instance({20, 2, 424242});
        std::vector<QuartetConstraint> ref, fast;
        double t_ref = timed([&] { ref = incompatible_quartets_reference(trees); });
        double t_fast = timed([&] { fast = incompatible_quartets(trees); });
        std::printf("n=20 t=2 (%zu constraints)\n", fast.size());
        std::printf("  restriction reference (serial)  %8.3f s\n", t_ref);
        std::printf("  distance kernel                 %8.3f s   results %s\n", t_fast,
                    ref == fast ? "equal" : "DIFFER");
    }

    for (int n : {48, 72}) {
        auto trees = random_instance({n, 2, 7777});
        std::vector<QuartetConstraint> serial, parallel;
        set_threads(1);
        double t1 = timed([&] { serial = incompatible_quartets(trees); });
        set_threads(hardware_threads());
        double tp = timed([&] { parallel = incompatible_quartets(trees); });
        std::printf("n=%d t=2 (%zu constraints)\n", n, parallel.size());
        std::printf("  distance kernel, 1 thread      %8.3f s\n", t1);
        std::printf("  distance kernel, %d threads     %8.3f s   speedup %.2fx, results %s\n",
                    hardware_threads(), tp, t1 / tp, serial == parallel ? "equal" : "DIFFER");
    }
}

void bench_oracle() {
    std::printf("== brute-force MAF oracle ==\n");
    for (uint64_t seed : {11ULL, 12ULL}) {
        auto trees = random_instance({11, 2, seed});
        MafResult ser, par;
        double ts = timed([&] { ser = brute_force_maf_serial(trees); });
        set_threads(hardware_threads());
        double tp = timed([&] { par = brute_force_maf(trees); });
        std::printf("n=11 seed=%llu  k=%d |E|=%zu\n", static_cast<unsigned long long>(seed),
                    ser.forest.k(), ser.cut.size());
        std::printf("  serial scan                    %8.3f s\n", ts);
        std::printf("  sharded scan, %d threads        %8.3f s   speedup %.2fx, results %s\n",
                    hardware_threads(), tp, ts / tp,
                    ser.cut == par.cut ? "equal" : "DIFFER");
    }
}

void bench_lp() {
    std::printf("== exact LP on the grid family (single-threaded by design) ==\n");
    for (int ell : {4, 5, 6}) {
        auto [t1, t2] = generate_caterpillar_grid(ell);
        std::vector<PhyloTree> trees{t1, t2};
        LpModel model;
        double t_model = timed([&] { model = build_model(trees); });
        FractionalSolution lp;
        double t_lp = timed([&] { lp = solve_lp(model); });
        std::printf("ell=%d: %zu rows; model %.3f s, exact LP %.3f s, objective %s\n", ell,
                    model.rows.size(), t_model, t_lp, lp.objective.to_fraction_string().c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    std::printf("threads available: %d\n\n", hardware_threads());
    bench_quartets();
    std::printf("\n");
    bench_oracle();
    if (!quick) {
        std::printf("\n");
        bench_lp();
    }
    return 0;
}
