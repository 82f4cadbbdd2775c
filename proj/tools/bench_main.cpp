// Compares the OpenMP kernels against their serial reference
// implementations: the exhaustive pseudocodeword scan and the growth-rate
// sweep. Results must match exactly; timings and speedups are printed.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pwg/growth.hpp"
#include "pwg/oracle.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

bool same_curve(const pwg::GrowthCurve& a, const pwg::GrowthCurve& b) {
    return pwg::curve_to_csv(a) == pwg::curve_to_csv(b);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads available: %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n\n");
#endif

    // Exhaustive cone+parity scan, large enough to be worth parallelizing.
    {
        struct Case {
            int k, M;
        };
        for (const Case c : {Case{23, 1}, Case{11, 3}}) {
            const auto H = pwg::ParityCheckMatrix::spc(c.k);
            auto t0 = clock_type::now();
            const auto serial = pwg::enumerate_pseudocodewords_serial(H, c.M);
            const double ts = seconds_since(t0);
            t0 = clock_type::now();
            const auto parallel = pwg::enumerate_pseudocodewords(H, c.M);
            const double tp = seconds_since(t0);
            const bool ok = serial == parallel;
            std::printf("scan spc k=%-2d M=%d  found=%-7zu serial %.3fs  openmp %.3fs  speedup %.2fx  %s\n", c.k,
                        c.M, serial.size(), ts, tp, ts / tp, ok ? "match" : "MISMATCH");
            if (!ok) return 1;
        }
    }

    std::printf("\n");

    // Growth sweep: serial continuation pre-pass + parallel point solves.
    {
        const pwg::EnsembleParams params{3, 6, 2};
        auto t0 = clock_type::now();
        const auto serial = pwg::sweep_serial(params, 0.02, 0.95, 200);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const auto parallel = pwg::sweep(params, 0.02, 0.95, 200);
        const double tp = seconds_since(t0);
        const bool ok = same_curve(serial, parallel);
        std::printf("sweep (3,6) M=2 200 pts      serial %.3fs  openmp %.3fs  speedup %.2fx  %s\n", ts, tp, ts / tp,
                    ok ? "match" : "MISMATCH");
        if (!ok) return 1;
    }
    return 0;
}
