// Times the parallel multiplication kernels against their serial reference
// and confirms the outputs agree bit for bit. Run with --size/--reps to scale
// the workload.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mvgdp/matrix.hpp"

using namespace mvgdp;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = unit(gen);
    return m;
}

struct BenchRow {
    std::string name;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    double max_diff = 0.0;
};

// Best-of-reps wall time; the first untimed call warms caches.
template <typename F>
double time_ms(F&& f, int reps) {
    f();
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

BenchRow bench(const std::string& name, const std::function<Matrix()>& serial,
               const std::function<Matrix()>& parallel, int reps) {
    BenchRow row{name, 0.0, 0.0, 0.0};
    row.serial_ms = time_ms([&] { (void)serial(); }, reps);
    row.parallel_ms = time_ms([&] { (void)parallel(); }, reps);
    row.max_diff = max_abs(sub(serial(), parallel()));
    return row;
}

} // namespace

int main(int argc, char** argv) {
    std::size_t size = 384;
    int reps = 3;
    std::uint64_t seed = 12345;
    CLI::App app{"Benchmark the parallel kernels against the serial reference"};
    app.add_option("--size", size, "square kernel dimension");
    app.add_option("--reps", reps, "timed repetitions (best-of)");
    app.add_option("--seed", seed, "input generator seed");
    CLI11_PARSE(app, argc, argv);

    std::mt19937_64 gen(seed);
    const Matrix a = random_matrix(size, size, gen);
    const Matrix b = random_matrix(size, size, gen);
    const std::size_t kdim = std::max<std::size_t>(2, size / 16);
    const Matrix ka = random_matrix(kdim, kdim, gen);
    const Matrix kb = random_matrix(kdim, kdim, gen);
    std::vector<double> d(size);
    std::uniform_real_distribution<double> pos(0.5, 2.0);
    for (double& v : d) v = pos(gen);

    const std::vector<BenchRow> rows = {
        bench("matmul", [&] { return ref::matmul(a, b); }, [&] { return matmul(a, b); },
              reps),
        bench("matmul_nt", [&] { return ref::matmul_nt(a, b); },
              [&] { return matmul_nt(a, b); }, reps),
        bench("kron", [&] { return ref::kron(ka, kb); }, [&] { return kron(ka, kb); },
              reps),
        bench("congruence_diag", [&] { return ref::congruence_diag(a, d); },
              [&] { return congruence_diag(a, d); }, reps),
    };

    std::printf("%-16s %10s %12s %12s %9s %10s\n", "kernel", "size", "serial_ms",
                "parallel_ms", "speedup", "max_diff");
    bool exact = true;
    for (const BenchRow& r : rows) {
        const std::size_t dim = r.name == "kron" ? kdim : size;
        std::printf("%-16s %7zux%-4zu %12.3f %12.3f %8.2fx %10.3g\n", r.name.c_str(), dim,
                    dim, r.serial_ms, r.parallel_ms, r.serial_ms / r.parallel_ms,
                    r.max_diff);
        exact = exact && r.max_diff == 0.0;
    }
    std::printf("bitwise agreement: %s\n", exact ? "yes" : "NO");
    return exact ? 0 : 1;
}
