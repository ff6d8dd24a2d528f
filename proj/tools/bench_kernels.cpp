// Timing comparison between the OpenMP kernels and their serial reference
// implementations.

#include <chrono>
#include <cstdio>

#include "lassohet/linalg.hpp"
#include "lassohet/model.hpp"

using namespace lassohet;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
  // warm-up
  f();
  auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() /
         reps;
}

}  // namespace

int main() {
  std::printf("%-28s %10s %10s %8s\n", "kernel", "omp (ms)", "serial (ms)",
              "speedup");
  for (std::size_t dim : {128, 256, 512}) {
    Matrix a = gen_iid_design(dim, dim, 11);
    Matrix b = gen_iid_design(dim, dim, 13);
    volatile double sink = 0.0;
    double omp_ms = time_ms([&] { sink = matmul(a, b)(0, 0); }, 3);
    double ser_ms = time_ms([&] { sink = matmul_serial(a, b)(0, 0); }, 3);
    (void)sink;
    char name[64];
    std::snprintf(name, sizeof(name), "matmul %zux%zu", dim, dim);
    std::printf("%-28s %10.2f %10.2f %7.2fx\n", name, omp_ms, ser_ms,
                ser_ms / omp_ms);
  }

  // agreement check: the parallel kernel must be bitwise identical
  Matrix a = gen_iid_design(200, 300, 17);
  Matrix b = gen_iid_design(300, 150, 19);
  Matrix c1 = matmul(a, b);
  Matrix c2 = matmul_serial(a, b);
  for (std::size_t i = 0; i < c1.rows(); ++i) {
    for (std::size_t j = 0; j < c1.cols(); ++j) {
      if (c1(i, j) != c2(i, j)) {
        std::printf("MISMATCH at (%zu, %zu)\n", i, j);
        return 1;
      }
    }
  }
  std::printf("omp/serial results bitwise identical\n");
  return 0;
}
