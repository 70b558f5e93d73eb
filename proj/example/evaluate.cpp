// Evaluates the six metrics for two small Gaussian clouds, one slightly shifted.

#include <cstdio>

#include <genpr/metrics.hpp>
#include <genpr/samplers.hpp>

int main() {
    const std::size_t d = 16;
    const auto real = genpr::sample({genpr::SupportFamily::gaussian, 1.0, d}, 1000, {7, 0});
    auto gen = genpr::sample({genpr::SupportFamily::gaussian, 1.0, d}, 1000, {7, 1});
    for (std::size_t i = 0; i < gen.n(); ++i) {
        gen(i, 0) += 0.5;
    }

    const auto report = genpr::evaluate_suite(real, gen, 5);
    std::printf("precision     %.4f\n", report.precision);
    std::printf("recall        %.4f\n", report.recall);
    std::printf("c_precision   %.4f\n", report.c_precision);
    std::printf("c_recall      %.4f\n", report.c_recall);
    std::printf("sym_precision %.4f\n", report.sym_precision);
    std::printf("sym_recall    %.4f\n", report.sym_recall);
}
