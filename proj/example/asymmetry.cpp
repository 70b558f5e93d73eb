// Shows precision/recall for a generated sphere slightly inside or outside
// the unit reference sphere, in 2 and 64 dimensions.

#include <cstdio>

#include <genpr/metrics.hpp>
#include <genpr/samplers.hpp>

int main() {
    std::printf("%4s %6s %10s %10s %14s %14s\n", "d", "r", "precision", "recall", "sym_precision", "sym_recall");
    for (const std::size_t d : {2, 64}) {
        for (const double r : {0.75, 1.0, 1.3}) {
            const auto [real, gen] = genpr::scaled_pair(genpr::SupportFamily::sphere_surface, d, r, 2000, {1, d});
            const auto m = genpr::evaluate_suite(real, gen, 5);
            std::printf("%4zu %6.2f %10.4f %10.4f %14.4f %14.4f\n", d, r, m.precision, m.recall, m.sym_precision,
                        m.sym_recall);
        }
    }
}
