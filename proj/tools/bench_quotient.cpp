// Timing probe for the quotient-ring elimination at its largest working size.
#include <chrono>
#include <cstdio>

#include "meu/oracles.hpp"

using namespace meu;
using clk = std::chrono::steady_clock;

static double secs(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

int main(int argc, char** argv) {
    char type = argc > 1 ? argv[1][0] : 'E';
    int rank = argc > 2 ? std::atoi(argv[2]) : 8;
    auto rs = build_root_system(type, rank);
    for (int d = rank - 1; d <= rank; ++d) {
        auto t0 = clk::now();
        const auto& qs = quotient_space(rs, d);
        std::printf("%c%d d=%d: %zu columns, dim %lld, %.2fs\n", type, rank, d,
                    qs.monomials.size(), static_cast<long long>(qs.dimension),
                    secs(t0));
    }
    auto t0 = clk::now();
    std::vector<int> ones(rank, 1);
    Rat v = mixed_eulerian_quotient(rs, ones);
    std::printf("all-ones value %s in %.2fs\n", to_string(v).c_str(), secs(t0));
    return 0;
}
