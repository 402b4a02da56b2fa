// Serial reference vs OpenMP batches. Usage: bench_batch [items]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "wnh/parallel/batch.hpp"
#include "wnh/varcalc/calculus.hpp"
#include "wnh/varcalc/frechet.hpp"

using namespace wnh;

namespace {

std::mt19937 rng(42);

Expr random_poly(std::size_t n, int terms) {
    std::uniform_int_distribution<int> field(0, static_cast<int>(n) - 1), order(0, 2), deg(1, 3), coef(1, 5);
    Expr p(0);
    for (int t = 0; t < terms; ++t) {
        Expr m(coef(rng));
        for (int d = deg(rng); d > 0; --d)
            m *= Expr::jet(static_cast<std::uint32_t>(field(rng)), static_cast<std::uint32_t>(order(rng)));
        p += m;
    }
    return p;
}

template <class F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int items = argc > 1 ? std::atoi(argv[1]) : 200;

    std::vector<Expr> dens;
    std::vector<Operator> ops;
    std::vector<CovectorTriple> triples;
    for (int i = 0; i < items; ++i) {
        dens.push_back(random_poly(2, 4));
        ExprVec g{random_poly(2, 2), random_poly(2, 2)};
        Operator gp = frechet(g, 2, Variance::VtoVs);
        ops.push_back(gp - adjoint(gp));
        triples.push_back({ExprVec{random_poly(1, 2)}, ExprVec{random_poly(1, 2)}, ExprVec{random_poly(1, 2)}});
    }
    const Operator d = Operator::d_power(1, 1, Variance::VstoV);
    const Operator d3 = Operator::d_power(1, 3, Variance::VstoV);

    std::printf("threads %d, items %d\n", batch_threads(), items);
    std::vector<ExprVec> e1, e2;
    std::printf("euler      serial %9.1f ms  parallel %9.1f ms\n", time_ms([&] { e1 = euler_batch(dens, 2, false); }),
                time_ms([&] { e2 = euler_batch(dens, 2, true); }));
    std::vector<Status> s1, s2;
    std::printf("symplectic serial %9.1f ms  parallel %9.1f ms\n", time_ms([&] { s1 = symplectic_batch(ops, false); }),
                time_ms([&] { s2 = symplectic_batch(ops, true); }));
    std::vector<ClassResult> c1, c2;
    std::printf("schouten   serial %9.1f ms  parallel %9.1f ms\n",
                time_ms([&] { c1 = schouten_batch(d, d3, triples, false); }),
                time_ms([&] { c2 = schouten_batch(d, d3, triples, true); }));
    bool same = e1 == e2 && s1 == s2 && c1.size() == c2.size();
    for (std::size_t i = 0; same && i < c1.size(); ++i) same = c1[i].is_zero() == c2[i].is_zero();
    std::printf("results %s\n", same ? "identical" : "DIFFER");
    return same ? 0 : 1;
}
