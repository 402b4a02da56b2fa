#include "wnh/parallel/batch.hpp"

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wnh {
namespace {

template <class Out, class Fn>
std::vector<Out> run(std::size_t count, bool parallel, Fn fn) {
    std::vector<Out> out(count);
    if (!parallel) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::exception_ptr first;
    std::mutex m;
    const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(m);
            if (!first) first = std::current_exception();
        }
    }
    if (first) std::rethrow_exception(first);
    return out;
}

}  // namespace

std::vector<ClassResult> schouten_batch(const Operator& h, const Operator& k, const std::vector<CovectorTriple>& triples,
                                        bool parallel) {
    return run<ClassResult>(triples.size(), parallel, [&](std::size_t i) {
        const auto& t = triples[i];
        return schouten_eval(h, k, t[0], t[1], t[2]);
    });
}

std::vector<Status> symplectic_batch(const std::vector<Operator>& ops, bool parallel) {
    return run<Status>(ops.size(), parallel, [&](std::size_t i) { return wnl_symplectic_certificate(ops[i]).status; });
}

std::vector<ExprVec> euler_batch(const std::vector<Expr>& densities, std::size_t n, bool parallel) {
    return run<ExprVec>(densities.size(), parallel, [&](std::size_t i) { return euler(densities[i], n); });
}

int batch_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace wnh
