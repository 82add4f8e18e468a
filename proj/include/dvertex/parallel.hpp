#pragma once

#include <omp.h>

#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

namespace dvertex {

/// How a per-partition kernel is run. Results are always stored by input
/// index, so both modes produce identical output in identical order.
struct ExecPolicy {
    bool parallel = true;
    int jobs = 0;  // 0: OpenMP default

    static ExecPolicy serial() { return {false, 1}; }
    static ExecPolicy threads(int jobs) { return {true, jobs}; }
};

/// Serial reference: out[i] = f(i).
template <class T, class F>
std::vector<T> map_indices_serial(std::size_t n, F&& f)
{
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
    return out;
}

/// OpenMP kernel: out[i] = f(i), dynamic schedule. The first exception by
/// index is rethrown after the loop.
template <class T, class F>
std::vector<T> map_indices_parallel(std::size_t n, F&& f, int jobs = 0)
{
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < count; ++i) {
        try {
            slots[i].emplace(f(static_cast<std::size_t>(i)));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<T> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

template <class T, class F>
std::vector<T> map_indices(std::size_t n, F&& f, const ExecPolicy& policy)
{
    if (!policy.parallel || n < 2) return map_indices_serial<T>(n, f);
    return map_indices_parallel<T>(n, f, policy.jobs);
}

}  // namespace dvertex
