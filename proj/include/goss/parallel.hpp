#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace goss {

/// Worker count from GOSS_THREADS (default 1, clamped to [1, 64]).
unsigned thread_count();

/// out[i] = fn(i) for i < n, computed by up to thread_count() workers over
/// contiguous chunks. The output order is independent of the worker count.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
    std::vector<std::optional<T>> out(n);
    const unsigned workers = std::min<std::size_t>(thread_count(), n);
    auto unwrap = [&] {
        std::vector<T> r;
        r.reserve(n);
        for (auto& x : out) r.push_back(std::move(*x));
        return r;
    };
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i].emplace(fn(i));
        return unwrap();
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) out[i].emplace(fn(i));
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return unwrap();
}

}  // namespace goss
