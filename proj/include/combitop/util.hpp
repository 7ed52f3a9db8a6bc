#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace combitop {

// Raised when an operation would need cells beyond a truncation's trusted range.
struct trust_error : std::runtime_error {
    explicit trust_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed input data (bad complex, bad JSON payload shape, ...).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure; any throw of this is a bug or a falsified check.
struct check_error : std::logic_error {
    explicit check_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw check_error(msg);
}

template <typename T>
std::string join(const std::vector<T>& xs, const std::string& sep) {
    std::ostringstream os;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) os << sep;
        os << xs[i];
    }
    return os.str();
}

inline int env_thread_count() {
    if (const char* s = std::getenv("COMBITOP_THREADS")) {
        int n = std::atoi(s);
        if (n >= 1) return n;
    }
    return 1;
}

// Deterministic parallel map over [0, n): results are merged in index order, so
// output does not depend on the thread count.
template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
    int threads = env_thread_count();
    if (threads <= 1 || n < 64) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace combitop
