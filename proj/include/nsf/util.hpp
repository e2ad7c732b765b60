#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace nsf {

// FNV-1a 64-bit hash; used for configuration digests in output headers.
std::uint64_t fnv1a64(std::string_view s);

std::string to_hex(std::uint64_t v);

// Round-trip decimal formatting ("%.17g"); keeps emitted CSV reproducible
// down to the last bit for identical inputs.
std::string format_double(double x);

// Compensated (Kahan) accumulator for the diagnostics reductions; keeps
// grid integrals accurate enough that conservation drifts measure the
// scheme, not the summation order. Always accumulated sequentially.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Worker count for data-parallel grid loops. Initialized once from the
// NSFMIX_THREADS environment variable; overridable programmatically.
int thread_count();
void set_thread_count(int n);

// Splits [0, n) into contiguous chunks, one per worker, and runs
// fn(begin, end) on each. Writes from different chunks must be disjoint.
// Reductions are never parallelized; they stay in fixed serial order.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace nsf
