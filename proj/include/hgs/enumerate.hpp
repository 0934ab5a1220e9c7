#pragma once

#include "hgs/graph.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace hgs {

inline constexpr int max_enumeration_order = 8;

using GraphFilter = std::function<bool(const Graph&)>;

/// Labeled graphs on [n] in increasing edge-mask order, restricted to a
/// half-open mask range [begin, end) and to those passing the filter.
class GraphStream {
public:
    GraphStream(int n, GraphFilter filter, std::uint64_t begin, std::uint64_t end);

    std::optional<Graph> next();

    int order() const noexcept { return n_; }
    /// Next edge mask to be examined; a stream can be rebuilt from here.
    std::uint64_t cursor() const noexcept { return cursor_; }
    std::uint64_t end() const noexcept { return end_; }

    /// Disjoint contiguous sub-ranges covering what remains of this stream.
    std::vector<GraphStream> split(int pieces) const;

private:
    int n_;
    GraphFilter filter_;
    std::uint64_t cursor_;
    std::uint64_t end_;
};

/// All 2^C(n,2) labeled graphs on [n] passing filter (all of them when the
/// filter is empty). Throws LimitExceeded for n > 8.
GraphStream enumerate_labeled(int n, GraphFilter filter = {});

/// Number of labeled graphs on [n] passing filter, sharded over threads
/// (0 = thread_count()). The result does not depend on the sharding.
std::uint64_t count_labeled(int n, const GraphFilter& filter, int threads = 0);

/// Value of HGS_THREADS if set and positive, else hardware concurrency.
int thread_count();

/// Runs body(shard, begin, end) over `pieces` contiguous ranges of [0, total)
/// on up to `threads` threads.
void parallel_ranges(std::uint64_t total, int threads,
    const std::function<void(int shard, std::uint64_t begin, std::uint64_t end)>& body);

} // namespace hgs
