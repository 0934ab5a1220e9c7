#include "hgs/enumerate.hpp"

#include "hgs/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace hgs {

GraphStream::GraphStream(int n, GraphFilter filter, std::uint64_t begin, std::uint64_t end)
    : n_(n)
    , filter_(std::move(filter))
    , cursor_(begin)
    , end_(end)
{
}

std::optional<Graph> GraphStream::next()
{
    while (cursor_ < end_) {
        Graph g = Graph::from_edge_mask(n_, cursor_++);
        if (!filter_ || filter_(g))
            return g;
    }
    return std::nullopt;
}

std::vector<GraphStream> GraphStream::split(int pieces) const
{
    pieces = std::max(1, pieces);
    std::vector<GraphStream> out;
    const std::uint64_t span = end_ - cursor_;
    for (int p = 0; p < pieces; ++p) {
        std::uint64_t b = cursor_ + span * static_cast<std::uint64_t>(p) / static_cast<std::uint64_t>(pieces);
        std::uint64_t e = cursor_ + span * static_cast<std::uint64_t>(p + 1) / static_cast<std::uint64_t>(pieces);
        out.emplace_back(n_, filter_, b, e);
    }
    return out;
}

GraphStream enumerate_labeled(int n, GraphFilter filter)
{
    if (n < 0)
        throw InvalidArgument("enumerate_labeled", "negative order");
    if (n > max_enumeration_order)
        throw LimitExceeded("enumerate_labeled",
            "order " + std::to_string(n) + " too large for exhaustive enumeration (max 8)");
    return GraphStream(n, std::move(filter), 0, std::uint64_t{1} << pair_count(n));
}

int thread_count()
{
    if (const char* env = std::getenv("HGS_THREADS")) {
        int t = std::atoi(env);
        if (t > 0)
            return t;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_ranges(std::uint64_t total, int threads,
    const std::function<void(int, std::uint64_t, std::uint64_t)>& body)
{
    if (threads <= 0)
        threads = thread_count();
    const auto pieces = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), std::max<std::uint64_t>(total, 1)));
    if (pieces <= 1) {
        body(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex guard;
    for (int p = 0; p < pieces; ++p) {
        std::uint64_t b = total * static_cast<std::uint64_t>(p) / static_cast<std::uint64_t>(pieces);
        std::uint64_t e = total * static_cast<std::uint64_t>(p + 1) / static_cast<std::uint64_t>(pieces);
        pool.emplace_back([&, p, b, e] {
            try {
                body(p, b, e);
            } catch (...) {
                std::lock_guard lock(guard);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::uint64_t count_labeled(int n, const GraphFilter& filter, int threads)
{
    GraphStream all = enumerate_labeled(n);
    const std::uint64_t total = all.end();
    if (!filter)
        return total;
    if (threads <= 0)
        threads = thread_count();
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(std::max(threads, 1)), 0);
    parallel_ranges(total, threads, [&](int shard, std::uint64_t b, std::uint64_t e) {
        GraphStream s(n, filter, b, e);
        std::uint64_t c = 0;
        while (s.next())
            ++c;
        partial[static_cast<std::size_t>(shard)] = c;
    });
    std::uint64_t sum = 0;
    for (auto c : partial)
        sum += c;
    return sum;
}

} // namespace hgs
