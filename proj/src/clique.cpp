#include "hgs/clique.hpp"

namespace hgs {

namespace {

struct Search {
    const std::vector<bits::Word>& adj;
    bits::Word best = 0;
    int best_size = 0;

    // Greedy colouring of p: order[i] is a vertex, bound[i] the number of
    // colours used up to and including it.
    void colour(bits::Word p, std::vector<int>& order, std::vector<int>& bound) const
    {
        order.clear();
        bound.clear();
        int colour_count = 0;
        bits::Word uncoloured = p;
        while (uncoloured) {
            ++colour_count;
            bits::Word available = uncoloured;
            while (available) {
                const int v = bits::lowest(available);
                available &= ~adj[static_cast<std::size_t>(v)] & ~(bits::Word{1} << v);
                uncoloured &= ~(bits::Word{1} << v);
                order.push_back(v);
                bound.push_back(colour_count);
            }
        }
    }

    void expand(bits::Word clique, int size, bits::Word p)
    {
        std::vector<int> order, bound;
        colour(p, order, bound);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (size + bound[i] <= best_size)
                return;
            const int v = order[i];
            const bits::Word with = clique | (bits::Word{1} << v);
            const bits::Word next = p & adj[static_cast<std::size_t>(v)];
            if (next == 0) {
                if (size + 1 > best_size) {
                    best = with;
                    best_size = size + 1;
                }
            } else {
                expand(with, size + 1, next);
            }
            p &= ~(bits::Word{1} << v);
        }
    }
};

} // namespace

bits::Word max_clique(const std::vector<bits::Word>& adj, bits::Word candidates)
{
    if (candidates == 0)
        return 0;
    Search s{adj};
    s.expand(0, 0, candidates);
    return s.best;
}

bits::Word greedy_clique(const std::vector<bits::Word>& adj, bits::Word candidates)
{
    bits::Word clique = 0;
    bits::for_each_bit(candidates, [&](int v) {
        if ((clique & ~adj[static_cast<std::size_t>(v)]) == 0)
            clique |= bits::Word{1} << v;
    });
    return clique;
}

} // namespace hgs
