#include "hgs/graph6.hpp"

#include "hgs/error.hpp"

namespace hgs {

namespace {

constexpr int bias = 63;

bool printable(char c) { return c >= 63 && c <= 126; }

} // namespace

std::string graph6_encode(const Graph& g)
{
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + bias));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 0x3f) + bias));
        out.push_back(static_cast<char>(((n >> 6) & 0x3f) + bias));
        out.push_back(static_cast<char>((n & 0x3f) + bias));
    }
    int acc = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(acc + bias));
                acc = 0;
                filled = 0;
            }
        }
    if (filled > 0)
        out.push_back(static_cast<char>((acc << (6 - filled)) + bias));
    return out;
}

Graph graph6_decode(std::string_view text)
{
    constexpr std::string_view header = ">>graph6<<";
    if (text.substr(0, header.size()) == header)
        text.remove_prefix(header.size());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
        text.remove_suffix(1);
    if (text.empty())
        throw InvalidArgument("graph6_decode", "empty input");
    for (char c : text)
        if (!printable(c))
            throw InvalidArgument("graph6_decode", "byte outside [63,126]");

    std::size_t pos = 0;
    int n = 0;
    if (text[0] != '~') {
        n = text[0] - bias;
        pos = 1;
    } else {
        if (text.size() >= 2 && text[1] == '~')
            throw InvalidArgument("graph6_decode", "orders above 258047 are not supported");
        if (text.size() < 4)
            throw InvalidArgument("graph6_decode", "truncated header");
        n = ((text[1] - bias) << 12) | ((text[2] - bias) << 6) | (text[3] - bias);
        pos = 4;
        if (n < 63)
            throw InvalidArgument("graph6_decode", "long header used for order below 63");
    }
    if (n > max_order)
        throw InvalidArgument("graph6_decode", "order " + std::to_string(n) + " exceeds 64");

    const std::size_t needed = (static_cast<std::size_t>(pair_count(n)) + 5) / 6;
    const std::size_t have = text.size() - pos;
    if (have < needed)
        throw InvalidArgument("graph6_decode", "truncated bit vector");
    if (have > needed)
        throw InvalidArgument("graph6_decode", "trailing bytes after bit vector");

    Graph g(n);
    int bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit) {
            const int byte = text[pos + static_cast<std::size_t>(bit / 6)] - bias;
            if ((byte >> (5 - bit % 6)) & 1)
                g.add_edge(i, j);
        }
    return g;
}

std::vector<Graph> graph6_decode_lines(std::string_view text)
{
    std::vector<Graph> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (!line.empty() && line.front() != '#')
            out.push_back(graph6_decode(line));
        start = end + 1;
    }
    return out;
}

} // namespace hgs
