#pragma once

#include "hgs/graph.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hgs {

/// graph6 encoding (McKay's format), without the optional ">>graph6<<" header.
std::string graph6_encode(const Graph& g);

/// Decodes one graph6 string. A leading ">>graph6<<" header is accepted.
/// Throws InvalidArgument on a malformed header, a character outside
/// [63, 126], or a truncated or overlong bit vector.
Graph graph6_decode(std::string_view text);

/// One graph per non-blank line; '#' starts a comment line.
std::vector<Graph> graph6_decode_lines(std::string_view text);

} // namespace hgs
