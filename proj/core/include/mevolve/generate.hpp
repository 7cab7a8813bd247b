#pragma once

#include <cstddef>

#include "mevolve/graph.hpp"
#include "mevolve/rng.hpp"

namespace mevolve {

/// G(n, p): each of the n(n-1)/2 pairs becomes an edge independently with
/// probability p.
Graph erdos_renyi(std::size_t n, double p, Rng& rng);

/// Preferential attachment: a clique on attach+1 seed vertices, then each new
/// vertex attaches to `attach` distinct existing vertices with probability
/// proportional to degree. Connected by construction. Requires n > attach >= 1.
Graph barabasi_albert(std::size_t n, std::size_t attach, Rng& rng);

}  // namespace mevolve
