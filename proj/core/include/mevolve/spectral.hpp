#pragma once

#include <cstddef>
#include <vector>

#include "mevolve/dataset.hpp"
#include "mevolve/graph.hpp"

namespace mevolve {

/// The `dim` smallest eigenvalues of the combinatorial Laplacian Deg - A,
/// sorted ascending and right-padded with zeros when the graph has fewer than
/// `dim` vertices. Permutation-invariant by construction.
std::vector<double> spectral_embed(const Graph& g, std::size_t dim);

/// spectral_embed for every graph, optionally fanned out across workers.
std::vector<std::vector<double>> embed_dataset(const LabeledDataset& dataset, std::size_t dim,
                                               unsigned workers = 1);

}  // namespace mevolve
