#include "mevolve/spectral.hpp"

#include <stdexcept>

#include <Eigen/Dense>

#include "mevolve/parallel.hpp"

namespace mevolve {

std::vector<double> spectral_embed(const Graph& g, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("spectral_embed: dim must be >= 1");
  const std::size_t n = g.vertex_count();
  std::vector<double> embedding(dim, 0.0);
  if (n == 0) return embedding;

  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                    static_cast<Eigen::Index>(n));
  for (std::uint32_t v = 0; v < n; ++v) {
    laplacian(v, v) = static_cast<double>(g.degree(v));
  }
  for (const VertexPair& e : g.edges()) {
    laplacian(e.a, e.b) = -1.0;
    laplacian(e.b, e.a) = -1.0;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectral_embed: eigenvalue decomposition failed");
  }
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();  // ascending
  const std::size_t take = std::min(dim, n);
  for (std::size_t i = 0; i < take; ++i) embedding[i] = eigenvalues(static_cast<Eigen::Index>(i));
  return embedding;
}

std::vector<std::vector<double>> embed_dataset(const LabeledDataset& dataset, std::size_t dim,
                                               unsigned workers) {
  std::vector<std::vector<double>> features(dataset.size());
  parallel_for(dataset.size(), workers,
               [&](std::size_t i) { features[i] = spectral_embed(dataset.graphs[i], dim); });
  return features;
}

}  // namespace mevolve
