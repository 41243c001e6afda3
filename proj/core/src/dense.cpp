#include "lqw/dense.hpp"

#include <cmath>

#include <fmt/format.h>

namespace lqw::dense {

namespace {

void check_size(const GridSpec& grid) {
  if (grid.dimension() > kMaxDimension) {
    throw SizeGuardError(fmt::format("dense operator for {} has dimension {} > {}", describe(grid),
                                     grid.dimension(), kMaxDimension));
  }
}

}  // namespace

Matrix coin_matrix(const GridSpec& grid, double loop_weight) {
  check_size(grid);
  const auto d1 = grid.slots();
  const double norm = grid.degree() + loop_weight;
  Eigen::VectorXd sc(d1);
  for (int s = 0; s < grid.degree(); ++s) sc(s) = 1.0;
  sc(grid.degree()) = std::sqrt(loop_weight);
  sc /= std::sqrt(norm);
  const Eigen::MatrixXd block = 2.0 * sc * sc.transpose() - Eigen::MatrixXd::Identity(d1, d1);

  const auto dim = static_cast<Eigen::Index>(grid.dimension());
  Matrix c = Matrix::Zero(dim, dim);
  for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
    const auto base = static_cast<Eigen::Index>(v) * d1;
    c.block(base, base, d1, d1) = block.cast<Amplitude>();
  }
  return c;
}

Matrix shift_matrix(const GridSpec& grid) {
  check_size(grid);
  const auto dim = static_cast<Eigen::Index>(grid.dimension());
  Matrix s = Matrix::Zero(dim, dim);
  for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
    const auto from = grid.vertex_at(v);
    for (int slot = 0; slot < grid.slots(); ++slot) {
      const auto to = resolve_shift(grid, from, CoinSlot{slot});
      const auto row = static_cast<Eigen::Index>(grid.amplitude_index(to.vertex, to.slot));
      const auto col = static_cast<Eigen::Index>(grid.amplitude_index(from, CoinSlot{slot}));
      s(row, col) = 1.0;
    }
  }
  return s;
}

Matrix oracle_matrix(const GridSpec& grid, std::span<const VertexCoord> marked) {
  check_size(grid);
  const auto dim = static_cast<Eigen::Index>(grid.dimension());
  Matrix q = Matrix::Identity(dim, dim);
  for (const auto& v : marked) {
    for (int slot = 0; slot < grid.slots(); ++slot) {
      const auto i = static_cast<Eigen::Index>(grid.amplitude_index(v, CoinSlot{slot}));
      q(i, i) = -1.0;
    }
  }
  return q;
}

DenseOperator build_dense_step(const WalkParams& params) {
  validate(params);
  check_size(params.grid);
  Matrix u = shift_matrix(params.grid) * coin_matrix(params.grid, params.loop_weight) *
             oracle_matrix(params.grid, params.marked);
  return {params.grid, std::move(u)};
}

WalkState evolve_dense(const DenseOperator& op, const WalkState& state, long steps) {
  if (static_cast<std::size_t>(op.dimension()) != state.size() || !(op.grid == state.grid())) {
    throw std::invalid_argument(fmt::format("dense operator of dimension {} cannot act on a {} state of length {}",
                                            op.dimension(), describe(state.grid()), state.size()));
  }
  Vector v = to_vector(state);
  for (long t = 0; t < steps; ++t) v = op.matrix * v;
  return from_vector(state.grid(), v);
}

double unitarity_defect(const Matrix& u) {
  const Matrix defect = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff();
}

Vector to_vector(const WalkState& state) {
  const auto amps = state.amplitudes();
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  return v;
}

WalkState from_vector(const GridSpec& grid, const Vector& v) {
  std::vector<Amplitude> amps(v.data(), v.data() + v.size());
  return WalkState(grid, std::move(amps));
}

}  // namespace lqw::dense
