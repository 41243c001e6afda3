#pragma once

#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

#include "lqw/walk.hpp"

namespace lqw::dense {

/// Largest N*(d+1) for which an explicit step matrix is built.
inline constexpr std::size_t kMaxDimension = 4096;

class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Explicit step matrix over the vertex-major (vertex * (d+1) + slot) basis.
struct DenseOperator {
  GridSpec grid;
  Matrix matrix;

  [[nodiscard]] Eigen::Index dimension() const noexcept { return matrix.rows(); }
};

/// Factors of the search step, each assembled from its definition.
Matrix coin_matrix(const GridSpec& grid, double loop_weight);  // I_N x (2|s_c><s_c| - I)
Matrix shift_matrix(const GridSpec& grid);                     // permutation from resolve_shift
Matrix oracle_matrix(const GridSpec& grid, std::span<const VertexCoord> marked);  // Q x I

/// S (I x C) (Q x I). Throws SizeGuardError above kMaxDimension.
DenseOperator build_dense_step(const WalkParams& params);

/// `steps` successive matrix-vector products. Throws std::invalid_argument on
/// dimension mismatch.
WalkState evolve_dense(const DenseOperator& op, const WalkState& state, long steps);

/// max |(U^dagger U - I)_ij|.
double unitarity_defect(const Matrix& u);

Vector to_vector(const WalkState& state);
WalkState from_vector(const GridSpec& grid, const Vector& v);

}  // namespace lqw::dense
