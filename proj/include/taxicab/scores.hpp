#pragma once

#include <string>

#include "taxicab/model.hpp"

namespace taxicab {

// Principal scores: contribution scores rescaled per method so that maps
// are comparable to classical correspondence plots.
//   TCA:  f = a / p_i*,  g = b / p_*j
//   TLRA: f = I a,       g = J b
struct PrincipalScores {
  Eigen::MatrixXd f;  // I x A
  Eigen::MatrixXd g;  // J x A
  Method method = Method::Tca;

  int axis_count() const { return static_cast<int>(f.cols()); }
};

inline PrincipalScores principal_scores(const Decomposition& dec,
                                        const CorrespondenceMatrix& p) {
  const Index nr = dec.centered().rows();
  const Index nc = dec.centered().cols();
  if (p.p.rows() != nr || p.p.cols() != nc) {
    throw Error(ErrorCode::DimensionMismatch,
                "masses come from a different table than the decomposition");
  }
  if (dec.method == Method::Tca) {
    for (Index i = 0; i < nr; ++i) {
      if (p.row_masses[i] <= 0.0) {
        throw Error(ErrorCode::ZeroMass, "row " + std::to_string(i) +
                                             " has zero mass");
      }
    }
    for (Index j = 0; j < nc; ++j) {
      if (p.col_masses[j] <= 0.0) {
        throw Error(ErrorCode::ZeroMass, "column " + std::to_string(j) +
                                             " has zero mass");
      }
    }
  }

  const int naxes = dec.axis_count();
  PrincipalScores s;
  s.method = dec.method;
  s.f.resize(nr, naxes);
  s.g.resize(nc, naxes);
  for (int m = 0; m < naxes; ++m) {
    const AxisResult& axis = dec.axes[static_cast<std::size_t>(m)];
    if (dec.method == Method::Tca) {
      s.f.col(m) = axis.a.array() / p.row_masses.array();
      s.g.col(m) = axis.b.array() / p.col_masses.array();
    } else {
      s.f.col(m) = static_cast<double>(nr) * axis.a;
      s.g.col(m) = static_cast<double>(nc) * axis.b;
    }
  }
  return s;
}

// Points of the symmetric map for one ordered axis pair (1-based).
struct MapCoordinates {
  Eigen::MatrixXd row_points;  // I x 2
  Eigen::MatrixXd col_points;  // J x 2
  int axis_a = 1;
  int axis_b = 2;
};

inline MapCoordinates map_coordinates(const PrincipalScores& scores,
                                      int axis_a, int axis_b) {
  const int naxes = scores.axis_count();
  if (axis_a == axis_b) {
    throw Error(ErrorCode::AxisOutOfRange, "axis pair must be distinct");
  }
  if (axis_a < 1 || axis_b < 1 || axis_a > naxes || axis_b > naxes) {
    throw Error(ErrorCode::AxisOutOfRange,
                "axis pair (" + std::to_string(axis_a) + ", " +
                    std::to_string(axis_b) + ") outside 1.." +
                    std::to_string(naxes));
  }
  MapCoordinates mc;
  mc.axis_a = axis_a;
  mc.axis_b = axis_b;
  mc.row_points.resize(scores.f.rows(), 2);
  mc.col_points.resize(scores.g.rows(), 2);
  mc.row_points.col(0) = scores.f.col(axis_a - 1);
  mc.row_points.col(1) = scores.f.col(axis_b - 1);
  mc.col_points.col(0) = scores.g.col(axis_a - 1);
  mc.col_points.col(1) = scores.g.col(axis_b - 1);
  return mc;
}

}  // namespace taxicab
