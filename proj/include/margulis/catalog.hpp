#pragma once

#include "margulis/rep_io.hpp"

#include <string>
#include <vector>

namespace margulis {

struct CatalogParams {
  /// Top eigenvalue of each hyperbolic generator (n = 1 entries).
  double lambda = 8.0;
  /// Rotation between the axes of the two generators on the circle of null lines.
  double separation = 1.5707963267948966;
  /// Size of the translation along each generator's neutral direction.
  double translation = 1.0;
};

std::vector<std::string> catalog_names();

/// Deterministic example representations:
///   margulis_positive_n1  two rotated SO(2,1) boosts, translations along +nu
///   mixed_sign_n1         same linear parts, second translation along -nu
///   linear_only           same linear parts, zero translations
///   block_n2              n = 2 diagonal boosts under compact conjugations
///   elliptic_n1           one boost and one elliptic generator
/// Throws ParameterError for an unknown name.
RepDocument catalog(const std::string& name, const CatalogParams& params = {});

/// SO(2,1) rotation by `angle` in the positive plane of the reference splitting.
Matrix rotation_n1(double angle);
/// diag(lambda, 1, 1/lambda).
Matrix boost_n1(double lambda);

}  // namespace margulis
