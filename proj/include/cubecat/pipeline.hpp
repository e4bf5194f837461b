#pragma once

#include <string>

#include "cubecat/complex.hpp"
#include "cubecat/homology.hpp"

namespace cubecat {

/// Everything computed for one diagram under one system.
struct Pipeline {
  Hypercube hypercube;
  /// Face cocycle; vanishing faces are completed from the chosen signs.
  FaceCocycle psi;
  /// Cocycle exactly as measured (may contain zeros for exterior systems).
  FaceCocycle raw_psi;
  SignAssignment eps;
  ChainComplex complex;
};

Pipeline build_pipeline(const LinkDiagram& d, const FrobeniusSystem& sys, OuterFace outer = std::nullopt);

HomologyTable compute_homology(const LinkDiagram& d, const FrobeniusSystem& sys, Coefficients coeff,
                               OuterFace outer = std::nullopt, int jobs = 1);

/// "kh", "nested", "odd" (also "khovanov").
SystemKind parse_theory(const std::string& name);

}  // namespace cubecat
