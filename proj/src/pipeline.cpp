#include "cubecat/pipeline.hpp"

namespace cubecat {

Pipeline build_pipeline(const LinkDiagram& d, const FrobeniusSystem& sys, OuterFace outer) {
  Pipeline p;
  p.hypercube = build_hypercube(d, sys, outer);
  p.raw_psi = face_cocycle(p.hypercube.cube);
  if (three_cube_violations(p.hypercube.cube, p.raw_psi) != 0)
    throw CubeError("face cocycle violates the 3-cube condition for system " + sys.name);
  auto eps = solve_sign_assignment(p.hypercube.cube, p.raw_psi);
  if (!eps) throw CubeError("no sign assignment exists for system " + sys.name);
  p.eps = std::move(*eps);
  p.psi = complete_cocycle(p.raw_psi, p.hypercube.cube, p.eps.eps);
  p.complex = assemble_complex(p.hypercube.cube, p.eps);
  if (!d_squared_zero(p.complex)) throw CubeError("assembled differential does not square to zero");
  return p;
}

HomologyTable compute_homology(const LinkDiagram& d, const FrobeniusSystem& sys, Coefficients coeff,
                               OuterFace outer, int jobs) {
  const Pipeline p = build_pipeline(d, sys, outer);
  HomologyTable h = homology_table(p.complex, coeff, jobs);
  h.theory = sys.name;
  h.diagram = d.serialize();
  return h;
}

SystemKind parse_theory(const std::string& name) {
  if (name == "kh" || name == "khovanov") return SystemKind::Khovanov;
  if (name == "nested") return SystemKind::Nested;
  if (name == "odd") return SystemKind::Odd;
  throw std::invalid_argument("unknown theory '" + name + "' (expected kh, nested or odd)");
}

}  // namespace cubecat
