#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "dzh/algebra.hpp"
#include "dzh/hecke.hpp"

namespace dzh {

// Omega = W(rho_M0) with the cocycle of `table`, W_aff trivial. The handle
// refers to `table`, which must outlive it.
CrossedHandle<WeylElem> build_example_algebra(const CocycleTable& table);

// e_u e_v = c e_uv: returns (uv, c).
std::pair<WeylElem, HeckeCoeff> structure_constant(const CrossedHandle<WeylElem>& alg, const WeylElem& u,
                                                   const WeylElem& v);

// CSV rows "u,v,uv,re,im" (with header) for all u, v in `elements`.
void dump_structure_constants(const CrossedHandle<WeylElem>& alg, const std::vector<WeylElem>& elements,
                              std::ostream& os);

}  // namespace dzh
