#pragma once
#include "omegapaste/globular.hpp"

// Colimit-based oracle for mu^T, kept independent of the table-splicing
// implementation; used only by the test suites for differential checks.

namespace omegapaste::oracle {

// Recovers the canonical pasting-diagram structure of a globular set that is
// (isomorphic to) the realisation of some scheme: orders the 0-cells along
// the 1-skeleton and recurses into hom globular sets.
Dia<GlobUniv> extract_dia(const GlobularSet& y, int dim);

// mu^T by gluing realisations: converts every inner diagram to a globular map
// from its realisation, glues along the realised boundaries, and re-extracts
// the table of the glued pasting.
Dia<GlobUniv> oracle_mu(const GlobularSet& x, const Dia<DiaUniv<GlobUniv>>& outer);

}  // namespace omegapaste::oracle
