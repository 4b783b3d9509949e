#pragma once
#include <iosfwd>
#include <string>

#include "lapgeo/immersion.hpp"

namespace lapgeo {

// Shared grid exchange format. Header:
//   # lapgeo-grid v1 n=<n> m=<m> shape=<N1[,N2]> periodic=<0|1[,0|1]>
//     domain=<a1:b1[;a2:b2]> label=<text>
// then one row per sample (last axis fastest): n parameter coordinates
// followed by m ambient coordinates.

void write_grid_csv(const SampledImmersion& S, std::ostream& out);
void write_grid_csv(const SampledImmersion& S, const std::string& path);

SampledImmersion read_grid_csv(std::istream& in);
SampledImmersion read_grid_csv(const std::string& path);

}  // namespace lapgeo
