#pragma once

#include <string>
#include <vector>

#include "iwave/spectral/field.hpp"

namespace iwave {

// CSV: header "x[,y],value" (or one value column per component), one row per
// grid point in storage order.
void write_csv(const std::string& path, const ScalarField& f);
void write_csv(const std::string& path, const VectorField& v);

// Binary dump, little-endian:
//   char[4]  magic "IWFD"
//   uint32   version (1)
//   uint32   dim
//   uint32   ncomponents
//   uint32   points[dim]
//   float64  lengths[dim]
//   float64  samples[ncomponents][size], each component row-major (x slowest)
void write_binary(const std::string& path, const std::vector<ScalarField>& components);
std::vector<ScalarField> read_binary(const std::string& path);

}  // namespace iwave
