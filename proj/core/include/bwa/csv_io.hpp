#pragma once

#include "bwa/continuum_dynamics.hpp"
#include "bwa/discrete_dynamics.hpp"
#include "bwa/lattice.hpp"
#include "bwa/standing_waves.hpp"

#include <filesystem>
#include <string>

namespace bwa {

// Full-precision (%.17g) float formatting; all CSV output goes through this.
std::string fmt_double(double v);

// Lattice field CSV: header `n,x,re1,im1,re2,im2`, x = n*h at full precision.
std::string field_csv(const LatticeField& u);
LatticeField parse_field_csv(const std::string& text);

// Continuum field CSV: header `x,re1,im1,re2,im2`.
std::string continuum_csv(const ContinuumField& f);
ContinuumField parse_continuum_csv(const std::string& text, double L);

// Standing-wave profile CSV: header `x,u,v`.
std::string profile_csv(const WaveProfile& p);

// Per-snapshot norms CSV: header `z,l2h,h1h,linf`.
std::string norms_csv(const std::vector<NormRecord>& norms);

std::string read_text_file(const std::filesystem::path& path);

// Atomic write: temp file in the same directory, then rename.
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace bwa
