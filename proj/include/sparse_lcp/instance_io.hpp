#pragma once

#include <iosfwd>
#include <string>

#include "sparse_lcp/types.hpp"

namespace sparse_lcp {

/// Text instance format:
///
///   n
///   M row 1        (n reals)
///   ...
///   M row n
///   q              (n reals)
///   x*: v_1 ... v_n   (optional)
///
/// Reals are written with 17 significant digits so a write/read cycle is
/// bit exact. Declared matrix classes are not stored.
void write_instance(std::ostream& os, const LcpInstance& inst);
void write_instance_file(const std::string& path, const LcpInstance& inst);

/// Throws std::runtime_error on malformed input.
LcpInstance read_instance(std::istream& is);
LcpInstance read_instance_file(const std::string& path);

/// One line of whitespace separated reals.
void write_vector(std::ostream& os, const VectorXd& v);
VectorXd read_vector_file(const std::string& path);

/// %.17g formatting.
std::string format_real(double v);

}  // namespace sparse_lcp
