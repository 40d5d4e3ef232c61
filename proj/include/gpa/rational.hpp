#pragma once

#include <boost/multiprecision/gmp.hpp>

namespace gpa {

// Exact rational scalar. All arithmetic in the engine happens over this type;
// there is no floating point anywhere.
using Rat = boost::multiprecision::mpq_rational;

inline std::string to_string(const Rat& r) { return r.str(); }

} // namespace gpa
