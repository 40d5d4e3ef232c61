#pragma once

#include <string>

#include "gpa/bfv.hpp"
#include "gpa/coiso.hpp"

namespace gpa {

struct SchaetzReport {
    bool dims_equal = false;
    bool projection_bijective = false;
    bool brackets_equal = false;
    std::vector<std::tuple<int, int, int>> dims; // degree, dim H_D, dim H_{lambda1}
    std::string detail;

    bool ok() const { return dims_equal && projection_bijective && brackets_equal; }
};

// Complex of lambda_1 on A at truncation (degrees 0..#transverse).
CochainComplex algebroid_complex(const PInfinityStructure& s, int max_even_degree);

// Compares the ghost-side cohomology H_D with the Lie algebroid cohomology
// H_{lambda_1} degree by degree, and the induced degree-zero Poisson bracket
// tables through the classical projection (y, b -> 0).
SchaetzReport schaetz_crosscheck(const BfvContext& bc, const BfvCharge& charge,
                                 const PInfinityStructure& s, int max_even_degree);

} // namespace gpa
