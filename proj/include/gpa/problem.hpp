#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpa/multivector.hpp"
#include "gpa/star.hpp"

namespace gpa {

// Parsed problem file: generators, Poisson matrix entries, constraints,
// sample points and command options, all as written (expressions stay
// strings until a target context exists).
struct Problem {
    std::vector<std::pair<std::string, int>> generators;
    std::vector<std::tuple<std::string, std::string, std::string>> poisson; // (gi, gj, expr)
    std::vector<std::string> constraints;
    std::vector<std::vector<std::string>> points;
    std::vector<std::string> casimirs;
    std::vector<std::string> lifts;
    std::string expression;
    std::vector<std::string> fiber;
    std::optional<std::string> omega; // row-major rational matrix "a,b;c,d" for classify

    int max_degree = 3;
    int eps_order = 2;
    int arity = 3;

    ContextPtr plain_context() const;
    ShiftedCtxPtr shifted_context() const;
    std::vector<std::tuple<int, int, GradedPoly>> poisson_entries(const ContextPtr& ctx) const;
    Multivector poisson_bivector(const ShiftedCtxPtr& s) const;
    PoissonMatrix poisson_matrix() const;
    // constraint indices; throws unless every constraint is a bare generator
    std::vector<int> constraint_indices() const;
    std::vector<std::map<int, Rat>> rational_points(const ContextPtr& ctx) const;
};

Problem load_problem_file(const std::string& path);
Problem problem_from_json_text(const std::string& text);

} // namespace gpa
