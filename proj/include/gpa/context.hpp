#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpa {

struct Generator {
    std::string name;
    int degree = 0; // Z-degree
    int index = 0;  // declaration order, the canonical sort key

    bool odd() const { return (degree % 2 + 2) % 2 == 1; }
};

class GradedContext;
using ContextPtr = std::shared_ptr<const GradedContext>;

// Immutable ordered list of graded generators. Generator order is fixed at
// creation and defines the canonical monomial order.
class GradedContext {
public:
    static ContextPtr make(const std::vector<std::pair<std::string, int>>& name_degree);

    int size() const { return static_cast<int>(gens_.size()); }
    const Generator& gen(int i) const { return gens_.at(static_cast<size_t>(i)); }
    const std::vector<Generator>& gens() const { return gens_; }

    // -1 if absent
    int find(const std::string& name) const;
    int require(const std::string& name) const;

    bool same_as(const GradedContext& other) const;

private:
    std::vector<Generator> gens_;
    std::map<std::string, int> by_name_;
};

struct ContextMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_same_context(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return;
    if (!a || !b || !a->same_as(*b)) throw ContextMismatch("context mismatch");
}

} // namespace gpa
