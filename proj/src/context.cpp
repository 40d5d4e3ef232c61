#include "gpa/context.hpp"

namespace gpa {

ContextPtr GradedContext::make(const std::vector<std::pair<std::string, int>>& name_degree) {
    auto ctx = std::make_shared<GradedContext>();
    int idx = 0;
    for (const auto& [name, deg] : name_degree) {
        if (name.empty()) throw std::invalid_argument("empty generator name");
        if (ctx->by_name_.count(name)) throw std::invalid_argument("duplicate generator name: " + name);
        ctx->by_name_[name] = idx;
        ctx->gens_.push_back(Generator{name, deg, idx});
        ++idx;
    }
    return ctx;
}

int GradedContext::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

int GradedContext::require(const std::string& name) const {
    int i = find(name);
    if (i < 0) throw std::invalid_argument("unknown generator: " + name);
    return i;
}

bool GradedContext::same_as(const GradedContext& other) const {
    if (gens_.size() != other.gens_.size()) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name != other.gens_[i].name || gens_[i].degree != other.gens_[i].degree)
            return false;
    return true;
}

} // namespace gpa
