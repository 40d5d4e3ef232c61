#include "gpa/problem.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gpa/parse.hpp"

namespace gpa {

namespace {

void validate_name(const std::string& n) {
    if (n.empty() || (!std::isalpha(static_cast<unsigned char>(n[0])) && n[0] != '_'))
        throw std::invalid_argument("bad generator name: '" + n + "'");
    for (char c : n)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw std::invalid_argument("bad generator name: '" + n + "'");
    if (n == "eps") throw std::invalid_argument("'eps' is reserved for the deformation parameter");
    if (n.rfind("theta_", 0) == 0)
        throw std::invalid_argument("'theta_' prefix is reserved for conjugate generators");
}

} // namespace

ContextPtr Problem::plain_context() const { return GradedContext::make(generators); }

ShiftedCtxPtr Problem::shifted_context() const { return ShiftedCotangentContext::make(generators); }

std::vector<std::tuple<int, int, GradedPoly>> Problem::poisson_entries(const ContextPtr& ctx) const {
    std::vector<std::tuple<int, int, GradedPoly>> out;
    for (const auto& [a, b, expr] : poisson)
        out.emplace_back(ctx->require(a), ctx->require(b), parse_expr(expr, ctx));
    return out;
}

Multivector Problem::poisson_bivector(const ShiftedCtxPtr& s) const {
    return bivector_from_matrix(s, poisson_entries(s->poly_context()));
}

PoissonMatrix Problem::poisson_matrix() const {
    auto ctx = plain_context();
    return PoissonMatrix::make(ctx, poisson_entries(ctx));
}

std::vector<int> Problem::constraint_indices() const {
    auto ctx = plain_context();
    std::vector<int> out;
    for (const auto& c : constraints) {
        int gi = ctx->find(c);
        if (gi < 0) throw std::invalid_argument("constraint '" + c + "' must be a generator name");
        out.push_back(gi);
    }
    return out;
}

std::vector<std::map<int, Rat>> Problem::rational_points(const ContextPtr& ctx) const {
    std::vector<std::map<int, Rat>> out;
    for (const auto& pt : points) {
        if (pt.size() != generators.size())
            throw std::invalid_argument("point arity does not match the generator list");
        std::map<int, Rat> m;
        for (size_t i = 0; i < pt.size(); ++i)
            m[ctx->require(generators[i].first)] = Rat(pt[i]);
        out.push_back(std::move(m));
    }
    return out;
}

Problem problem_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Problem p;
    if (!j.contains("generators") || !j["generators"].is_array())
        throw std::invalid_argument("problem file needs a 'generators' array");
    for (const auto& g : j["generators"]) {
        std::string name = g.at("name").get<std::string>();
        int deg = g.value("degree", 0);
        validate_name(name);
        p.generators.emplace_back(name, deg);
    }
    for (const auto& e : j.value("poisson", nlohmann::json::array())) {
        auto pair = e.at("pair");
        p.poisson.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>(),
                               e.at("value").get<std::string>());
    }
    for (const auto& c : j.value("constraints", nlohmann::json::array()))
        p.constraints.push_back(c.get<std::string>());
    for (const auto& pt : j.value("points", nlohmann::json::array())) {
        std::vector<std::string> v;
        for (const auto& x : pt) v.push_back(x.get<std::string>());
        p.points.push_back(std::move(v));
    }
    for (const auto& c : j.value("casimirs", nlohmann::json::array()))
        p.casimirs.push_back(c.get<std::string>());
    for (const auto& c : j.value("lifts", nlohmann::json::array()))
        p.lifts.push_back(c.get<std::string>());
    p.expression = j.value("expression", std::string{});
    for (const auto& c : j.value("fiber", nlohmann::json::array()))
        p.fiber.push_back(c.get<std::string>());
    if (j.contains("omega")) p.omega = j["omega"].get<std::string>();
    if (j.contains("options")) {
        const auto& o = j["options"];
        p.max_degree = o.value("max_degree", p.max_degree);
        p.eps_order = o.value("eps_order", p.eps_order);
        p.arity = o.value("arity", p.arity);
    }
    return p;
}

Problem load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open problem file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return problem_from_json_text(ss.str());
}

} // namespace gpa
