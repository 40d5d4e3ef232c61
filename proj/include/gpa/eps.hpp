#pragma once

#include <vector>

#include "gpa/poly.hpp"

namespace gpa {

// Truncated formal power series in the deformation parameter: coefficients
// a_0..a_N, arithmetic modulo eps^{N+1}. eps itself is never specialized.
class EpsSeries {
public:
    EpsSeries() = default;
    EpsSeries(ContextPtr ctx, int order);
    static EpsSeries constant(const GradedPoly& a0, int order);
    static EpsSeries from_coeffs(std::vector<GradedPoly> coeffs); // order = size-1

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const ContextPtr& context() const { return c_.front().context(); }
    const GradedPoly& coeff(int n) const { return c_.at(static_cast<size_t>(n)); }
    const GradedPoly& classical() const { return c_.front(); }
    bool is_zero() const;

    EpsSeries operator+(const EpsSeries& rhs) const;
    EpsSeries operator-(const EpsSeries& rhs) const;
    EpsSeries operator-() const;
    EpsSeries operator*(const EpsSeries& rhs) const;
    EpsSeries operator*(const Rat& s) const;
    EpsSeries& operator+=(const EpsSeries& rhs) { return *this = *this + rhs; }
    EpsSeries& operator-=(const EpsSeries& rhs) { return *this = *this - rhs; }
    bool operator==(const EpsSeries& rhs) const;

    bool divisible_by_eps(int k) const;
    // multiply by eps^k; negative k divides and throws unless divisible
    EpsSeries shifted(int k) const;

    std::string str() const;

private:
    std::vector<GradedPoly> c_;
};

inline EpsSeries operator*(const GradedPoly& p, const EpsSeries& s) {
    return EpsSeries::constant(p, s.order()) * s;
}

// Parses "<expr>" over the context extended by a formal even generator `eps`,
// then splits by eps-powers. Orders above the truncation are rejected.
EpsSeries parse_eps_series(const std::string& text, const ContextPtr& ctx, int order);

} // namespace gpa
