#pragma once

#include <vector>

namespace sepkern {

// Real polynomial F(z) = sum_j coeffs[j] z^j. Trailing zeros are trimmed so
// the last coefficient is nonzero unless the polynomial is identically zero.
struct PolynomialSpec {
    std::vector<double> coeffs;

    PolynomialSpec() = default;
    explicit PolynomialSpec(std::vector<double> c) : coeffs(std::move(c)) { trim(); }

    static PolynomialSpec identity() { return PolynomialSpec({0.0, 1.0}); }

    static PolynomialSpec monomial(double delta, int d) {
        std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
        c.back() = delta;
        return PolynomialSpec(std::move(c));
    }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    double at(int j) const {
        return j >= 0 && j < static_cast<int>(coeffs.size()) ? coeffs[j] : 0.0;
    }

    double eval(double z) const {
        double v = 0.0;
        for (std::size_t j = coeffs.size(); j-- > 0;) v = v * z + coeffs[j];
        return v;
    }

    PolynomialSpec operator+(const PolynomialSpec& other) const {
        std::vector<double> c(std::max(coeffs.size(), other.coeffs.size()), 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = at(static_cast<int>(j)) + other.at(static_cast<int>(j));
        return PolynomialSpec(std::move(c));
    }

private:
    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    }
};

} // namespace sepkern
