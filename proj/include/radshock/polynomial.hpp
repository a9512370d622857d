#ifndef RADSHOCK_POLYNOMIAL_HPP
#define RADSHOCK_POLYNOMIAL_HPP

#include <cstddef>
#include <vector>

namespace radshock {

// Dense polynomial in the monomial basis; coeffs[k] multiplies x^k.
// Only the handful of operations the reduced system needs.
class Polynomial {
public:
    Polynomial() : c_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(0.0);
    }

    static Polynomial constant(double v) { return Polynomial({v}); }
    // a + b x
    static Polynomial linear(double a, double b) { return Polynomial({a, b}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }
    double coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }

    double operator()(double x) const {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<double> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k)
            d[k - 1] = static_cast<double>(k) * c_[k];
        return Polynomial(std::move(d));
    }

    Polynomial derivative(int order) const {
        Polynomial p = *this;
        for (int i = 0; i < order; ++i) p = p.derivative();
        return p;
    }

    Polynomial operator*(const Polynomial& o) const {
        std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] += c_[i] * o.c_[j];
        return Polynomial(std::move(r));
    }

    Polynomial operator*(double s) const {
        std::vector<double> r = c_;
        for (double& v : r) v *= s;
        return Polynomial(std::move(r));
    }

    Polynomial pow3() const { return (*this) * (*this) * (*this); }

private:
    std::vector<double> c_;
};

} // namespace radshock

#endif
