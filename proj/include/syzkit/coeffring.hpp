#pragma once

// Exact scalars: Gaussian rationals Q(i) and multivariate polynomials over them.
//
// Every coefficient of every differential form in syzkit is a Poly. Polynomials
// carry their own variable universe (a sorted list of symbol names); binary
// operations merge universes by name, so values built independently combine
// without any global registry.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace syzkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {}  // NOLINT: implicit by design of the scalar tower
    GaussianRational(mpq_class re, mpq_class im = 0);

    static GaussianRational i() { return {0, 1}; }
    static GaussianRational fraction(long num, long den, long im_num = 0, long im_den = 1);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    GaussianRational inverse() const;
    /// |z|^2 as a rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::string str() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

using GR = GaussianRational;

/// Integer power of a Gaussian rational (negative exponents invert).
GR power(const GR& base, int exponent);

/// "Natural" symbol order: digit runs compare numerically, so r_2 < r_12.
bool natural_less(const std::string& a, const std::string& b);

using Exponents = std::vector<std::uint16_t>;
using VarList = std::vector<std::string>;

class Poly {
public:
    using TermMap = std::map<Exponents, GR>;

    Poly();
    Poly(const GR& constant);  // NOLINT
    Poly(long constant) : Poly(GR(constant)) {}  // NOLINT

    static Poly var(const std::string& name);
    static Poly monomial(const VarList& vars, const Exponents& exps, const GR& coeff);

    const VarList& vars() const { return *vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The constant value, if the polynomial has no variable-dependent term.
    std::optional<GR> constant_value() const;
    int degree() const;  // total degree; -1 for zero
    /// Degree in a subset of variables (others count as 0).
    int degree_in(const VarList& subset) const;
    /// Symbols that actually occur with a positive exponent.
    VarList used_vars() const;

    /// Coefficient of the monomial with the given exponents over vars().
    GR coeff(const Exponents& exps) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const GR& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const GR& c) { return a *= c; }
    friend Poly operator*(const GR& c, Poly a) { return a *= c; }
    friend Poly operator/(Poly a, const GR& c) { return a *= c.inverse(); }
    Poly operator-() const;

    friend bool operator==(const Poly& a, const Poly& b);

    Poly pow(unsigned k) const;
    Poly diff(const std::string& var) const;
    Poly subst(const std::map<std::string, Poly>& assignment) const;
    /// Full evaluation; every used variable must be assigned.
    GR eval(const std::map<std::string, GR>& point) const;

    Poly conj() const;
    Poly real_part() const;
    Poly imag_part() const;
    bool is_real() const;

    /// Same polynomial over a larger (sorted) universe.
    Poly over(const std::shared_ptr<const VarList>& universe) const;

    std::string str() const;

private:
    Poly(std::shared_ptr<const VarList> vars, TermMap terms);
    void add_scaled(const Poly& o, const GR& scale);

    std::shared_ptr<const VarList> vars_;
    TermMap terms_;

    friend std::shared_ptr<const VarList> unify(const Poly& a, const Poly& b);
};

/// Sorted union of the universes of a and b (reusing a pointer when possible).
std::shared_ptr<const VarList> unify(const Poly& a, const Poly& b);

/// Quotient of polynomials, used for conformal factors.
struct PolyRatio {
    Poly num{1};
    Poly den{1};

    /// Value if num = c * den for a constant c.
    std::optional<GR> as_constant() const;
    /// num / den when den is a nonzero constant.
    std::optional<Poly> as_poly() const;
    PolyRatio inverse() const;
    bool is_zero() const { return num.is_zero(); }
    std::string str() const;
};

}  // namespace syzkit
