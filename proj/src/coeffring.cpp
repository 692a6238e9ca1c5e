#include "syzkit/coeffring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace syzkit {

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::fraction(long num, long den, long im_num, long im_den) {
    if (den == 0 || im_den == 0) throw Error("zero denominator");
    return {mpq_class(num, den), mpq_class(im_num, im_den)};
}

GaussianRational GaussianRational::inverse() const {
    mpq_class n = norm();
    if (sgn(n) == 0) throw Error("division by zero Gaussian rational");
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string GaussianRational::str() const {
    auto q = [](const mpq_class& v) { return v.get_str(); };
    if (sgn(im_) == 0) return q(re_);
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = q(im_) + "i";
    if (sgn(re_) == 0) return imag;
    std::string sep = sgn(im_) > 0 ? "+" : "";
    return "(" + q(re_) + sep + imag + ")";
}

GR power(const GR& base, int exponent) {
    GR acc(1);
    GR b = exponent < 0 ? base.inverse() : base;
    for (int k = 0; k < std::abs(exponent); ++k) acc *= b;
    return acc;
}

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
            std::string na = a.substr(i, ie - i), nb = b.substr(j, je - j);
            na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
            nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
    return a < b;
}

// ---------------------------------------------------------------------------
// Poly

namespace {

std::shared_ptr<const VarList> empty_universe() {
    static const auto empty = std::make_shared<const VarList>();
    return empty;
}

// Position map from `from` into `to`; `to` must contain every symbol of `from`.
std::vector<std::size_t> embedding(const VarList& from, const VarList& to) {
    std::vector<std::size_t> pos(from.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        while (k < to.size() && to[k] != from[i]) ++k;
        if (k == to.size()) throw Error("variable universe embedding failed for " + from[i]);
        pos[i] = k;
    }
    return pos;
}

bool is_sub(const VarList& small, const VarList& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end(), natural_less);
}

}  // namespace

Poly::Poly() : vars_(empty_universe()) {}

Poly::Poly(const GR& constant) : vars_(empty_universe()) {
    if (!constant.is_zero()) terms_.emplace(Exponents{}, constant);
}

Poly::Poly(std::shared_ptr<const VarList> vars, TermMap terms) : vars_(std::move(vars)), terms_(std::move(terms)) {}

Poly Poly::var(const std::string& name) {
    TermMap t;
    t.emplace(Exponents{1}, GR(1));
    return Poly(std::make_shared<const VarList>(VarList{name}), std::move(t));
}

Poly Poly::monomial(const VarList& vars, const Exponents& exps, const GR& coeff) {
    if (vars.size() != exps.size()) throw Error("monomial: exponent/variable length mismatch");
    // sort variables naturally, carrying exponents along
    std::vector<std::pair<std::string, std::uint16_t>> pairs;
    for (std::size_t i = 0; i < vars.size(); ++i) pairs.emplace_back(vars[i], exps[i]);
    std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return natural_less(x.first, y.first); });
    VarList v;
    Exponents e;
    for (auto& [name, ex] : pairs) {
        if (!v.empty() && v.back() == name) {
            e.back() = static_cast<std::uint16_t>(e.back() + ex);
        } else {
            v.push_back(name);
            e.push_back(ex);
        }
    }
    TermMap t;
    if (!coeff.is_zero()) t.emplace(e, coeff);
    return Poly(std::make_shared<const VarList>(std::move(v)), std::move(t));
}

std::shared_ptr<const VarList> unify(const Poly& a, const Poly& b) {
    if (a.vars_ == b.vars_) return a.vars_;
    if (b.vars_->empty()) return a.vars_;
    if (a.vars_->empty()) return b.vars_;
    if (*a.vars_ == *b.vars_) return a.vars_;
    if (is_sub(*b.vars_, *a.vars_)) return a.vars_;
    if (is_sub(*a.vars_, *b.vars_)) return b.vars_;
    VarList u;
    std::set_union(a.vars_->begin(), a.vars_->end(), b.vars_->begin(), b.vars_->end(), std::back_inserter(u),
                   natural_less);
    return std::make_shared<const VarList>(std::move(u));
}

Poly Poly::over(const std::shared_ptr<const VarList>& universe) const {
    if (universe == vars_ || *universe == *vars_) return Poly(universe, terms_);
    auto pos = embedding(*vars_, *universe);
    TermMap t;
    for (const auto& [e, c] : terms_) {
        Exponents ne(universe->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
        t.emplace(std::move(ne), c);
    }
    return Poly(universe, std::move(t));
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree() == 0);
}

std::optional<GR> Poly::constant_value() const {
    if (terms_.empty()) return GR(0);
    if (!is_constant()) return std::nullopt;
    return terms_.begin()->second;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (auto x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

int Poly::degree_in(const VarList& subset) const {
    std::vector<bool> counted(vars_->size(), false);
    for (std::size_t i = 0; i < vars_->size(); ++i)
        counted[i] = std::find(subset.begin(), subset.end(), (*vars_)[i]) != subset.end();
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (counted[i]) s += e[i];
        d = std::max(d, s);
    }
    return d;
}

VarList Poly::used_vars() const {
    VarList out;
    for (std::size_t i = 0; i < vars_->size(); ++i) {
        for (const auto& [e, c] : terms_) {
            if (e[i] > 0) {
                out.push_back((*vars_)[i]);
                break;
            }
        }
    }
    return out;
}

GR Poly::coeff(const Exponents& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? GR(0) : it->second;
}

void Poly::add_scaled(const Poly& o, const GR& scale) {
    if (o.terms_.empty()) return;
    if (&o == this) {
        Poly copy = o;
        add_scaled(copy, scale);
        return;
    }
    auto u = unify(*this, o);
    if (u != vars_) *this = over(u);
    Poly converted;
    const Poly* from = &o;
    if (o.vars_ != u) {
        converted = o.over(u);
        from = &converted;
    }
    for (const auto& [e, c] : from->terms_) {
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (inserted) {
            if (!scale.is_one()) it->second *= scale;
        } else {
            if (scale.is_one())
                it->second += c;
            else
                it->second += c * scale;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
}

Poly& Poly::operator+=(const Poly& o) {
    add_scaled(o, GR(1));
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    add_scaled(o, GR(-1));
    return *this;
}

Poly& Poly::operator*=(const GR& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    if (c.is_one()) return *this;
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.terms_.empty() || b.terms_.empty()) return Poly();
    auto u = unify(a, b);
    const Poly pa = a.vars_ == u ? a : a.over(u);
    const Poly pb = b.vars_ == u ? b : b.over(u);
    Poly::TermMap out;
    Exponents e(u->size());
    for (const auto& [ea, ca] : pa.terms_) {
        for (const auto& [eb, cb] : pb.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
            auto [it, inserted] = out.try_emplace(e, ca);
            if (inserted) {
                it->second *= cb;
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return Poly(u, std::move(out));
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    return (a - b).is_zero();
}

Poly Poly::pow(unsigned k) const {
    Poly acc(1);
    Poly base = *this;
    while (k > 0) {
        if (k & 1U) acc *= base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return acc;
}

Poly Poly::diff(const std::string& var) const {
    auto it = std::find(vars_->begin(), vars_->end(), var);
    if (it == vars_->end()) return Poly();
    auto idx = static_cast<std::size_t>(it - vars_->begin());
    TermMap out;
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponents ne = e;
        ne[idx] = static_cast<std::uint16_t>(ne[idx] - 1);
        GR v = c * GR(static_cast<long>(e[idx]));
        auto [pos, inserted] = out.try_emplace(std::move(ne), v);
        if (!inserted) {
            pos->second += v;
            if (pos->second.is_zero()) out.erase(pos);
        }
    }
    return Poly(vars_, std::move(out));
}

Poly Poly::subst(const std::map<std::string, Poly>& assignment) const {
    std::vector<const Poly*> image(vars_->size(), nullptr);
    std::vector<Poly> own(vars_->size());
    for (std::size_t i = 0; i < vars_->size(); ++i) {
        auto it = assignment.find((*vars_)[i]);
        if (it != assignment.end()) {
            image[i] = &it->second;
        } else {
            own[i] = Poly::var((*vars_)[i]);
            image[i] = &own[i];
        }
    }
    // cache powers per variable
    std::vector<std::vector<Poly>> powers(vars_->size());
    Poly result;
    for (const auto& [e, c] : terms_) {
        Poly term(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(Poly(1));
            while (pw.size() <= e[i]) pw.push_back(pw.back() * *image[i]);
            term *= pw[e[i]];
        }
        result += term;
    }
    return result;
}

GR Poly::eval(const std::map<std::string, GR>& point) const {
    std::vector<const GR*> val(vars_->size(), nullptr);
    for (std::size_t i = 0; i < vars_->size(); ++i) {
        auto it = point.find((*vars_)[i]);
        if (it != point.end()) val[i] = &it->second;
    }
    GR acc;
    for (const auto& [e, c] : terms_) {
        GR t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!val[i]) throw Error("eval: unassigned variable " + (*vars_)[i]);
            t *= power(*val[i], e[i]);
        }
        acc += t;
    }
    return acc;
}

Poly Poly::conj() const {
    TermMap t;
    for (const auto& [e, c] : terms_) t.emplace(e, c.conj());
    return Poly(vars_, std::move(t));
}

Poly Poly::real_part() const {
    TermMap t;
    for (const auto& [e, c] : terms_)
        if (sgn(c.re()) != 0) t.emplace(e, GR(c.re()));
    return Poly(vars_, std::move(t));
}

Poly Poly::imag_part() const {
    TermMap t;
    for (const auto& [e, c] : terms_)
        if (sgn(c.im()) != 0) t.emplace(e, GR(c.im()));
    return Poly(vars_, std::move(t));
}

bool Poly::is_real() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_real(); });
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    // graded order: low degree first, then lexicographically larger exponent first
    std::vector<std::pair<const Exponents*, const GR*>> ordered;
    for (const auto& [e, c] : terms_) ordered.emplace_back(&e, &c);
    auto deg = [](const Exponents& e) {
        int s = 0;
        for (auto x : e) s += x;
        return s;
    };
    std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& x, const auto& y) {
        int dx = deg(*x.first), dy = deg(*y.first);
        if (dx != dy) return dx < dy;
        return *x.first > *y.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : ordered) {
        std::string mono;
        for (std::size_t i = 0; i < e->size(); ++i) {
            if ((*e)[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += (*vars_)[i];
            if ((*e)[i] > 1) mono += "^" + std::to_string((*e)[i]);
        }
        std::string cs = c->str();
        bool negative = c->is_real() ? sgn(c->re()) < 0 : (sgn(c->re()) == 0 && sgn(c->im()) < 0);
        if (negative) cs = (-*c).str();
        if (!first) os << (negative ? " - " : " + ");
        else if (negative) os << "-";
        if (mono.empty())
            os << cs;
        else if (cs == "1")
            os << mono;
        else
            os << cs << "*" << mono;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// PolyRatio

std::optional<GR> PolyRatio::as_constant() const {
    if (den.is_zero()) throw Error("PolyRatio with zero denominator");
    if (num.is_zero()) return GR(0);
    auto u = unify(num, den);
    Poly n = num.over(u), d = den.over(u);
    // ratio of leading coefficients, then verify proportionality
    const auto& [de, dc] = *d.terms().rbegin();
    GR lambda = n.coeff(de) / dc;
    if (lambda.is_zero()) return std::nullopt;
    if (n == d * lambda) return lambda;
    return std::nullopt;
}

std::optional<Poly> PolyRatio::as_poly() const {
    auto c = den.constant_value();
    if (!c || c->is_zero()) {
        if (auto k = as_constant()) return Poly(*k);
        return std::nullopt;
    }
    return num * c->inverse();
}

PolyRatio PolyRatio::inverse() const {
    if (num.is_zero()) throw Error("inverse of zero rational function");
    return PolyRatio{den, num};
}

std::string PolyRatio::str() const {
    if (auto c = as_constant()) return c->str();
    if (auto p = as_poly()) return p->str();
    return "(" + num.str() + ")/(" + den.str() + ")";
}

}  // namespace syzkit
