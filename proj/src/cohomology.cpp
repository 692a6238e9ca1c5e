#include "syzkit/cohomology.hpp"

#include <algorithm>

namespace syzkit {

namespace {

using MonoKey = std::vector<std::pair<std::string, std::uint16_t>>;
using FlatKey = std::pair<Mask, MonoKey>;

std::map<FlatKey, GR> flatten(const Form& a) {
    std::map<FlatKey, GR> out;
    for (const auto& [m, c] : a.terms())
        for (const auto& [e, v] : c.terms()) {
            MonoKey k;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) k.emplace_back(c.vars()[i], e[i]);
            out[{m, k}] += v;
        }
    return out;
}

/// Columns are flattened forms; rows are the union of their keys.
linalg::Matrix stack_columns(const std::vector<std::map<FlatKey, GR>>& cols) {
    std::map<FlatKey, std::size_t> rows;
    for (const auto& c : cols)
        for (const auto& [k, v] : c) rows.emplace(k, 0);
    std::size_t i = 0;
    for (auto& [k, idx] : rows) idx = i++;
    linalg::Matrix M(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [k, v] : cols[j]) M(rows.at(k), j) = v;
    return M;
}

std::vector<Poly> coefficient_monomials(const VarList& vars, int D) {
    std::vector<Poly> out;
    Exponents e(vars.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == vars.size()) {
            out.push_back(Poly::monomial(vars, e, GR(1)));
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[i] = static_cast<std::uint16_t>(k);
            rec(i + 1, left - k);
        }
        e[i] = 0;
    };
    rec(0, D);
    std::stable_sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });
    return out;
}

Form combine(const std::vector<Form>& basis, const linalg::Vector& v, const FramePtr& frame) {
    Form out(frame);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out += basis[i] * Poly(v[i]);
    return out;
}

/// Kernel vectors followed by a choice of representatives independent modulo the image columns.
std::vector<linalg::Vector> complement_of_image(const linalg::Matrix& image, const std::vector<linalg::Vector>& kernel,
                                                std::size_t dim) {
    std::vector<linalg::Vector> cols;
    for (std::size_t j = 0; j < image.cols(); ++j) cols.push_back(image.column(j));
    std::size_t r = cols.empty() ? 0 : linalg::rank(linalg::Matrix::from_columns(cols, dim));
    std::vector<linalg::Vector> reps;
    for (const auto& v : kernel) {
        cols.push_back(v);
        std::size_t r2 = linalg::rank(linalg::Matrix::from_columns(cols, dim));
        if (r2 > r) {
            reps.push_back(v);
            r = r2;
        } else {
            cols.pop_back();
        }
    }
    return reps;
}

}  // namespace

FiniteComplex::FiniteComplex(FramePtr frame, int D, GenClass first, bool complex,
                             std::optional<SymplecticData> symplectic, std::optional<GammaAction> invariance)
    : frame_(std::move(frame)),
      D_(D),
      first_(first),
      complex_(complex),
      symplectic_(std::move(symplectic)),
      invariance_(invariance) {
    if (D < 0) throw Error("degree bound must be non-negative");
    if (symplectic_ && !symplectic_->has_pairing()) throw Error("symplectic side: " + symplectic_->refusal());
    if (invariance_ && !invariance_->nil) throw Error("invariance needs nilmanifold data");
    monomials_ = coefficient_monomials(frame_->base_vars(), D);
}

FiniteComplex FiniteComplex::complex_side(const SemiflatPair& pair, int D, std::optional<GammaAction> inv) {
    return FiniteComplex(pair.complex_frame(), D, pair.complex().fiber(), true, std::nullopt, inv);
}

FiniteComplex FiniteComplex::symplectic_side(const SemiflatPair& pair, int D, std::optional<GammaAction> inv) {
    return FiniteComplex(pair.x(), D, GenClass::FiberX, false, pair.symplectic(), inv);
}

const FiniteComplex::Slot& FiniteComplex::slot(int p, int q) const {
    auto it = slots_.find({p, q});
    if (it != slots_.end()) return it->second;
    Slot s;
    const std::size_t m = frame_->size();
    if (p >= 0 && q >= 0 && p + q <= static_cast<int>(m)) {
        std::vector<Mask> masks;
        for (Mask mk = 0; mk < (Mask{1} << m); ++mk)
            if (leg_count(*frame_, mk, first_) == p && leg_count(*frame_, mk, GenClass::Base) == q &&
                popcount(mk) == p + q)
                masks.push_back(mk);
        std::sort(masks.begin(), masks.end(), MaskLess{});
        auto universe = std::make_shared<const VarList>(frame_->base_vars());
        for (Mask mk : masks)
            for (const auto& mono : monomials_) {
                s.index.emplace(std::make_pair(mk, mono.over(universe).terms().begin()->first), s.ambient.size());
                s.ambient.push_back(Form::monomial(frame_, mk, mono));
            }
    }
    if (invariance_ && !s.ambient.empty()) {
        std::vector<std::map<FlatKey, GR>> residues;
        for (const auto& b : s.ambient) residues.push_back(flatten(gamma_residue(*invariance_->nil, b, invariance_->labels)));
        linalg::Matrix R = stack_columns(residues);
        std::vector<linalg::Vector> null;
        if (R.rows() == 0) {
            for (std::size_t j = 0; j < s.ambient.size(); ++j) {
                linalg::Vector v(s.ambient.size(), GR(0));
                v[j] = GR(1);
                null.push_back(v);
            }
        } else {
            null = linalg::nullspace(R);
        }
        for (const auto& v : null) s.basis.push_back(combine(s.ambient, v, frame_));
        s.span = linalg::Matrix::from_columns(null, s.ambient.size());
    } else {
        s.basis = s.ambient;
    }
    // the operators must stay inside the degree bound
    auto check = [&](const Form& img, const Form& b, const char* op) {
        auto universe = std::make_shared<const VarList>(frame_->base_vars());
        Form x = convert(img, frame_);
        for (const auto& [mk, c] : x.terms()) {
            for (const auto& u : c.used_vars())
                if (std::find(universe->begin(), universe->end(), u) == universe->end())
                    throw SpanEscape(std::string(op) + " image has a non-base symbol", x.str());
            if (c.degree() > D_)
                throw SpanEscape(std::string(op) + " leaves the span of coefficient degree <= " + std::to_string(D_) +
                                     "; raise D (image of " + b.str() + ")",
                                 x.str());
        }
    };
    for (const auto& b : s.basis) {
        check(exterior_d(b), b, "d");
        if (symplectic_) check(syzkit::d_lambda(b, *symplectic_), b, "d^Lambda");
    }
    return slots_.emplace(std::make_pair(p, q), std::move(s)).first->second;
}

const std::vector<Form>& FiniteComplex::basis(int p, int q) const { return slot(p, q).basis; }

linalg::Vector FiniteComplex::ambient_coordinates(const Slot& s, const Form& a, int p, int q) const {
    linalg::Vector v(s.ambient.size(), GR(0));
    auto universe = std::make_shared<const VarList>(frame_->base_vars());
    Form x = convert(a, frame_);
    for (const auto& [mk, c] : x.terms()) {
        Poly cu = c.over(universe);
        for (const auto& [e, val] : cu.terms()) {
            auto it = s.index.find({mk, e});
            if (it == s.index.end())
                throw SpanEscape("form is not in the (" + std::to_string(p) + "," + std::to_string(q) +
                                     ") span of degree <= " + std::to_string(D_),
                                 Form::monomial(frame_, mk, c).str());
            v[it->second] += val;
        }
    }
    return v;
}

linalg::Vector FiniteComplex::coordinates(const Form& a, int p, int q) const {
    const Slot& s = slot(p, q);
    linalg::Vector v = ambient_coordinates(s, a, p, q);
    if (!s.span) return v;
    auto x = linalg::solve(*s.span, v);
    if (!x) throw SpanEscape("form is not in the invariant subspace", a.str());
    return *x;
}

linalg::Matrix FiniteComplex::matrix(const std::function<Form(const Form&)>& op, int p, int q, int tp, int tq) const {
    const auto& src = basis(p, q);
    const std::size_t rows = basis(tp, tq).size();
    std::vector<linalg::Vector> cols;
    for (const auto& b : src) cols.push_back(coordinates(op(b), tp, tq));
    return linalg::Matrix::from_columns(cols, rows);
}

Form FiniteComplex::del(const Form& a) const {
    if (!complex_) throw Error("complex has no complex structure");
    return dolbeault(a, frame_, first_).del;
}

Form FiniteComplex::delbar(const Form& a) const {
    if (!complex_) throw Error("complex has no complex structure");
    return dolbeault(a, frame_, first_).delbar;
}

Form FiniteComplex::d_lambda(const Form& a) const {
    if (!symplectic_) throw Error("complex has no symplectic form");
    return syzkit::d_lambda(a, *symplectic_);
}

namespace {

std::vector<linalg::Vector> kernel_of(const std::vector<Form>& basis, const std::vector<std::function<Form(const Form&)>>& ops) {
    std::vector<std::map<FlatKey, GR>> cols;
    for (const auto& b : basis) {
        std::map<FlatKey, GR> col;
        for (std::size_t k = 0; k < ops.size(); ++k)
            for (const auto& [key, v] : flatten(ops[k](b))) {
                // tag each operator's rows apart
                FlatKey tagged = key;
                tagged.second.insert(tagged.second.begin(), {"#op" + std::to_string(k), 1});
                col[tagged] += v;
            }
        cols.push_back(std::move(col));
    }
    linalg::Matrix M = stack_columns(cols);
    if (M.rows() == 0) {
        std::vector<linalg::Vector> all;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            linalg::Vector v(basis.size(), GR(0));
            v[j] = GR(1);
            all.push_back(v);
        }
        return all;
    }
    return linalg::nullspace(M);
}

CohomologyReport finish(std::string kind, const FiniteComplex& c, int p, int q, const std::vector<Form>& basis,
                        const std::vector<linalg::Vector>& kernel, const linalg::Matrix& image) {
    CohomologyReport r;
    r.kind = std::move(kind);
    r.D = c.D();
    r.p = p;
    r.q = q;
    std::size_t img_rank = image.cols() == 0 ? 0 : linalg::rank(image);
    auto reps = complement_of_image(image, kernel, basis.size());
    r.dim = kernel.size() - img_rank;
    if (reps.size() != r.dim) throw Error("image is not contained in the kernel");
    for (const auto& v : reps) r.representatives.push_back(combine(basis, v, c.frame()));
    r.operator_ranks = {{"space", basis.size()}, {"kernel", kernel.size()}, {"image", img_rank}};
    return r;
}

linalg::Matrix ddlambda_image(const FiniteComplex& c, int p, int q) {
    const std::size_t rows = c.basis(p, q).size();
    if (q < 1 || p + 1 > c.n()) return linalg::Matrix(rows, 0);
    return c.matrix([&](const Form& b) { return c.d(c.d_lambda(b)); }, p + 1, q - 1, p, q);
}

}  // namespace

CohomologyReport bott_chern(const FiniteComplex& c, int p, int q) {
    if (!c.has_complex()) throw Error("Bott-Chern cohomology needs the complex side");
    const auto& B = c.basis(p, q);
    auto kernel = kernel_of(B, {[&](const Form& b) { return c.d(b); }});
    linalg::Matrix image(B.size(), 0);
    if (p >= 1 && q >= 1)
        image = c.matrix([&](const Form& b) { return c.del(c.delbar(b)); }, p - 1, q - 1, p, q);
    return finish("bott-chern", c, p, q, B, kernel, image);
}

CohomologyReport tseng_yau(const FiniteComplex& c, int p, int q) {
    if (!c.has_symplectic()) throw Error("Tseng-Yau cohomology needs the symplectic side");
    const auto& B = c.basis(p, q);
    auto kernel = kernel_of(B, {[&](const Form& b) { return c.d(b); }, [&](const Form& b) { return c.d_lambda(b); }});
    return finish("tseng-yau", c, p, q, B, kernel, ddlambda_image(c, p, q));
}

CohomologyReport tseng_yau_total(const FiniteComplex& c, int k) {
    if (!c.has_symplectic()) throw Error("Tseng-Yau cohomology needs the symplectic side");
    std::vector<Form> B;
    std::vector<std::pair<int, int>> slots;
    for (int p = 0; p <= k; ++p) {
        const auto& s = c.basis(p, k - p);
        B.insert(B.end(), s.begin(), s.end());
        slots.emplace_back(p, k - p);
    }
    auto kernel = kernel_of(B, {[&](const Form& b) { return c.d(b); }, [&](const Form& b) { return c.d_lambda(b); }});
    auto coords = [&](const Form& a) {
        linalg::Vector v;
        Form x = convert(a, c.frame());
        for (auto [p, q] : slots) {
            auto part = c.coordinates(bidegree_project(x, c.first(), p, GenClass::Base, q), p, q);
            v.insert(v.end(), part.begin(), part.end());
        }
        return v;
    };
    std::vector<linalg::Vector> cols;
    for (int p = 0; p <= k + 1; ++p)
        for (const auto& b : c.basis(p, k + 1 - p)) {
            Form img = c.d(c.d_lambda(b));
            if (!img.is_zero()) cols.push_back(coords(img));
        }
    linalg::Matrix image = linalg::Matrix::from_columns(cols, B.size());
    return finish("tseng-yau-total", c, k, -1, B, kernel, image);
}

MirrorComparison mirror_compare(const FiniteComplex& symplectic, const FiniteComplex& complex, const SemiflatPair& pair,
                                int p, int q) {
    const int n = pair.n();
    MirrorComparison out{bott_chern(complex, p, q), tseng_yau(symplectic, n - p, q), {}};
    CheckReport& r = out.checks;
    r.add("dims", out.bott_chern.dim == out.tseng_yau.dim,
          "dim BC(" + std::to_string(p) + "," + std::to_string(q) + ") = dim TY(" + std::to_string(n - p) + "," +
              std::to_string(q) + ")",
          std::to_string(out.bott_chern.dim) + " vs " + std::to_string(out.tseng_yau.dim));

    const bool odd = ((n * (n - 1)) / 2) % 2 != 0;
    bool closed = true, in_slot = true, involution = true;
    std::string witness;
    std::vector<linalg::Vector> cols;
    linalg::Matrix image = ddlambda_image(symplectic, n - p, q);
    for (std::size_t j = 0; j < image.cols(); ++j) cols.push_back(image.column(j));
    const std::size_t dim = symplectic.basis(n - p, q).size();
    std::size_t base_rank = cols.empty() ? 0 : linalg::rank(linalg::Matrix::from_columns(cols, dim));
    for (const auto& rep : out.bott_chern.representatives) {
        Form T = convert(fm_forward(rep, pair), symplectic.frame());
        if (!symplectic.d(T).is_zero() || !symplectic.d_lambda(T).is_zero()) {
            closed = false;
            if (witness.empty()) witness = T.str();
        }
        try {
            cols.push_back(symplectic.coordinates(T, n - p, q));
        } catch (const SpanEscape& e) {
            in_slot = false;
            if (witness.empty()) witness = e.witness;
        }
        Form back = convert(fm_backward(T, pair), complex.frame());
        if (!(back == convert(rep, complex.frame()) * Poly(odd ? -1 : 1))) involution = false;
    }
    r.add("representatives-closed", closed, "d FT(a) = 0 and d^Lambda FT(a) = 0",
          witness.empty() ? std::nullopt : std::optional(witness));
    r.add("representatives-in-slot", in_slot, "FT(a) lies in the (n-p,q) span");
    bool independent = false;
    if (in_slot) {
        std::size_t rk = cols.empty() ? 0 : linalg::rank(linalg::Matrix::from_columns(cols, dim));
        independent = rk == base_rank + out.bott_chern.representatives.size();
    }
    r.add("representatives-independent", independent, "independent modulo d d^Lambda images");
    r.add("involution", involution, "FT applied twice is (-1)^{n(n-1)/2}");
    return out;
}

}  // namespace syzkit
