#include "syzkit/exterior.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "syzkit/calculus.hpp"
#include "syzkit/linalg.hpp"

namespace syzkit {

std::string to_string(GenClass c) {
    switch (c) {
        case GenClass::FiberX: return "FiberX";
        case GenClass::FiberMirror: return "FiberMirror";
        case GenClass::Base: return "Base";
        case GenClass::Frame: return "Frame";
    }
    return "?";
}

GenClass gen_class_from_string(const std::string& s) {
    if (s == "FiberX") return GenClass::FiberX;
    if (s == "FiberMirror") return GenClass::FiberMirror;
    if (s == "Base") return GenClass::Base;
    if (s == "Frame") return GenClass::Frame;
    throw Error("unknown generator class: " + s);
}

int popcount(Mask m) { return std::popcount(m); }

bool MaskLess::operator()(Mask a, Mask b) const {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    if (a == b) return false;
    Mask x = a ^ b;
    Mask low = x & (~x + 1);
    return (a & low) != 0;
}

std::vector<std::size_t> mask_indices(Mask m) {
    std::vector<std::size_t> out;
    while (m) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

Mask mask_of(const std::vector<std::size_t>& indices) {
    Mask m = 0;
    for (auto i : indices) {
        if (i >= 64) throw Error("generator index out of range");
        m |= Mask{1} << i;
    }
    return m;
}

int koszul_sign(Mask a, Mask b) {
    int inversions = 0;
    Mask rest = b;
    while (rest) {
        int j = std::countr_zero(rest);
        rest &= rest - 1;
        Mask above = (j == 63) ? 0 : (~Mask{0} << (j + 1));
        inversions += std::popcount(a & above);
    }
    return (inversions & 1) ? -1 : 1;
}

namespace {

// Sort a list of generator indices; returns the mask and the permutation sign (0 on repeats).
std::pair<Mask, int> sorted_mask(std::vector<std::size_t> idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return {0, 0};
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return {mask_of(idx), sign};
}

void add_term(FormTerms& t, Mask m, const Poly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

bool same_frame(const FramePtr& a, const FramePtr& b) { return a == b || a->equivalent(*b); }

FormTerms degree_one_terms(const Form& f, const char* what) {
    for (const auto& [m, c] : f.terms())
        if (popcount(m) != 1) throw Error(std::string(what) + " must be a one-form");
    return f.terms();
}

// Inverse of the change of basis new = M · parent, as rows parent_j = Σ_i inv[j][i] new_i.
std::vector<std::vector<Poly>> invert_change_of_basis(const std::vector<std::vector<Poly>>& M) {
    const std::size_t m = M.size();
    bool constant = true;
    for (const auto& row : M)
        for (const auto& p : row)
            if (!p.is_constant()) constant = false;
    std::vector<std::vector<Poly>> inv(m, std::vector<Poly>(m));
    if (constant) {
        linalg::Matrix A(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) A(i, j) = M[i][j].constant_value().value_or(GR(0));
        linalg::Matrix Ai = linalg::inverse(A);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) inv[i][j] = Poly(Ai(i, j));
        return inv;
    }
    // Unit diagonal with an acyclic dependency graph: parent_j = new_j − Σ_{k≠j} M[j][k] parent_k.
    for (std::size_t i = 0; i < m; ++i)
        if (!(M[i][i] == Poly(1))) throw Error("frame change of basis is not triangular");
    std::vector<int> state(m, 0);  // 0 new, 1 active, 2 done
    std::vector<std::size_t> order;
    std::function<void(std::size_t)> visit = [&](std::size_t j) {
        if (state[j] == 2) return;
        if (state[j] == 1) throw Error("frame change of basis is not triangular");
        state[j] = 1;
        for (std::size_t k = 0; k < m; ++k)
            if (k != j && !M[j][k].is_zero()) visit(k);
        state[j] = 2;
        order.push_back(j);
    };
    for (std::size_t j = 0; j < m; ++j) visit(j);
    for (auto j : order) {
        std::vector<Poly> row(m);
        row[j] = Poly(1);
        for (std::size_t k = 0; k < m; ++k) {
            if (k == j || M[j][k].is_zero()) continue;
            for (std::size_t i = 0; i < m; ++i)
                if (!inv[k][i].is_zero()) row[i] -= M[j][k] * inv[k][i];
        }
        inv[j] = std::move(row);
    }
    return inv;
}

}  // namespace

// ---------------------------------------------------------------------------
// FrameSpec

FramePtr FrameSpec::coordinate(std::vector<Generator> gens, VarList base_vars, int n) {
    if (gens.size() > 64) throw Error("at most 64 generators per frame");
    std::shared_ptr<FrameSpec> f(new FrameSpec());
    std::set<std::string> seen;
    for (auto& g : gens) {
        if (!seen.insert(g.label).second) throw Error("duplicate generator label " + g.label);
        if (g.cls == GenClass::Frame) throw Error("coordinate frames cannot hold Frame generators");
        g.leg = g.cls;
        if (g.cls == GenClass::Base && !g.base_var) throw Error("base generator without variable: " + g.label);
    }
    f->gens_ = std::move(gens);
    f->base_vars_ = std::move(base_vars);
    f->n_ = n;
    const std::size_t m = f->gens_.size();
    f->structure_.assign(m, FormTerms{});
    f->conj_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        f->conj_[i][Mask{1} << i] = Poly(1);
        if (f->gens_[i].base_var) f->base_diff_[*f->gens_[i].base_var][Mask{1} << i] = Poly(1);
    }
    return f;
}

FramePtr FrameSpec::derived(FramePtr parent, std::vector<Generator> gens, const std::vector<Form>& expansions,
                            const std::optional<std::vector<Form>>& structure) {
    const std::size_t m = gens.size();
    if (m != parent->size() || expansions.size() != m)
        throw Error("derived frame must have as many generators as its parent");
    std::shared_ptr<FrameSpec> f(new FrameSpec());
    std::set<std::string> seen;
    for (const auto& g : gens)
        if (!seen.insert(g.label).second) throw Error("duplicate generator label " + g.label);
    f->gens_ = std::move(gens);
    f->base_vars_ = parent->base_vars_;
    f->n_ = parent->n_;
    f->parent_ = parent;

    std::vector<std::vector<Poly>> M(m, std::vector<Poly>(m));
    for (std::size_t i = 0; i < m; ++i) {
        if (!same_frame(expansions[i].frame(), parent)) throw Error("expansion is not over the parent frame");
        auto t = degree_one_terms(expansions[i], "frame expansion");
        f->expansion_.push_back(t);
        for (const auto& [mk, c] : t) M[i][static_cast<std::size_t>(std::countr_zero(mk))] = c;
    }
    auto inv = invert_change_of_basis(M);
    f->inverse_.resize(m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (!inv[j][i].is_zero()) f->inverse_[j][Mask{1} << i] = inv[j][i];

    FramePtr self = f;
    for (const auto& [var, terms] : parent->base_diff_) {
        Form dr(parent, terms);
        f->base_diff_[var] = frame_collect(dr, self).terms();
    }
    f->conj_.resize(m);
    for (std::size_t i = 0; i < m; ++i) f->conj_[i] = frame_collect(f->expansion(i).conj(), self).terms();

    f->structure_.resize(m);
    if (structure) {
        if (structure->size() != m) throw Error("structure equations: wrong count");
        for (std::size_t i = 0; i < m; ++i) {
            if (!same_frame((*structure)[i].frame(), self)) throw Error("structure equation over wrong frame");
            f->structure_[i] = (*structure)[i].terms();
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) f->structure_[i] = frame_collect(exterior_d(f->expansion(i)), self).terms();
    }
    return f;
}

std::optional<std::size_t> FrameSpec::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].label == label) return i;
    return std::nullopt;
}

std::size_t FrameSpec::require_index(const std::string& label) const {
    auto i = index_of(label);
    if (!i) throw Error("unknown generator " + label);
    return *i;
}

std::vector<std::string> FrameSpec::labels() const {
    std::vector<std::string> out;
    for (const auto& g : gens_) out.push_back(g.label);
    return out;
}

FramePtr FrameSpec::root() const {
    FramePtr f = self();
    while (f->parent_) f = f->parent_;
    return f;
}

bool FrameSpec::equivalent(const FrameSpec& o) const {
    if (this == &o) return true;
    if (gens_.size() != o.gens_.size() || n_ != o.n_) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto &a = gens_[i], &b = o.gens_[i];
        if (a.label != b.label || a.cls != b.cls || a.leg != b.leg || a.base_var != b.base_var) return false;
    }
    if ((parent_ == nullptr) != (o.parent_ == nullptr)) return false;
    if (!parent_) return true;
    if (!parent_->equivalent(*o.parent_)) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto &x = expansion_[i], &y = o.expansion_[i];
        if (x.size() != y.size()) return false;
        for (auto it = x.begin(), jt = y.begin(); it != x.end(); ++it, ++jt)
            if (it->first != jt->first || !(it->second == jt->second)) return false;
    }
    return true;
}

Mask FrameSpec::leg_mask(GenClass leg) const {
    Mask m = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].leg == leg) m |= Mask{1} << i;
    return m;
}

Mask FrameSpec::full_mask() const { return gens_.size() == 64 ? ~Mask{0} : (Mask{1} << gens_.size()) - 1; }

Form FrameSpec::expansion(std::size_t i) const {
    if (!parent_) throw Error("coordinate frame has no expansion");
    return Form(parent_, expansion_.at(i));
}

Form FrameSpec::parent_in_frame(std::size_t j) const {
    if (!parent_) throw Error("coordinate frame has no parent");
    return Form(self(), inverse_.at(j));
}

Form FrameSpec::structure(std::size_t i) const { return Form(self(), structure_.at(i)); }

Form FrameSpec::base_differential(const std::string& var) const {
    auto it = base_diff_.find(var);
    if (it == base_diff_.end()) return Form(self());
    return Form(self(), it->second);
}

Form FrameSpec::conj_generator(std::size_t i) const { return Form(self(), conj_.at(i)); }

// ---------------------------------------------------------------------------
// Form

Form::Form(FramePtr frame) : frame_(std::move(frame)) {
    if (!frame_) throw Error("form without frame");
}

Form::Form(FramePtr frame, FormTerms terms) : frame_(std::move(frame)) {
    if (!frame_) throw Error("form without frame");
    Mask full = frame_->full_mask();
    for (auto& [m, c] : terms) {
        if ((m & ~full) != 0) throw Error("form term outside its frame");
        if (!c.is_zero()) terms_.emplace(m, std::move(c));
    }
}

Form Form::scalar(FramePtr frame, const Poly& c) {
    Form f(std::move(frame));
    add_term(f.terms_, 0, c);
    return f;
}

Form Form::generator(FramePtr frame, const std::string& label, const Poly& c) {
    auto i = frame->require_index(label);
    return generator(std::move(frame), i, c);
}

Form Form::generator(FramePtr frame, std::size_t index, const Poly& c) {
    if (index >= frame->size()) throw Error("generator index out of range");
    return monomial(std::move(frame), Mask{1} << index, c);
}

Form Form::monomial(FramePtr frame, Mask m, const Poly& c) {
    FormTerms t;
    add_term(t, m, c);
    return Form(std::move(frame), std::move(t));
}

Form Form::wedge_of(FramePtr frame, const std::vector<std::string>& labels, const Poly& c) {
    std::vector<std::size_t> idx;
    for (const auto& l : labels) idx.push_back(frame->require_index(l));
    auto [m, sign] = sorted_mask(idx);
    if (sign == 0) return Form(std::move(frame));
    return monomial(std::move(frame), m, c * GR(sign));
}

Poly Form::coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Poly() : it->second;
}

int Form::max_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, popcount(m));
    return d;
}

std::optional<int> Form::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = popcount(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (popcount(m) != d) return std::nullopt;
    return d;
}

Form Form::component(int degree) const {
    Form out(frame_);
    for (const auto& [m, c] : terms_)
        if (popcount(m) == degree) out.terms_.emplace(m, c);
    return out;
}

void Form::check_same_frame(const Form& o, const char* op) const {
    if (!same_frame(frame_, o.frame_)) throw Error(std::string("frame mismatch in ") + op);
}

Form& Form::operator+=(const Form& o) {
    check_same_frame(o, "addition");
    for (const auto& [m, c] : o.terms_) add_term(terms_, m, c);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    check_same_frame(o, "subtraction");
    for (const auto& [m, c] : o.terms_) add_term(terms_, m, -c);
    return *this;
}

Form& Form::operator*=(const Poly& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= c;
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

Form Form::operator-() const {
    Form out(frame_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

bool operator==(const Form& a, const Form& b) {
    if (!same_frame(a.frame_, b.frame_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto it = a.terms_.begin(), jt = b.terms_.begin(); it != a.terms_.end(); ++it, ++jt)
        if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
}

Form Form::map_coeffs(const std::function<Poly(const Poly&)>& f) const {
    Form out(frame_);
    for (const auto& [m, c] : terms_) add_term(out.terms_, m, f(c));
    return out;
}

Form Form::conj() const {
    std::vector<Form> images;
    for (std::size_t i = 0; i < frame_->size(); ++i) images.push_back(frame_->conj_generator(i));
    Form coeffs_conj = map_coeffs([](const Poly& p) { return p.conj(); });
    return substitute_generators(coeffs_conj, images, frame_);
}

Form Form::real_part() const { return (*this + conj()) * Poly(GR::fraction(1, 2)); }

Form Form::imag_part() const { return (*this - conj()) * Poly(GR(0, mpq_class(-1, 2))); }

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string cs = c.str();
        if (m == 0) {
            os << cs;
            continue;
        }
        if (cs != "1") os << "(" << cs << ")*";
        bool f2 = true;
        for (auto i : mask_indices(m)) {
            if (!f2) os << "^";
            f2 = false;
            os << frame_->gen(i).label;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Algebra

Form wedge(const Form& a, const Form& b) {
    if (!same_frame(a.frame(), b.frame())) throw Error("frame mismatch in wedge");
    FormTerms out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            Poly c = ca * cb;
            if (koszul_sign(ma, mb) < 0) c = -c;
            add_term(out, ma | mb, c);
        }
    return Form(a.frame(), std::move(out));
}

Form wedge_all(const std::vector<Form>& factors, const FramePtr& frame) {
    Form out = Form::scalar(frame, Poly(1));
    for (const auto& f : factors) out = wedge(out, f);
    return out;
}

Form power(const Form& a, unsigned k) {
    Form out = Form::scalar(a.frame(), Poly(1));
    for (unsigned i = 0; i < k; ++i) out = wedge(out, a);
    return out;
}

Form exp_nilpotent(const Form& a) {
    for (const auto& [m, c] : a.terms())
        if (popcount(m) == 0 || popcount(m) % 2 != 0) throw Error("exp needs even terms of positive degree");
    Form out = Form::scalar(a.frame(), Poly(1));
    Form term = out;
    for (long k = 1; ; ++k) {
        term = wedge(term, a) * Poly(GR::fraction(1, k));
        if (term.is_zero()) break;
        out += term;
    }
    return out;
}

int leg_count(const FrameSpec& f, Mask m, GenClass c) { return popcount(m & f.leg_mask(c)); }

Form bidegree_project(const Form& a, GenClass first, int p, GenClass second, int q) {
    const Mask mf = a.frame()->leg_mask(first), ms = a.frame()->leg_mask(second);
    FormTerms out;
    for (const auto& [m, c] : a.terms())
        if (popcount(m & mf) == p && popcount(m & ms) == q && popcount(m) == p + q) out.emplace(m, c);
    return Form(a.frame(), std::move(out));
}

Form contract(const Form& a, std::size_t index) {
    if (index >= a.frame()->size()) throw Error("contraction index out of range");
    const Mask bit = Mask{1} << index;
    FormTerms out;
    for (const auto& [m, c] : a.terms()) {
        if (!(m & bit)) continue;
        int below = popcount(m & (bit - 1));
        add_term(out, m & ~bit, (below & 1) ? -c : c);
    }
    return Form(a.frame(), std::move(out));
}

Form contract(const Form& a, const std::string& label) { return contract(a, a.frame()->require_index(label)); }

Form substitute_generators(const Form& a, const std::vector<Form>& images, const FramePtr& target) {
    if (images.size() != a.frame()->size()) throw Error("substitution needs one image per generator");
    for (const auto& im : images)
        if (!same_frame(im.frame(), target)) throw Error("substitution image over wrong frame");
    Form out(target);
    // products of images for the masks seen so far, keyed by mask
    std::map<Mask, Form> cache;
    cache.emplace(0, Form::scalar(target, Poly(1)));
    std::function<const Form&(Mask)> product = [&](Mask m) -> const Form& {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        int top = 63 - std::countl_zero(m);
        Mask rest = m & ~(Mask{1} << top);
        Form p = wedge(product(rest), images[static_cast<std::size_t>(top)]);
        return cache.emplace(m, std::move(p)).first->second;
    };
    for (const auto& [m, c] : a.terms()) out += product(m) * c;
    return out;
}

Form relabel(const Form& a, const FramePtr& target, const std::map<std::string, std::string>& rename) {
    const auto& src = *a.frame();
    std::vector<std::size_t> map(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        auto it = rename.find(src.gen(i).label);
        const std::string& l = it == rename.end() ? src.gen(i).label : it->second;
        auto j = target->index_of(l);
        if (!j) {
            bool used = false;
            for (const auto& [m, c] : a.terms())
                if (m & (Mask{1} << i)) used = true;
            if (used) throw Error("generator " + l + " has no counterpart in target frame");
            map[i] = SIZE_MAX;
        } else {
            map[i] = *j;
        }
    }
    FormTerms out;
    for (const auto& [m, c] : a.terms()) {
        std::vector<std::size_t> idx;
        for (auto i : mask_indices(m)) idx.push_back(map[i]);
        auto [tm, sign] = sorted_mask(idx);
        if (sign == 0) throw Error("relabel maps two generators to one");
        add_term(out, tm, sign < 0 ? -c : c);
    }
    return Form(target, std::move(out));
}

Form fiber_pushforward(const Form& a, GenClass fiber, const FramePtr& target) {
    const auto& f = *a.frame();
    const Mask fm = f.leg_mask(fiber);
    if (popcount(fm) != f.n()) throw Error("fiber class does not have n generators");
    FormTerms kept;
    for (const auto& [m, c] : a.terms()) {
        if ((m & fm) != fm) continue;
        Mask rest = m & ~fm;
        // e_m = s · e_F ∧ e_rest with s the merge sign of (F, rest)
        int s = koszul_sign(fm, rest);
        add_term(kept, rest, s < 0 ? -c : c);
    }
    return relabel(Form(a.frame(), std::move(kept)), target);
}

Form frame_expand(const Form& a) {
    const auto& f = *a.frame();
    if (f.is_root()) return a;
    std::vector<Form> images;
    for (std::size_t i = 0; i < f.size(); ++i) images.push_back(f.expansion(i));
    return substitute_generators(a, images, f.parent());
}

Form expand_to_root(const Form& a) {
    Form cur = a;
    while (!cur.frame()->is_root()) cur = frame_expand(cur);
    return cur;
}

Form frame_collect(const Form& a, const FramePtr& frame) {
    if (frame->is_root()) throw Error("cannot collect into a coordinate frame");
    if (!same_frame(a.frame(), frame->parent())) throw Error("collect: form is not over the parent frame");
    std::vector<Form> images;
    for (std::size_t j = 0; j < frame->size(); ++j) images.push_back(frame->parent_in_frame(j));
    return substitute_generators(a, images, frame);
}

Form convert(const Form& a, const FramePtr& target) {
    if (same_frame(a.frame(), target)) return Form(target, a.terms());
    if (!a.frame()->root()->equivalent(*target->root())) throw Error("convert: frames have different roots");
    std::vector<FramePtr> chain;
    for (FramePtr f = target; f && !f->is_root(); f = f->parent()) chain.push_back(f);
    // shortcut when a's frame is on the target chain
    Form cur = a;
    std::size_t start = chain.size();
    for (std::size_t k = 0; k < chain.size(); ++k)
        if (same_frame(chain[k], a.frame())) start = k;
    if (start == chain.size()) {
        cur = expand_to_root(a);
        cur = Form(target->root(), cur.terms());
    } else {
        cur = Form(chain[start], a.terms());
    }
    for (std::size_t k = start; k-- > 0;) cur = frame_collect(cur, chain[k]);
    return cur;
}

}  // namespace syzkit
