#include "syzkit/calculus.hpp"

#include <algorithm>
#include <set>

namespace syzkit {

Form exterior_d(const Form& a) {
    const FramePtr& frame = a.frame();
    Form out(frame);
    std::map<std::string, Form> dr;
    const VarList& base = frame->base_vars();
    for (const auto& [m, c] : a.terms()) {
        Form mono = Form::monomial(frame, m);
        for (const auto& v : c.used_vars()) {
            if (std::find(base.begin(), base.end(), v) == base.end()) continue;
            auto it = dr.find(v);
            if (it == dr.end()) it = dr.emplace(v, frame->base_differential(v)).first;
            out += wedge(it->second, mono) * c.diff(v);
        }
        auto idx = mask_indices(m);
        for (std::size_t s = 0; s < idx.size(); ++s) {
            Form de = frame->structure(idx[s]);
            if (de.is_zero()) continue;
            Mask left = 0, right = 0;
            for (std::size_t t = 0; t < idx.size(); ++t) {
                if (t < s) left |= Mask{1} << idx[t];
                if (t > s) right |= Mask{1} << idx[t];
            }
            Form term = wedge(wedge(Form::monomial(frame, left), de), Form::monomial(frame, right));
            out += term * ((s % 2) ? -c : c);
        }
    }
    return out;
}

Form exterior_d_expanded(const Form& a) {
    Form root = expand_to_root(a);
    return convert(exterior_d(root), a.frame());
}

// ---------------------------------------------------------------------------
// Symplectic operators

SymplecticData::SymplecticData(Form omega) : omega_(std::move(omega)) {
    const std::size_t m = omega_.frame()->size();
    if (m % 2 != 0) {
        refusal_ = "odd-dimensional frame";
        return;
    }
    linalg::Matrix W(m, m);
    for (const auto& [mask, c] : omega_.terms()) {
        if (popcount(mask) != 2) {
            refusal_ = "omega is not a two-form";
            return;
        }
        auto cv = c.constant_value();
        if (!cv) {
            refusal_ = "omega has non-constant coefficients; no exact pairing";
            return;
        }
        auto idx = mask_indices(mask);
        W(idx[0], idx[1]) = *cv;
        W(idx[1], idx[0]) = -*cv;
    }
    if (linalg::rank(W) < m) {
        refusal_ = "omega is degenerate";
        return;
    }
    pairing_ = linalg::inverse(W);
}

SymplecticData SymplecticData::darboux(const FramePtr& frame, GenClass fiber) {
    std::vector<std::size_t> fib, base;
    for (std::size_t i = 0; i < frame->size(); ++i) {
        if (frame->gen(i).leg == fiber) fib.push_back(i);
        if (frame->gen(i).leg == GenClass::Base) base.push_back(i);
    }
    if (fib.size() != base.size()) throw Error("darboux: fiber and base counts differ");
    Form w(frame);
    for (std::size_t i = 0; i < fib.size(); ++i)
        w += wedge(Form::generator(frame, fib[i]), Form::generator(frame, base[i]));
    return SymplecticData(w);
}

const linalg::Matrix& SymplecticData::pairing() const {
    if (!pairing_) throw Error("no exact pairing: " + refusal_);
    return *pairing_;
}

Form lefschetz(const Form& a, const SymplecticData& s) { return wedge(convert(s.omega(), a.frame()), a); }

Form dual_lefschetz(const Form& a, const SymplecticData& s) {
    const linalg::Matrix& P = s.pairing();
    Form x = convert(a, s.frame());
    Form out(s.frame());
    const std::size_t m = s.frame()->size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (P(i, j).is_zero()) continue;
            Form t = contract(contract(x, j), i);
            if (!t.is_zero()) out += t * Poly(P(i, j));
        }
    return convert(out, a.frame());
}

Form d_lambda(const Form& a, const SymplecticData& s) {
    return exterior_d(dual_lefschetz(a, s)) - dual_lefschetz(exterior_d(a), s);
}

// ---------------------------------------------------------------------------
// Complex coordinates

namespace {

std::string index_suffix(const std::string& label) {
    auto pos = label.rfind('_');
    return pos == std::string::npos ? label : label.substr(pos + 1);
}

}  // namespace

ComplexBasis::ComplexBasis(const FramePtr& coordinates, GenClass fiber) : real_(coordinates), fiber_(fiber) {
    if (!coordinates->is_root()) throw Error("complex basis needs a coordinate frame");
    std::vector<std::size_t> fib, base;
    for (std::size_t i = 0; i < coordinates->size(); ++i) {
        if (coordinates->gen(i).cls == fiber) fib.push_back(i);
        else if (coordinates->gen(i).cls == GenClass::Base) base.push_back(i);
        else throw Error("complex basis: unexpected generator " + coordinates->gen(i).label);
    }
    if (fib.size() != base.size() || static_cast<int>(fib.size()) != coordinates->n())
        throw Error("complex basis: need n fiber and n base generators");
    n_ = static_cast<int>(fib.size());
    std::vector<Generator> gens;
    std::vector<Form> exps;
    for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < n_; ++i) {
            const auto& fl = coordinates->gen(fib[i]).label;
            const auto& bl = coordinates->gen(base[i]).label;
            std::string suffix = index_suffix(fl);
            Generator g;
            g.label = (pass == 0 ? "dz_" : "dzbar_") + suffix;
            g.cls = GenClass::Frame;
            g.leg = pass == 0 ? fiber : GenClass::Base;
            gens.push_back(g);
            GR im = pass == 0 ? GR::i() : -GR::i();
            exps.push_back(Form::generator(coordinates, fib[i]) + Form::generator(coordinates, base[i], Poly(im)));
            switch_labels_[g.label] = pass == 0 ? fl : bl;
            unswitch_labels_[pass == 0 ? fl : bl] = g.label;
        }
    complex_ = FrameSpec::derived(coordinates, gens, exps);
}

Dolbeault dolbeault(const Form& a, const ComplexBasis& b) { return dolbeault(a, b.complex_frame(), b.fiber()); }

Dolbeault dolbeault(const Form& a, const FramePtr& cf, GenClass hol) {
    Form c = convert(a, cf);
    Dolbeault out{Form(cf), Form(cf)};
    std::set<std::pair<int, int>> bideg;
    for (const auto& [m, coeff] : c.terms())
        bideg.emplace(leg_count(*cf, m, hol), leg_count(*cf, m, GenClass::Base));
    for (auto [p, q] : bideg) {
        Form dc = exterior_d(bidegree_project(c, hol, p, GenClass::Base, q));
        Form d1 = bidegree_project(dc, hol, p + 1, GenClass::Base, q);
        Form d2 = bidegree_project(dc, hol, p, GenClass::Base, q + 1);
        if (!(dc - d1 - d2).is_zero()) throw Error("d leaves bidegrees (p+1,q) and (p,q+1): not integrable");
        out.del += d1;
        out.delbar += d2;
    }
    return out;
}

Form del(const Form& a, const ComplexBasis& b) { return dolbeault(a, b).del; }

Form delbar(const Form& a, const ComplexBasis& b) { return dolbeault(a, b).delbar; }

Form polarization_switch(const Form& a, const ComplexBasis& b) {
    return relabel(convert(a, b.complex_frame()), b.real_frame(), b.switch_labels_);
}

Form polarization_switch_inverse(const Form& a, const ComplexBasis& b) {
    if (!a.frame()->equivalent(*b.real_frame())) throw Error("inverse switch expects the coordinate frame");
    return relabel(a, b.complex_frame(), b.unswitch_labels_);
}

}  // namespace syzkit
