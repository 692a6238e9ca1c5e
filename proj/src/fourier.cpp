#include "syzkit/fourier.hpp"

#include <algorithm>

namespace syzkit {

namespace {

std::vector<std::string> default_suffixes(int n) {
    if (n < 1) throw Error("fiber rank must be positive");
    std::vector<std::string> s;
    for (int i = 1; i <= n; ++i) s.push_back(std::to_string(i));
    return s;
}

Generator coord(const std::string& label, GenClass c, std::optional<std::string> var = std::nullopt) {
    Generator g;
    g.label = label;
    g.cls = c;
    g.leg = c;
    g.base_var = std::move(var);
    return g;
}

}  // namespace

SemiflatPair::Frames SemiflatPair::make_frames(const std::vector<std::string>& suffixes) {
    Frames f;
    for (const auto& s : suffixes) f.vars.push_back("r_" + s);
    std::sort(f.vars.begin(), f.vars.end(), natural_less);
    const int n = static_cast<int>(suffixes.size());
    std::vector<Generator> gx, gxc, gc;
    for (const auto& s : suffixes) gx.push_back(coord("dtheta_" + s, GenClass::FiberX));
    for (const auto& s : suffixes) gxc.push_back(coord("dthetacheck_" + s, GenClass::FiberMirror));
    gc = gx;
    gc.insert(gc.end(), gxc.begin(), gxc.end());
    for (const auto& s : suffixes) {
        auto b = coord("dr_" + s, GenClass::Base, "r_" + s);
        gx.push_back(b);
        gxc.push_back(b);
        gc.push_back(b);
    }
    f.x = FrameSpec::coordinate(gx, f.vars, n);
    f.xcheck = FrameSpec::coordinate(gxc, f.vars, n);
    f.corr = FrameSpec::coordinate(gc, f.vars, n);
    return f;
}

SemiflatPair::SemiflatPair(int n) : SemiflatPair(default_suffixes(n)) {}

SemiflatPair::SemiflatPair(std::vector<std::string> suffixes) : SemiflatPair(suffixes, make_frames(suffixes)) {}

SemiflatPair::SemiflatPair(std::vector<std::string> suffixes, Frames frames)
    : suffixes_(std::move(suffixes)),
      x_(frames.x),
      xcheck_(frames.xcheck),
      corr_(frames.corr),
      complex_(xcheck_, GenClass::FiberMirror),
      symplectic_(SymplecticData::darboux(x_, GenClass::FiberX)),
      kernel_(corr_) {
    base_vars_ = x_->base_vars();
    for (int i = 0; i < n(); ++i)
        kernel_ += wedge(Form::generator(corr_, thetacheck(i)), Form::generator(corr_, theta(i)));
}

Form fm_forward(const Form& a, const SemiflatPair& pair) {
    Form real = polarization_switch(a, pair.complex());
    Form up = relabel(real, pair.corr());
    return fiber_pushforward(wedge(up, exp_nilpotent(pair.half_curvature())), GenClass::FiberMirror, pair.x());
}

Form fm_backward(const Form& a, const SemiflatPair& pair) {
    Form up = relabel(convert(a, pair.x()), pair.corr());
    Form down = fiber_pushforward(wedge(up, exp_nilpotent(-pair.half_curvature())), GenClass::FiberX, pair.xcheck());
    return polarization_switch_inverse(down, pair.complex());
}

int permutation_sign(const std::vector<int>& seq) {
    int inv = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] == seq[j]) return 0;
            if (seq[i] > seq[j]) ++inv;
        }
    return (inv & 1) ? -1 : 1;
}

std::vector<int> complement(const std::vector<int>& I, int n) {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
        if (std::find(I.begin(), I.end(), i) == I.end()) out.push_back(i);
    return out;
}

Form fm_monomial(const std::vector<int>& I, const std::vector<int>& J, const SemiflatPair& pair) {
    const int n = pair.n();
    const int p = static_cast<int>(I.size());
    auto Ic = complement(I, n);
    std::vector<int> cat = I;
    cat.insert(cat.end(), Ic.begin(), Ic.end());
    int sign = permutation_sign(cat);
    if ((((n - p) * (n - p - 1)) / 2) % 2 != 0) sign = -sign;
    std::vector<std::string> labels;
    for (int i : Ic) labels.push_back(pair.theta(i - 1));
    for (int j : J) labels.push_back(pair.dr(j - 1));
    return Form::wedge_of(pair.x(), labels, Poly(sign));
}

Form complex_monomial(const std::vector<int>& I, const std::vector<int>& J, const SemiflatPair& pair) {
    std::vector<std::string> labels;
    for (int i : I) labels.push_back(pair.dz(i - 1));
    for (int j : J) labels.push_back(pair.dzbar(j - 1));
    return Form::wedge_of(pair.complex_frame(), labels);
}

IntertwiningResult check_intertwining(const Form& a, const SemiflatPair& pair) {
    const int n = pair.n();
    Poly c(GR(0, mpq_class(n % 2 ? -1 : 1, 2)));  // (−1)^n i/2
    Form ft = fm_forward(a, pair);
    Dolbeault dd = dolbeault(a, pair.complex());
    IntertwiningResult r{false, false, Form(pair.x()), Form(pair.x())};
    r.delbar_difference = fm_forward(dd.delbar, pair) - exterior_d(ft) * c;
    r.del_difference = fm_forward(dd.del, pair) - d_lambda(ft, pair.symplectic()) * c;
    r.delbar_ok = r.delbar_difference.is_zero();
    r.del_ok = r.del_difference.is_zero();
    return r;
}

bool check_leg_counts(const Form& a, const SemiflatPair& pair) {
    Form c = convert(a, pair.complex_frame());
    const auto& cf = *pair.complex_frame();
    for (const auto& [m, coeff] : c.terms()) {
        int p = leg_count(cf, m, GenClass::FiberMirror);
        int q = leg_count(cf, m, GenClass::Base);
        Form ft = fm_forward(Form::monomial(pair.complex_frame(), m, coeff), pair);
        for (const auto& [fm, fc] : ft.terms())
            if (leg_count(*pair.x(), fm, GenClass::FiberX) != pair.n() - p ||
                leg_count(*pair.x(), fm, GenClass::Base) != q)
                return false;
    }
    return true;
}

}  // namespace syzkit
