#pragma once

// Fourier-Mukai transform of torus-invariant forms between the symplectic side
// X (coordinates θ, r) and the complex side X̌ (coordinates θ̌, r, z = θ̌ + i r).
//
// The integral path pulls back to the correspondence frame (θ, θ̌, r), wedges
// with exp(±Σ dθ̌_i ∧ dθ_i) and extracts the top fiber coefficient. The closed
// monomial rule is kept separately so the two can be compared.

#include <string>
#include <vector>

#include "syzkit/calculus.hpp"
#include "syzkit/exterior.hpp"

namespace syzkit {

class SemiflatPair {
public:
    /// Indices 1..n.
    explicit SemiflatPair(int n);
    /// Custom index suffixes, e.g. {"12","13","23"}; labels are dtheta_s, dthetacheck_s, dr_s.
    explicit SemiflatPair(std::vector<std::string> suffixes);

    int n() const { return static_cast<int>(suffixes_.size()); }
    const std::vector<std::string>& suffixes() const { return suffixes_; }
    const VarList& base_vars() const { return base_vars_; }

    const FramePtr& x() const { return x_; }
    const FramePtr& xcheck() const { return xcheck_; }
    const FramePtr& corr() const { return corr_; }
    const ComplexBasis& complex() const { return complex_; }
    const FramePtr& complex_frame() const { return complex_.complex_frame(); }
    const SymplecticData& symplectic() const { return symplectic_; }

    std::string theta(int i) const { return "dtheta_" + suffixes_.at(i); }
    std::string thetacheck(int i) const { return "dthetacheck_" + suffixes_.at(i); }
    std::string dr(int i) const { return "dr_" + suffixes_.at(i); }
    std::string r(int i) const { return "r_" + suffixes_.at(i); }
    std::string dz(int i) const { return "dz_" + suffixes_.at(i); }
    std::string dzbar(int i) const { return "dzbar_" + suffixes_.at(i); }

    /// Σ dθ̌_i ∧ dθ_i over the correspondence frame (the curvature divided by 2i).
    const Form& half_curvature() const { return kernel_; }

private:
    struct Frames {
        VarList vars;
        FramePtr x, xcheck, corr;
    };
    static Frames make_frames(const std::vector<std::string>& suffixes);
    SemiflatPair(std::vector<std::string> suffixes, Frames frames);

    std::vector<std::string> suffixes_;
    VarList base_vars_;
    FramePtr x_, xcheck_, corr_;
    ComplexBasis complex_;
    SymplecticData symplectic_;
    Form kernel_;
};

/// Forms on X̌ (any frame rooted at xcheck) to forms on X.
Form fm_forward(const Form& a, const SemiflatPair& pair);
/// Forms on X to forms on X̌, returned in the dz / dz̄ frame.
Form fm_backward(const Form& a, const SemiflatPair& pair);

/// Sign of the permutation taking the concatenated sequence to ascending order.
int permutation_sign(const std::vector<int>& seq);
/// Complement of I in {1..n}, ascending.
std::vector<int> complement(const std::vector<int>& I, int n);

/// Closed form of FT(dz_I ∧ dz̄_J); I and J are ascending 1-based index lists.
Form fm_monomial(const std::vector<int>& I, const std::vector<int>& J, const SemiflatPair& pair);
/// The basis form dz_I ∧ dz̄_J over the complex frame.
Form complex_monomial(const std::vector<int>& I, const std::vector<int>& J, const SemiflatPair& pair);

struct IntertwiningResult {
    bool delbar_ok = false;   // FT ∂̄ a = (−1)^n (i/2) d FT a
    bool del_ok = false;      // FT ∂ a = (−1)^n (i/2) d^Λ FT a
    Form delbar_difference;
    Form del_difference;
    bool ok() const { return delbar_ok && del_ok; }
};

IntertwiningResult check_intertwining(const Form& a, const SemiflatPair& pair);

/// Every term of FT(a) for a of bidegree (p,q) has n − p fiber legs and q base legs.
bool check_leg_counts(const Form& a, const SemiflatPair& pair);

}  // namespace syzkit
