#pragma once

// Differential operators on torus-invariant forms: d, the Lefschetz pair
// L and Λ, d^Λ = dΛ − Λd, the Dolbeault operators of the complex coordinates
// z = θ + i r, and the polarization switch.

#include <optional>
#include <string>

#include "syzkit/exterior.hpp"
#include "syzkit/linalg.hpp"

namespace syzkit {

/// d using the stored structure equations of the frame; coefficients are
/// differentiated in the base variables only.
Form exterior_d(const Form& a);

/// Same operator computed by expanding to the root frame first.
Form exterior_d_expanded(const Form& a);

class SymplecticData {
public:
    /// Builds the pairing (ω^{-1})^{ij} when ω has constant coefficients in its frame.
    explicit SymplecticData(Form omega);

    /// ω = Σ dθ_i ∧ dr_i over a coordinate frame, pairing fiber class `fiber` with Base.
    static SymplecticData darboux(const FramePtr& frame, GenClass fiber);

    const Form& omega() const { return omega_; }
    const FramePtr& frame() const { return omega_.frame(); }
    int n() const { return static_cast<int>(omega_.frame()->size() / 2); }
    bool has_pairing() const { return pairing_.has_value(); }
    /// Throws when ω is not constant or is degenerate.
    const linalg::Matrix& pairing() const;
    const std::string& refusal() const { return refusal_; }

private:
    Form omega_;
    std::optional<linalg::Matrix> pairing_;
    std::string refusal_;
};

Form lefschetz(const Form& a, const SymplecticData& s);
Form dual_lefschetz(const Form& a, const SymplecticData& s);
Form d_lambda(const Form& a, const SymplecticData& s);

class ComplexBasis {
public:
    /// dz_i = fiber_i + i·base_i, pairing the i-th generator of class `fiber` with the
    /// i-th Base generator of a coordinate frame.
    ComplexBasis(const FramePtr& coordinates, GenClass fiber);

    const FramePtr& real_frame() const { return real_; }
    const FramePtr& complex_frame() const { return complex_; }
    GenClass fiber() const { return fiber_; }
    int n() const { return n_; }
    std::size_t dz(int i) const { return static_cast<std::size_t>(i); }
    std::size_t dzbar(int i) const { return static_cast<std::size_t>(n_ + i); }

private:
    FramePtr real_;
    FramePtr complex_;
    GenClass fiber_;
    int n_ = 0;
    std::map<std::string, std::string> switch_labels_;
    std::map<std::string, std::string> unswitch_labels_;

    friend Form polarization_switch(const Form& a, const ComplexBasis& b);
    friend Form polarization_switch_inverse(const Form& a, const ComplexBasis& b);
};

struct Dolbeault {
    Form del;
    Form delbar;
};

/// (∂a, ∂̄a) as forms over the complex frame of `b`.
Dolbeault dolbeault(const Form& a, const ComplexBasis& b);
/// Same split over any frame whose generators are (1,0) forms of leg `holomorphic` and
/// (0,1) forms of leg Base.
Dolbeault dolbeault(const Form& a, const FramePtr& complex_frame, GenClass holomorphic);
Form del(const Form& a, const ComplexBasis& b);
Form delbar(const Form& a, const ComplexBasis& b);

/// dz_i -> fiber_i and dz̄_j -> base_j with coefficients and order unchanged.
Form polarization_switch(const Form& a, const ComplexBasis& b);
Form polarization_switch_inverse(const Form& a, const ComplexBasis& b);

}  // namespace syzkit
