#pragma once

// Finite-dimensional cohomology of torus-invariant forms whose coefficients are
// polynomials of degree <= D in the base variables: Bott-Chern on the complex
// side, Tseng-Yau d + d^Λ on the symplectic side, and the comparison of the two
// through the Fourier-Mukai transform.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syzkit/calculus.hpp"
#include "syzkit/exterior.hpp"
#include "syzkit/fourier.hpp"
#include "syzkit/linalg.hpp"
#include "syzkit/nilmanifold.hpp"
#include "syzkit/report.hpp"

namespace syzkit {

/// An operator image left the degree <= D span.
struct SpanEscape : Error {
    SpanEscape(const std::string& what, std::string witness) : Error(what), witness(std::move(witness)) {}
    std::string witness;
};

struct GammaAction {
    const NilData* nil = nullptr;
    FiberLabels labels = FiberLabels::Mirror;
};

class FiniteComplex {
public:
    /// Forms over `frame` with bidegree counted by legs (first, Base). When `complex` is set the
    /// generators of leg `first` are (1,0) forms and ∂, ∂̄ are available. When `symplectic` is
    /// set d^Λ is available. Closure of d (and d^Λ) on the span is verified; SpanEscape otherwise.
    FiniteComplex(FramePtr frame, int D, GenClass first, bool complex, std::optional<SymplecticData> symplectic,
                  std::optional<GammaAction> invariance = std::nullopt);

    /// dz / dz̄ frame of the pair.
    static FiniteComplex complex_side(const SemiflatPair& pair, int D, std::optional<GammaAction> inv = std::nullopt);
    /// dθ / dr frame of the pair with the Darboux form.
    static FiniteComplex symplectic_side(const SemiflatPair& pair, int D, std::optional<GammaAction> inv = std::nullopt);

    const FramePtr& frame() const { return frame_; }
    int D() const { return D_; }
    int n() const { return frame_->n(); }
    GenClass first() const { return first_; }
    bool has_complex() const { return complex_; }
    bool has_symplectic() const { return symplectic_.has_value(); }
    bool invariant() const { return invariance_.has_value(); }

    /// Basis of the (p,q) slot; empty outside 0..n.
    const std::vector<Form>& basis(int p, int q) const;
    /// Coordinates of a form in basis(p,q); SpanEscape when it is not in the span.
    linalg::Vector coordinates(const Form& a, int p, int q) const;
    /// Columns: coordinates of op(b) for b in basis(p,q), expressed in basis(tp,tq).
    linalg::Matrix matrix(const std::function<Form(const Form&)>& op, int p, int q, int tp, int tq) const;

    Form d(const Form& a) const { return exterior_d(a); }
    Form del(const Form& a) const;
    Form delbar(const Form& a) const;
    Form d_lambda(const Form& a) const;

private:
    struct Slot {
        std::vector<Form> ambient;
        std::map<std::pair<Mask, std::vector<std::uint16_t>>, std::size_t> index;
        std::optional<linalg::Matrix> span;  // invariant basis as columns over the ambient
        std::vector<Form> basis;
    };
    const Slot& slot(int p, int q) const;
    linalg::Vector ambient_coordinates(const Slot& s, const Form& a, int p, int q) const;

    FramePtr frame_;
    int D_;
    GenClass first_;
    bool complex_;
    std::optional<SymplecticData> symplectic_;
    std::optional<GammaAction> invariance_;
    std::vector<Poly> monomials_;
    mutable std::map<std::pair<int, int>, Slot> slots_;
};

struct CohomologyReport {
    std::string kind;
    int D = 0;
    int p = 0, q = 0;
    std::size_t dim = 0;
    std::vector<Form> representatives;
    /// "space", "kernel", "image".
    std::map<std::string, std::size_t> operator_ranks;
};

/// ker d on (p,q) modulo ∂∂̄ of (p-1,q-1).
CohomologyReport bott_chern(const FiniteComplex& c, int p, int q);
/// ker d ∩ ker d^Λ on (p,q) modulo d d^Λ of (p+1,q-1).
CohomologyReport tseng_yau(const FiniteComplex& c, int p, int q);
/// Same on all forms of total degree k.
CohomologyReport tseng_yau_total(const FiniteComplex& c, int k);

struct MirrorComparison {
    CohomologyReport bott_chern;
    CohomologyReport tseng_yau;
    CheckReport checks;
};

/// H^{p,q}_BC on the complex side against H^{(n-p,q)}_{d+d^Λ} on the symplectic side; the
/// transform of every Bott-Chern representative must be d- and d^Λ-closed, lie in the (n-p,q)
/// slot and stay independent modulo d d^Λ images.
MirrorComparison mirror_compare(const FiniteComplex& symplectic, const FiniteComplex& complex,
                                const SemiflatPair& pair, int p, int q);

}  // namespace syzkit
