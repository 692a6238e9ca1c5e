#pragma once

// The upper-unitriangular nilmanifold family of size K: base coordinates
// r_ij (i < j, dictionary order), invariant frames e, f on X = TB/Λ and
// f̌, e on X̌ = T*B/Λ*, both supersymmetric systems and their mirror check.
//
// Labels: base variables r_ij, lattice symbols a_ij, frame generators e_ij,
// f_ij and fcheck_ij. The complex side uses the pair's dtheta_ij coordinates and
// the symplectic side its dthetacheck_ij coordinates.

#include <string>
#include <utility>
#include <vector>

#include "syzkit/fourier.hpp"
#include "syzkit/report.hpp"
#include "syzkit/sustruct.hpp"

namespace syzkit {

class NilData {
public:
    explicit NilData(int K);

    int K() const { return K_; }
    int n() const { return static_cast<int>(pairs_.size()); }
    /// (i, j) with 1 <= i < j <= K in dictionary order.
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    std::size_t index(int i, int j) const;
    std::string suffix(int i, int j) const;

    const SemiflatPair& pair() const { return pair_; }
    /// [f..., e...] over the dtheta / dr coordinates.
    const FramePtr& iib_frame() const { return iib_frame_; }
    /// [fcheck..., e...] over the dthetacheck / dr coordinates.
    const FramePtr& iia_frame() const { return iia_frame_; }

    /// The same frames on the transform conventions of the pair: the complex side lives on the
    /// dthetacheck coordinates and the symplectic side on dtheta.
    /// [f..., e...] over dthetacheck / dr.
    const FramePtr& mirror_complex_frame() const { return mc_frame_; }
    /// [eta..., etabar...] over mirror_complex_frame(), eta = f + i e.
    const FramePtr& mirror_holomorphic_frame() const { return mh_frame_; }
    /// [fcheck..., e...] over dtheta / dr.
    const FramePtr& mirror_symplectic_frame() const { return ms_frame_; }
    /// As mirror_symplectic_frame() with fcheck taken from recursive_dual_matrix(); its structure
    /// equations have r-dependent coefficients for K >= 4.
    const FramePtr& recursive_symplectic_frame() const { return rs_frame_; }

    std::string e(int i, int j) const { return "e_" + suffix(i, j); }
    std::string f(int i, int j) const { return "f_" + suffix(i, j); }
    std::string fcheck(int i, int j) const { return "fcheck_" + suffix(i, j); }
    Poly r(int i, int j) const { return Poly::var("r_" + suffix(i, j)); }
    Poly a(int i, int j) const { return Poly::var("a_" + suffix(i, j)); }

    /// Row p: coefficients of e_p in the dr basis (the same matrix gives f in dθ).
    const PolyMatrix& frame_matrix() const { return E_; }
    /// Row p: coefficients of fcheck_p in the dθ̌ basis; fcheck_jk = dθ̌_jk + Σ_{i<j} r_ij dθ̌_ik.
    const PolyMatrix& dual_matrix() const { return G_; }
    /// The recursion fcheck_jk = dθ̌_jk + Σ_{i<j} r_ij fcheck_ik. Agrees with dual_matrix() for K <= 3
    /// and is not dual to f for K >= 4.
    const PolyMatrix& recursive_dual_matrix() const { return Grec_; }

private:
    int K_;
    std::vector<std::pair<int, int>> pairs_;
    SemiflatPair pair_;
    PolyMatrix E_, G_, Grec_;
    FramePtr iib_frame_, iia_frame_, mc_frame_, mh_frame_, ms_frame_, rs_frame_;
};

/// d e_ij = −Σ e_ik ∧ e_kj and d f_ij = −Σ e_ik ∧ f_kj, plus the computed d fcheck.
CheckReport structure_equations(const NilData& nd);

/// Which fiber coordinates transform like dr (θ' = Lθ); the other fiber transforms by L^{-T}.
/// Native: dtheta (the complex side of the construction). Mirror: dthetacheck, matching the
/// pair's complex side after the two sides are relabeled onto the transform conventions.
enum class FiberLabels { Native, Mirror };

/// γ·a − a under the symbolic lattice action r'_ik = r_ik + Σ_j a_ij r_jk + a_ik, for a form rooted
/// at either coordinate frame of the pair.
Form gamma_residue(const NilData& nd, const Form& a, FiberLabels labels = FiberLabels::Native);
CheckReport check_gamma_invariance(const NilData& nd);

/// M_pq = Σ_s F_ps G_qs, the pairing of the rows of F (in dθ) with the rows of G (in dθ̌).
PolyMatrix pairing_matrix(const PolyMatrix& F, const PolyMatrix& G);

/// ⟨f_p, fcheck_q⟩ = δ_pq from the coefficient matrices.
CheckReport check_dual_pairing(const NilData& nd);

/// ⋀ e = ⋀ dr and ⋀ f = ⋀ dθ.
CheckReport check_frame_volume(const NilData& nd);

/// (X, ω = Σ e ∧ f, Ω = ⋀ dz), z = θ + i r.
SUStructure build_iib_side(const NilData& nd);
/// (X̌, Σ dθ̌ ∧ dr, ⋀ (fcheck + i e)) with the dθ̌ fiber polarization.
SUStructure build_iia_side(const NilData& nd);

/// d(ω^{n-1}) = 0 and d(ω^{n-2}) ≠ 0 on the complex side.
CheckReport check_balanced(const NilData& nd);

/// The complex-side Kähler-type form Σ f ∧ e moved onto the X̌ coordinates of the pair.
Form mirror_omega_check(const NilData& nd);

/// Transform of e^{2ω̌} against the symplectic-side Ω̌, F·F̌ = 2^{2n}, fluxes.
CheckReport check_mirror_pair(const NilData& nd);

/// Everything above; the ρ constants are reported.
CheckReport nil_campaign(const NilData& nd);

}  // namespace syzkit
