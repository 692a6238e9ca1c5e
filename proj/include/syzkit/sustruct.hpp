#pragma once

// SU(n) structures (ω, Ω), their conformal factor, the Type IIA and Type IIB
// condition checkers, flux currents and deformation-class checks.
//
// Conformal factor convention: Ω ∧ Ω̄ = i^n F ω^n / n!.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syzkit/calculus.hpp"
#include "syzkit/exterior.hpp"
#include "syzkit/fourier.hpp"
#include "syzkit/report.hpp"

namespace syzkit {

using PolyMatrix = std::vector<std::vector<Poly>>;

/// k with a = k·b for a constant k; nullopt when b is zero or no such k exists.
std::optional<GR> form_ratio(const Form& a, const Form& b);

/// Determinant by cofactor expansion with memoized minors.
Poly poly_determinant(const PolyMatrix& m);

struct Polarization {
    GenClass fiber = GenClass::FiberX;
    /// θ / π.
    mpq_class phase = 0;
};

struct SUStructure {
    SUStructure(int n, Form omega, Form Omega) : n(n), omega(std::move(omega)), Omega(std::move(Omega)) {}

    int n = 0;
    Form omega;
    Form Omega;
    /// Non-empty when Ω = prefactor · factors[0] ∧ … ∧ factors[n-1].
    std::vector<Form> factors;
    GR prefactor{1};
    std::optional<Polarization> polarization;
    /// μ_ij(r) of a semi-flat ω̌ = Σ μ_ij dθ̌_i ∧ dr_j, when known.
    std::optional<PolyMatrix> mu;

    static SUStructure factored(Form omega, std::vector<Form> factors, GR prefactor = GR(1),
                                std::optional<Polarization> pol = std::nullopt);
    static SUStructure general(int n, Form omega, Form Omega, std::optional<Polarization> pol = std::nullopt);

    bool is_factored() const { return !factors.empty(); }
    FramePtr root_frame() const { return omega.frame()->root(); }
};

struct ConformalFactor {
    PolyRatio F;
    std::optional<GR> constant;
};

/// Throws when ω^n = 0.
ConformalFactor conformal_factor(const SUStructure& s);

/// Ω∧ω = 0, ω real, ω of type (1,1), ω^n ≠ 0, conformal factor.
CheckReport check_su_structure(const SUStructure& s);
/// dΩ = 0 and d(ω^{n-1}) = 0; dω is reported for information.
CheckReport check_iib(const SUStructure& s);
/// dω = 0, d(π^{n,0}Ω) = 0, d(π^{1,n-1}Ω) = 0 and the phase of the pure fiber part.
CheckReport check_iia(const SUStructure& s);

/// π^{p,q} of a form with p legs in the fiber class and q base legs, in root coordinates.
Form polarized_projection(const Form& a, GenClass fiber, int p, int q);

/// θ/π of the pure fiber coefficient of Ω when it is a constant multiple of a fourth root of unity.
std::optional<mpq_class> pure_fiber_phase(const SUStructure& s);

enum class Side { IIA, IIB };
std::string to_string(Side s);

struct FluxCurrent {
    Form form;
    Side side;
};

/// ρ_B = 2i ∂∂̄(F^{-1} ω). Ω must be a multiple of the coordinate dz_1 ∧ … ∧ dz_n.
FluxCurrent flux_iib(const SUStructure& s);
/// ρ_A = −i d d^Λ(F (π^{n-1,1}Ω + π^{0,n}Ω)).
FluxCurrent flux_iia(const SUStructure& s);

/// The complex basis z = θ + i r in which Ω is a multiple of dz_1 ∧ … ∧ dz_n.
ComplexBasis holomorphic_basis(const SUStructure& s);

/// μ_ij of ω̌ = Σ μ_ij dθ̌_i ∧ dr_j on the X̌ frame of the pair; must be real and symmetric.
PolyMatrix semiflat_mu(const Form& omega_check, const SemiflatPair& pair);
/// (X̌, ω̌, dz_1 ∧ … ∧ dz_n).
SUStructure semiflat_iib(const Form& omega_check, const SemiflatPair& pair);
/// (X, Σ dθ_i ∧ dr_i, (−1)^{n(n-1)/2} ⋀(dθ_i + i μ_i)) with μ_i = Σ_j μ_ij dr_j.
SUStructure mirror_transform(const Form& omega_check, const SemiflatPair& pair);

using BasePoint = std::map<std::string, GR>;
/// Leading principal minors of μ at each point; missing variables are 0. Empty list means the
/// origin and the unit points.
CheckReport check_hermitian_at(const SUStructure& s, std::vector<BasePoint> points = {});

/// IIB: dδ = 0, δ = ω^{n-2}∧β with ω^{n-1}∧β = 0. IIA: d(π^{1,n-1}δ) = 0, d^Λδ = 0, ω∧δ = 0.
CheckReport check_deformation_class(const SUStructure& s, const Form& delta, Side side);

}  // namespace syzkit
