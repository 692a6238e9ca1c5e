#pragma once

// Exterior algebra of torus-invariant forms over Poly coefficients.
//
// A FrameSpec is an ordered list of one-form generators. Coordinate frames are
// roots; a derived frame stores the expansion of each generator in its parent
// frame, the inverse change of basis, the exterior derivative of each
// generator and the differentials dr_j of the base variables. Forms store
// terms keyed by a bitmask over the generator order.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "syzkit/coeffring.hpp"

namespace syzkit {

enum class GenClass { FiberX, FiberMirror, Base, Frame };

std::string to_string(GenClass c);
GenClass gen_class_from_string(const std::string& s);

struct Generator {
    std::string label;
    GenClass cls = GenClass::Base;
    /// Class counted by bidegree projections. Equal to cls for coordinate generators.
    GenClass leg = GenClass::Base;
    /// Base coordinate whose differential this generator is (coordinate Base generators only).
    std::optional<std::string> base_var;
};

using Mask = std::uint64_t;

/// Canonical term order: by degree, then lexicographic on the sorted index list.
struct MaskLess {
    bool operator()(Mask a, Mask b) const;
};

using FormTerms = std::map<Mask, Poly, MaskLess>;

class FrameSpec;
using FramePtr = std::shared_ptr<const FrameSpec>;

class Form;

class FrameSpec : public std::enable_shared_from_this<FrameSpec> {
public:
    /// A root frame. Every Base generator must name its base variable.
    static FramePtr coordinate(std::vector<Generator> gens, VarList base_vars, int n);

    /// A frame over `parent`. expansions[i] is the degree-1 expansion of generator i in the
    /// parent. structure, when given, is d of each generator as a 2-form over the new frame;
    /// otherwise it is computed from the expansions.
    static FramePtr derived(FramePtr parent, std::vector<Generator> gens, const std::vector<Form>& expansions,
                            const std::optional<std::vector<Form>>& structure = std::nullopt);

    std::size_t size() const { return gens_.size(); }
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& gen(std::size_t i) const { return gens_.at(i); }
    std::optional<std::size_t> index_of(const std::string& label) const;
    std::size_t require_index(const std::string& label) const;
    std::vector<std::string> labels() const;
    const VarList& base_vars() const { return base_vars_; }
    int n() const { return n_; }

    bool is_root() const { return parent_ == nullptr; }
    const FramePtr& parent() const { return parent_; }
    FramePtr root() const;

    /// Same labels, classes and (recursively) the same expansions.
    bool equivalent(const FrameSpec& other) const;

    Mask leg_mask(GenClass leg) const;
    Mask full_mask() const;

    // The following return forms over this frame (or its parent for expansion).
    Form expansion(std::size_t i) const;
    Form parent_in_frame(std::size_t j) const;
    Form structure(std::size_t i) const;
    /// dr_v written in this frame, or zero if v is not a base variable.
    Form base_differential(const std::string& var) const;
    /// Conjugate of generator i as a form over this frame.
    Form conj_generator(std::size_t i) const;

private:
    FrameSpec() = default;
    FramePtr self() const { return shared_from_this(); }

    std::vector<Generator> gens_;
    VarList base_vars_;
    int n_ = 0;
    FramePtr parent_;
    std::vector<FormTerms> expansion_;      // over parent
    std::vector<FormTerms> inverse_;        // parent generator j over this frame
    std::vector<FormTerms> structure_;      // over this frame
    std::map<std::string, FormTerms> base_diff_;
    std::vector<FormTerms> conj_;           // over this frame
};

class Form {
public:
    explicit Form(FramePtr frame);
    Form(FramePtr frame, FormTerms terms);

    static Form scalar(FramePtr frame, const Poly& c);
    static Form generator(FramePtr frame, const std::string& label, const Poly& c = Poly(1));
    static Form generator(FramePtr frame, std::size_t index, const Poly& c = Poly(1));
    static Form monomial(FramePtr frame, Mask m, const Poly& c = Poly(1));
    /// Ordered wedge of generators by label; sign of the sort is applied.
    static Form wedge_of(FramePtr frame, const std::vector<std::string>& labels, const Poly& c = Poly(1));

    const FramePtr& frame() const { return frame_; }
    const FormTerms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Poly coeff(Mask m) const;
    /// -1 for the zero form; otherwise the largest term degree.
    int max_degree() const;
    /// Degree if all terms share it; nullopt for zero or mixed forms.
    std::optional<int> homogeneous_degree() const;
    Form component(int degree) const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Poly& c);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, const Poly& c) { return a *= c; }
    friend Form operator*(const Poly& c, Form a) { return a *= c; }
    Form operator-() const;
    friend bool operator==(const Form& a, const Form& b);

    Form map_coeffs(const std::function<Poly(const Poly&)>& f) const;
    Form subst(const std::map<std::string, Poly>& assignment) const { return map_coeffs([&](const Poly& p) { return p.subst(assignment); }); }
    Form conj() const;
    Form real_part() const;
    Form imag_part() const;

    std::string str() const;

private:
    void check_same_frame(const Form& o, const char* op) const;

    FramePtr frame_;
    FormTerms terms_;
};

/// Sign of merging disjoint sorted index sets a then b into ascending order.
int koszul_sign(Mask a, Mask b);
int popcount(Mask m);
std::vector<std::size_t> mask_indices(Mask m);
Mask mask_of(const std::vector<std::size_t>& indices);

Form wedge(const Form& a, const Form& b);
Form wedge_all(const std::vector<Form>& factors, const FramePtr& frame);
Form power(const Form& a, unsigned k);
/// Sum of a^k / k!; a must have only even terms of degree >= 2.
Form exp_nilpotent(const Form& a);

/// Number of generators of leg class c in m.
int leg_count(const FrameSpec& f, Mask m, GenClass c);
/// Terms with exactly p legs of class `first` and q legs of class `second`.
Form bidegree_project(const Form& a, GenClass first, int p, GenClass second, int q);

/// Interior product with the dual vector of generator `index`.
Form contract(const Form& a, std::size_t index);
Form contract(const Form& a, const std::string& label);

/// Algebra map sending generator i to images[i] (degree-1 forms over `target`).
Form substitute_generators(const Form& a, const std::vector<Form>& images, const FramePtr& target);

/// Generator-by-label inclusion into another frame; labels missing from target raise.
Form relabel(const Form& a, const FramePtr& target, const std::map<std::string, std::string>& rename = {});

/// Coefficient of the full top wedge of `fiber` generators, moved to the front; the rest is
/// relabeled into target. Fiber volume is 1.
Form fiber_pushforward(const Form& a, GenClass fiber, const FramePtr& target);

/// One step towards the root.
Form frame_expand(const Form& a);
Form expand_to_root(const Form& a);
/// From the parent of `frame` into `frame`.
Form frame_collect(const Form& a, const FramePtr& frame);
/// Between any two frames with equivalent roots.
Form convert(const Form& a, const FramePtr& target);

}  // namespace syzkit
