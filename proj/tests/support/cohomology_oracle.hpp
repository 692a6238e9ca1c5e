#pragma once

// Cohomology dimensions from ranks of flattened operator images, with rows keyed
// by generator labels and monomials instead of the complex's own coordinates.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "syzkit/cohomology.hpp"

namespace oracle {

using syzkit::Form;
using syzkit::FiniteComplex;
using syzkit::GR;

using Op = std::function<Form(const Form&)>;

// rows keyed by (generator labels, monomial), built without the complex's own coordinates
inline std::vector<std::vector<GR>> flat_columns(const std::vector<Form>& forms) {
    std::map<std::string, std::size_t> row;
    std::vector<std::map<std::size_t, GR>> cols;
    for (const auto& f : forms) {
        std::map<std::size_t, GR> col;
        for (const auto& [labels, c] : labelled(f)) {
            for (const auto& [exps, v] : c.terms()) {
                std::string key;
                for (const auto& l : labels) key += l + " ";
                key += "|";
                for (std::size_t i = 0; i < exps.size(); ++i)
                    if (exps[i]) key += c.vars()[i] + "^" + std::to_string(exps[i]) + " ";
                auto it = row.emplace(key, row.size()).first;
                col[it->second] += v;
            }
        }
        cols.push_back(std::move(col));
    }
    // transpose: one row per form, rank is the same
    std::vector<std::vector<GR>> m;
    for (const auto& col : cols) {
        std::vector<GR> r(row.size());
        for (const auto& [i, v] : col) r[i] = v;
        m.push_back(std::move(r));
    }
    return m;
}

inline std::size_t image_rank(const std::vector<Form>& src, const Op& op) {
    std::vector<Form> img;
    for (const auto& b : src) img.push_back(op(b));
    return rank(flat_columns(img));
}

// dim ker on the span of `src`: |src| − rank of the stacked images
inline std::size_t kernel_dim(const std::vector<Form>& src, const std::vector<Op>& ops) {
    std::vector<std::vector<GR>> stacked(src.size());
    for (const auto& op : ops) {
        std::vector<Form> img;
        for (const auto& b : src) img.push_back(op(b));
        auto m = flat_columns(img);
        for (std::size_t i = 0; i < src.size(); ++i) stacked[i].insert(stacked[i].end(), m[i].begin(), m[i].end());
    }
    return src.size() - rank(stacked);
}

inline std::size_t bc_dim(const FiniteComplex& c, int p, int q) {
    const auto& B = c.basis(p, q);
    std::size_t k = kernel_dim(B, {[&](const Form& b) { return c.d(b); }});
    std::size_t im = (p >= 1 && q >= 1) ? image_rank(c.basis(p - 1, q - 1), [&](const Form& b) { return c.del(c.delbar(b)); }) : 0;
    return k - im;
}

inline std::size_t ty_dim(const FiniteComplex& c, int p, int q) {
    const auto& B = c.basis(p, q);
    std::size_t k = kernel_dim(B, {[&](const Form& b) { return c.d(b); }, [&](const Form& b) { return c.d_lambda(b); }});
    std::size_t im = 0;
    if (q >= 1 && p + 1 <= c.n()) {
        // d d^Λ lands in (p,q) from (p+1,q−1) in coordinate frames
        im = image_rank(c.basis(p + 1, q - 1), [&](const Form& b) {
            return syzkit::bidegree_project(syzkit::convert(c.d(c.d_lambda(b)), c.frame()), c.first(), p, syzkit::GenClass::Base, q);
        });
    }
    return k - im;
}

}  // namespace oracle
