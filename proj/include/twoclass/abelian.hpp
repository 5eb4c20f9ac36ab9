#ifndef TWOCLASS_ABELIAN_HPP
#define TWOCLASS_ABELIAN_HPP

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "twoclass/arith.hpp"

namespace twoclass {

/* Subgroup of a finite abelian group generated by a list of elements,
 * described by its relation lattice over the generators that were needed.
 *
 * `used` lists the positions (in the input list) of the generators that
 * enlarged the subgroup; relation rows are indexed the same way. */
struct RelationLattice {
    std::vector<std::size_t> used;
    IntMatrix relations;
    std::size_t order = 1;

    AbelianType structure() const
    {
        if (used.empty())
            return AbelianType();
        return AbelianType::from_invariants(smith_normal_form(relations));
    }
};

/* Builds the subgroup generated by `gens` inside an abelian group whose
 * elements are integer ids. `mul(x, y)` must return the id of x*y; ids are
 * canonical, so equal elements have equal ids. */
template <class Mul>
RelationLattice relation_lattice(std::vector<int> const & gens, int identity, Mul && mul)
{
    RelationLattice out;
    std::unordered_map<int, std::vector<long>> coords;
    std::vector<int> elements{identity};
    coords[identity] = {};
    std::vector<std::vector<Integer>> rows;

    for (std::size_t pos = 0; pos < gens.size(); ++pos) {
        int const g = gens[pos];
        if (coords.count(g))
            continue;
        std::size_t const k = out.used.size();
        int x = g;
        long e = 1;
        while (!coords.count(x)) {
            x = mul(x, g);
            ++e;
        }
        std::vector<Integer> rel(k + 1);
        auto const & cx = coords[x];
        for (std::size_t i = 0; i < cx.size(); ++i)
            rel[i] = -cx[i];
        rel[k] = e;
        rows.push_back(std::move(rel));
        out.used.push_back(pos);

        for (auto & [id, v] : coords)
            v.push_back(0);
        std::vector<int> layer = elements;
        std::vector<int> grown = elements;
        for (long i = 1; i < e; ++i) {
            for (int & y : layer) {
                int z = mul(y, g);
                auto v = coords[y];
                v.back() = i;
                coords.emplace(z, std::move(v));
                y = z;
                grown.push_back(z);
            }
        }
        elements = std::move(grown);
    }

    std::size_t const n = out.used.size();
    out.relations = IntMatrix(0, n);
    for (auto & r : rows) {
        r.resize(n);
        out.relations.append_row(r);
    }
    out.order = elements.size();
    return out;
}

} // namespace twoclass

#endif
