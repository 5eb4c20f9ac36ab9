#include "twoclass/groups.hpp"

#include <algorithm>
#include <memory>
#include <deque>
#include <random>
#include <set>

#include "twoclass/abelian.hpp"

namespace twoclass::groups {

std::string MetacyclicParams::str() const
{
    std::string out = "type " + std::to_string(type) + " (alpha=" + std::to_string(alpha)
                      + ", n=" + std::to_string(n);
    if (type >= 3)
        out += ", s=" + std::to_string(s) + ", k=" + std::to_string(k);
    return out + ")";
}

FiniteGroup::FiniteGroup(std::string name_, std::size_t order, std::function<int(int, int)> mul, int gen_a,
                         int gen_b)
    : n(order), law(std::move(mul)), name(std::move(name_)), a(gen_a), b(gen_b)
{
    if (n == 0 || n > max_group_order)
        throw capacity_error("group order " + std::to_string(n) + " outside supported range");
    inv.resize(n);
    for (std::size_t x = 0; x < n; ++x)
        inv[x] = power(static_cast<int>(x), static_cast<long>(n) - 1);
}

FiniteGroup FiniteGroup::from_table(std::string name_, std::vector<std::vector<int>> table, int gen_a, int gen_b)
{
    auto const t = std::make_shared<std::vector<std::vector<int>>>(std::move(table));
    std::size_t const n = t->size();
    return FiniteGroup(std::move(name_), n, [t](int x, int y) { return (*t)[x][y]; }, gen_a, gen_b);
}

int FiniteGroup::power(int x, long e) const
{
    long const N = static_cast<long>(n);
    e %= N;
    if (e < 0)
        e += N;
    int result = 0, base = x;
    while (e > 0) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::size_t FiniteGroup::element_order(int x) const
{
    std::size_t k = 1;
    for (int y = x; y != 0; y = mul(y, x))
        ++k;
    return k;
}

bool FiniteGroup::is_abelian() const
{
    return groups::is_abelian(*this, whole(*this));
}

void FiniteGroup::verify_axioms(std::size_t samples) const
{
    int const N = static_cast<int>(n);
    for (int x = 0; x < N; ++x) {
        if (mul(0, x) != x || mul(x, 0) != x)
            throw std::logic_error(name + ": 0 is not the identity");
        if (mul(x, inv[x]) != 0 || mul(inv[x], x) != 0)
            throw std::logic_error(name + ": missing inverse");
    }
    if (n <= 256) {
        std::vector<int> tab(n * n);
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y)
                tab[x * N + y] = mul(x, y);
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y) {
                int const xy = tab[x * N + y];
                for (int z = 0; z < N; ++z)
                    if (tab[xy * N + z] != tab[x * N + tab[y * N + z]])
                        throw std::logic_error(name + ": multiplication is not associative");
            }
        return;
    }
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, N - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        int const x = pick(rng), y = pick(rng), z = pick(rng);
        if (mul(mul(x, y), z) != mul(x, mul(y, z)))
            throw std::logic_error(name + ": multiplication is not associative");
    }
}

namespace {

long mod(long x, long m)
{
    long r = x % m;
    return r < 0 ? r + m : r;
}

long inverse_mod_pow2(long t, long M)
{
    /* Newton iteration; t odd */
    long u = 1;
    for (int i = 0; i < 7; ++i)
        u = mod(u * (2 - mod(t * u, M)), M);
    return u;
}

} // namespace

FiniteGroup build_split_metacyclic(int A, int B, long t, long c, std::string name)
{
    if (A < 0 || B < 0 || A + B > 12)
        throw capacity_error("metacyclic group of order 2^" + std::to_string(A + B) + " is too large");
    long const M = 1L << A, P = 1L << B;
    t = mod(t, M);
    c = mod(c, M);
    if (M > 1 && t % 2 == 0)
        throw domain_error(name + ": conjugation exponent must be odd");
    long const u = M == 1 ? 0 : inverse_mod_pow2(t, M);
    std::vector<long> upow(P);
    long acc = 1 % M;
    for (long j = 0; j < P; ++j) {
        upow[j] = acc;
        acc = mod(acc * u, M);
    }
    if (acc != 1 % M)
        throw domain_error(name + ": t^(2^B) is not 1 modulo 2^A");
    if (mod(c * (t - 1), M) != 0)
        throw domain_error(name + ": b^(2^B) is not fixed by conjugation");

    auto law = [M, P, c, upow = std::move(upow)](int x, int y) {
        long const i1 = x % M, j1 = x / M, i2 = y % M, j2 = y / M;
        long j = j1 + j2;
        long i = i1 + i2 * upow[j1];
        if (j >= P) {
            j -= P;
            i += c;
        }
        return static_cast<int>(mod(i, M) + j * M);
    };
    return FiniteGroup(std::move(name), static_cast<std::size_t>(M * P), law, M > 1 ? 1 : 0,
                       P > 1 ? static_cast<int>(M) : 0);
}

int metacyclic_element(MetacyclicParams const & p, long i, long j)
{
    long const M = 1L << p.alpha, P = 1L << p.n;
    return static_cast<int>(mod(i, M) + mod(j, P) * M);
}

FiniteGroup build_metacyclic(MetacyclicParams const & p)
{
    if (p.type < 1 || p.type > 4)
        throw domain_error("metacyclic type must be 1..4");
    if (p.alpha < 2 || p.n < 2)
        throw domain_error(p.str() + ": need alpha > 1 and n > 1");
    if (p.type >= 3) {
        if (!(p.s > 1 && p.s < p.alpha))
            throw domain_error(p.str() + ": need alpha > s > 1");
        if (p.k % 2 == 0)
            throw domain_error(p.str() + ": k must be odd");
    }
    long const t = p.type <= 2 ? -1 : -1 + static_cast<long>(p.k) * (1L << p.s);
    long const c = p.type % 2 == 0 ? 1L << (p.alpha - 1) : 0;
    FiniteGroup G = build_split_metacyclic(p.alpha, p.n, t, c, p.str());

    /* relations of the presentation, evaluated in the group */
    int const a = G.a, b = G.b;
    bool ok = G.element_order(a) == (std::size_t{1} << p.alpha)
              && G.power(b, 1L << p.n) == G.power(a, c)
              && G.mul(G.mul(G.inverse(b), a), b) == G.power(a, t);
    if (!ok)
        throw domain_error(p.str() + ": presentation relations fail");
    G.verify_axioms();
    return G;
}

FiniteGroup build_modular(int m)
{
    if (m <= 3)
        throw domain_error("modular group needs m > 3");
    long const t = 1 + (1L << (m - 2));
    FiniteGroup G = build_split_metacyclic(m - 1, 1, t, 0, "modular (m=" + std::to_string(m) + ")");
    /* the group's a is the involution, b the element of order 2^(m-1) */
    std::swap(G.a, G.b);
    int const a = G.a, b = G.b;
    bool ok = G.power(a, 2) == 0 && G.element_order(b) == (std::size_t{1} << (m - 1))
              && G.commutator(a, b) == G.power(b, 1L << (m - 2));
    if (!ok)
        throw std::logic_error("modular group relations fail");
    G.verify_axioms();
    return G;
}

bool Subgroup::contains(int x) const
{
    return std::binary_search(elements.begin(), elements.end(), x);
}

Subgroup closure(FiniteGroup const & G, std::vector<int> const & gens)
{
    std::vector<char> seen(G.order(), 0);
    std::vector<int> elems{0};
    seen[0] = 1;
    for (std::size_t k = 0; k < elems.size(); ++k)
        for (int g : gens) {
            int const y = G.mul(elems[k], g);
            if (!seen[y]) {
                seen[y] = 1;
                elems.push_back(y);
            }
        }
    std::sort(elems.begin(), elems.end());
    Subgroup H;
    H.elements = std::move(elems);
    for (int g : gens)
        if (g != 0 && std::find(H.generators.begin(), H.generators.end(), g) == H.generators.end())
            H.generators.push_back(g);
    return H;
}

Subgroup whole(FiniteGroup const & G)
{
    Subgroup H = closure(G, {G.a, G.b});
    if (H.order() != G.order()) {
        std::vector<int> all(G.order());
        for (std::size_t x = 0; x < all.size(); ++x)
            all[x] = static_cast<int>(x);
        H = closure(G, all);
    }
    return H;
}

bool is_abelian(FiniteGroup const & G, Subgroup const & H)
{
    auto const & gens = H.generators;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (G.mul(gens[i], gens[j]) != G.mul(gens[j], gens[i]))
                return false;
    return true;
}

Subgroup derived_subgroup(FiniteGroup const & G, Subgroup const & H)
{
    if (G.order() > max_group_order)
        throw capacity_error("derived subgroup: group too large");
    std::vector<int> const & gens = H.generators.empty() ? H.elements : H.generators;
    std::vector<int> comms;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            int const c = G.commutator(gens[i], gens[j]);
            if (c != 0)
                comms.push_back(c);
        }
    /* normal closure inside H */
    Subgroup D = closure(G, comms);
    for (bool grown = true; grown;) {
        grown = false;
        std::vector<int> const current = D.generators;
        for (int d : current)
            for (int h : gens) {
                int const c = G.mul(G.mul(G.inverse(h), d), h);
                if (!D.contains(c)) {
                    comms.push_back(c);
                    D = closure(G, comms);
                    grown = true;
                }
            }
    }
    return D;
}

Subgroup derived_subgroup(FiniteGroup const & G)
{
    return derived_subgroup(G, whole(G));
}

AbelianType abelianization(FiniteGroup const & G, Subgroup const & H)
{
    Subgroup const D = derived_subgroup(G, H);
    std::vector<int> coset(G.order(), -1);
    std::vector<int> rep;
    for (int h : H.elements) {
        if (coset[h] >= 0)
            continue;
        int const id = static_cast<int>(rep.size());
        rep.push_back(h);
        for (int d : D.elements)
            coset[G.mul(h, d)] = id;
    }
    std::vector<int> gens;
    for (int g : H.generators.empty() ? H.elements : H.generators)
        gens.push_back(coset[g]);
    RelationLattice lat = relation_lattice(gens, coset[0], [&](int x, int y) { return coset[G.mul(rep[x], rep[y])]; });
    if (lat.order != rep.size())
        throw std::logic_error("abelianization: generators do not cover the quotient");
    return lat.structure();
}

AbelianType abelianization(FiniteGroup const & G)
{
    return abelianization(G, whole(G));
}

Subgroup const & StandardSubgroups::get(int i, int level) const
{
    if (level == 2) {
        if (i == 1) return H12;
        if (i == 2) return H22;
        if (i == 3) return H32;
    } else if (level == 4) {
        if (i == 1) return H14;
        if (i == 2) return H24;
        if (i == 3) return H34;
    }
    throw domain_error("no distinguished subgroup H_" + std::to_string(i) + "," + std::to_string(level));
}

StandardSubgroups standard_subgroups(FiniteGroup const & G)
{
    StandardSubgroups S;
    S.derived = derived_subgroup(G);
    int const a = G.a, b = G.b;
    auto with_derived = [&](std::vector<int> gens) {
        for (int d : S.derived.generators)
            gens.push_back(d);
        return closure(G, gens);
    };
    S.H12 = with_derived({b});
    S.H22 = with_derived({G.mul(a, b)});
    S.H32 = with_derived({a, G.power(b, 2)});
    S.H14 = with_derived({a, G.power(b, 4)});
    S.H24 = with_derived({G.mul(a, G.power(b, 2))});
    S.H34 = with_derived({G.power(b, 2)});

    std::size_t const N = G.order();
    auto check = [&](Subgroup const & H, std::size_t idx, char const * label) {
        if (H.order() * idx != N)
            throw std::logic_error(G.name + ": " + label + " has index " + std::to_string(N / H.order()));
    };
    check(S.H12, 2, "H12");
    check(S.H22, 2, "H22");
    check(S.H32, 2, "H32");
    check(S.H14, 4, "H14");
    check(S.H24, 4, "H24");
    check(S.H34, 4, "H34");
    return S;
}

std::vector<Subgroup> enumerate_subgroups(FiniteGroup const & G)
{
    if (G.order() > max_lattice_order)
        throw capacity_error("subgroup enumeration limited to order " + std::to_string(max_lattice_order));
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    auto add = [&](Subgroup H) {
        if (seen.insert(H.elements).second)
            out.push_back(std::move(H));
    };
    add(closure(G, {}));
    std::vector<Subgroup> cyclic;
    for (std::size_t x = 1; x < G.order(); ++x) {
        Subgroup C = closure(G, {static_cast<int>(x)});
        if (seen.insert(C.elements).second) {
            cyclic.push_back(C);
            out.push_back(std::move(C));
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k)
        for (auto const & C : cyclic) {
            if (out[k].contains(C.generators.front()))
                continue;
            std::vector<int> gens = out[k].generators;
            gens.push_back(C.generators.front());
            add(closure(G, gens));
        }
    std::sort(out.begin(), out.end(), [](Subgroup const & x, Subgroup const & y) {
        return x.order() != y.order() ? x.order() < y.order() : x.elements < y.elements;
    });
    return out;
}

bool is_minimal(FiniteGroup const & G)
{
    if (G.is_abelian())
        throw domain_error("is_minimal: " + G.name + " is abelian");
    for (auto const & H : enumerate_subgroups(G))
        if (H.order() < G.order() && !is_abelian(G, H))
            return false;
    return true;
}

std::string to_string(RankClass c)
{
    switch (c) {
    case RankClass::metacyclic_nonmodular: return "metacyclic-nonmodular";
    case RankClass::modular_or_abelian: return "modular-or-abelian";
    case RankClass::other: return "other";
    }
    return "?";
}

RankClass classify_from_ranks(int rank12, int rank22, int rank32)
{
    for (int r : {rank12, rank22, rank32})
        if (r != 1 && r != 2)
            throw domain_error("2-rank of an index-2 subgroup must be 1 or 2, got " + std::to_string(r));
    if (rank12 == 2 && rank22 == 2 && rank32 == 2)
        return RankClass::metacyclic_nonmodular;
    if (rank32 == 2 && (rank12 == 1 || rank22 == 1))
        return RankClass::modular_or_abelian;
    return RankClass::other;
}

} // namespace twoclass::groups
