#include <algorithm>

#include "twoclass/groups.hpp"

namespace twoclass::groups {

AuxParams aux_params(int alpha, int n)
{
    AuxParams x{};
    bool const le = n <= alpha;
    x.eps = le ? 0 : 1;
    x.eps_p = le ? 1 : 0;
    x.delta = le ? 1 : 0;
    if (n == alpha) {
        x.omega = 0;
        x.omega_p = 0;
    } else if (n < alpha) {
        x.omega = 1;
        x.omega_p = 1;
    } else {
        x.omega = -1;
        x.omega_p = 1;
    }
    if (n < alpha)
        x.xi = 0;
    else if (n > alpha)
        x.xi = 1;
    return x;
}

namespace {

std::string power_text(char g, long e)
{
    if (e == 0)
        return "";
    if (e == 1)
        return std::string(1, g);
    return std::string(1, g) + "^" + std::to_string(e);
}

std::string element_text(std::pair<long, long> xy)
{
    std::string t = power_text('a', xy.first) + power_text('b', xy.second);
    return t.empty() ? "1" : t;
}

std::string ab_string(std::vector<long> const & e)
{
    std::string out = "(";
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (k)
            out += ", ";
        out += "2^" + std::to_string(e[k]);
    }
    return out + ")";
}

TableEntry make_entry(int level, int i, std::string block, std::vector<std::pair<long, long>> gens,
                      long derived_exp, std::optional<std::vector<long>> ab, bool gprime_two)
{
    TableEntry e;
    e.level = level;
    e.i = i;
    e.block = std::move(block);
    e.gen_exponents = std::move(gens);
    e.generators = "<";
    for (std::size_t k = 0; k < e.gen_exponents.size(); ++k)
        e.generators += (k ? ", " : "") + element_text(e.gen_exponents[k]);
    e.generators += ">";
    e.derived_a_exponent = derived_exp;
    e.derived_text = derived_exp == 0 ? "1" : "<a^" + std::to_string(derived_exp) + ">";
    e.ab_exponents = std::move(ab);
    e.ab_text = e.ab_exponents ? ab_string(*e.ab_exponents) : "undefined";
    e.gprime_is_two = gprime_two;
    return e;
}

std::optional<TableEntry> index2_entry(MetacyclicParams const & p, int i)
{
    int const al = p.alpha, n = p.n;
    if (p.type == 1 && al == 2) {
        std::string const blk = "type 1, alpha = 2";
        if (i == 1)
            return make_entry(2, 1, blk, {{2, 0}, {0, 1}}, 0, std::vector<long>{1, n}, true);
        if (i == 2)
            return make_entry(2, 2, blk, {{2, 0}, {1, 1}}, 0, std::vector<long>{1, n}, true);
        return make_entry(2, 3, blk, {{1, 0}, {0, 2}}, 0, std::vector<long>{2, n - 1}, true);
    }
    if (al < 3)
        return std::nullopt;
    std::string const blk = "alpha >= 3";
    if (i == 1)
        return make_entry(2, 1, blk, {{2, 0}, {0, 1}}, 4, std::vector<long>{1, n}, false);
    if (i == 2)
        return make_entry(2, 2, blk, {{2, 0}, {1, 1}}, 4, std::vector<long>{1, n}, false);

    AuxParams const x = aux_params(al, n);
    int const s = p.s;
    if (p.type == 1 || (p.type == 3 && s == al - 1))
        return make_entry(2, 3, blk + ", line 1", {{1, 0}, {0, 2}}, 0, std::vector<long>{al, n - 1}, false);
    if (p.type == 2 || (p.type == 4 && s == al - 1))
        return make_entry(2, 3, blk + ", line 2", {{1, 0}, {0, 2}}, 0,
                          std::vector<long>{al - x.eps, n - x.eps_p}, false);
    if (p.type >= 3 && s < al - 1 && al >= 4)
        return make_entry(2, 3, blk + ", line 3", {{1, 0}, {0, 2}}, 1L << (s + 1),
                          std::vector<long>{s + 1, n - 1}, false);
    return std::nullopt;
}

std::optional<TableEntry> index4_entry(MetacyclicParams const & p, int i)
{
    int const al = p.alpha, n = p.n;
    if (p.type == 1 && al == 2) {
        std::string const blk = "type 1, alpha = 2";
        if (i == 1)
            return make_entry(4, 1, blk, {{1, 0}, {0, 4}}, 0, std::vector<long>{2, n - 2}, true);
        if (i == 2) {
            std::vector<long> ab = n == 2 ? std::vector<long>{2} : std::vector<long>{1, n - 1};
            return make_entry(4, 2, blk, {{2, 0}, {1, 2}}, 0, ab, true);
        }
        return make_entry(4, 3, blk, {{2, 0}, {0, 2}}, 0, std::vector<long>{1, n - 1}, true);
    }
    if (al < 3)
        return std::nullopt;

    /* s-dependent cells read s = alpha for types 1 and 2 */
    int const s = p.type <= 2 ? al : p.s;
    int line = 0;
    if (p.type == 1 || (p.type == 3 && (s == al - 1 || s == al - 2)))
        line = 1;
    else if (p.type == 2 || (p.type == 4 && s == al - 2))
        line = 2;
    else if (p.type >= 3 && s < al - 2 && al >= 5)
        line = 3;
    if (line == 0)
        return std::nullopt;

    AuxParams const x = aux_params(al, n);
    std::string const blk = "alpha >= 3, line " + std::to_string(line);
    long const h = 1L << (s + 2);
    using V = std::vector<long>;
    switch (line * 10 + i) {
    case 11: return make_entry(4, 1, blk, {{1, 0}, {0, 4}}, 0, V{al, n - 2}, false);
    case 12: return make_entry(4, 2, blk, {{2, 0}, {1, 2}}, 0, V{al - x.eps, n - 1 - x.eps_p}, false);
    case 13: return make_entry(4, 3, blk, {{2, 0}, {0, 2}}, 0, V{al - 1, n - 1}, false);
    case 21: return make_entry(4, 1, blk, {{1, 0}, {0, 4}}, 0, V{al - x.eps, n - 1 - x.eps_p}, false);
    case 22: return make_entry(4, 2, blk, {{2, 0}, {1, 2}}, 0, V{al - 1 + x.omega, n - 1 + x.omega_p}, false);
    case 23: {
        std::optional<V> ab;
        if (x.xi)
            ab = V{al - 1 - *x.xi, n - 1 + *x.xi};
        return make_entry(4, 3, blk, {{2, 0}, {1, 2}}, h, ab, false);
    }
    case 31: return make_entry(4, 1, blk, {{1, 0}, {0, 4}}, h, V{s + 2, n - 2}, false);
    case 32: return make_entry(4, 2, blk, {{2, 0}, {1, 2}}, h, V{s + 1 + x.delta, n - 1 - x.delta}, false);
    case 33: return make_entry(4, 3, blk, {{h, 0}, {0, 2}}, h, V{s + 1, n - 1}, false);
    }
    return std::nullopt;
}

} // namespace

std::optional<TableEntry> table_entry(MetacyclicParams const & p, int i, int level)
{
    if (i < 1 || i > 3 || (level != 2 && level != 4))
        throw domain_error("table rows are i = 1..3 at index 2 or 4");
    return level == 2 ? index2_entry(p, i) : index4_entry(p, i);
}

std::string to_string(RowOutcome o)
{
    switch (o) {
    case RowOutcome::match: return "match";
    case RowOutcome::mismatch: return "mismatch";
    case RowOutcome::no_row: return "no_row";
    case RowOutcome::undefined: return "undefined";
    }
    return "?";
}

TableCheck verify_table_row(MetacyclicParams const & p, FiniteGroup const & G, StandardSubgroups const & S, int i,
                            int level)
{
    TableCheck c;
    c.params = p;
    c.i = i;
    c.level = level;
    c.entry = table_entry(p, i, level);

    Subgroup const & H = S.get(i, level);
    Subgroup const Hd = derived_subgroup(G, H);
    c.ab_computed = abelianization(G, H).str();
    c.derived_order_computed = Hd.order();
    c.gprime_order = S.derived.order();
    if (!c.entry) {
        c.outcome = RowOutcome::no_row;
        return c;
    }
    TableEntry const & e = *c.entry;

    c.gprime_match = e.gprime_is_two ? c.gprime_order == 2 : c.gprime_order >= 4;

    std::vector<int> gens;
    for (auto [x, y] : e.gen_exponents)
        gens.push_back(metacyclic_element(p, x, y));
    c.generators_match = closure(G, gens) == H;

    Subgroup const claimed = closure(G, {e.derived_a_exponent == 0 ? 0 : G.power(G.a, e.derived_a_exponent)});
    c.derived_order_claim = claimed.order();
    c.derived_match = claimed == Hd;

    if (!e.ab_exponents) {
        c.ab_claim = "undefined";
        c.outcome = RowOutcome::undefined;
        return c;
    }
    auto const & ex = *e.ab_exponents;
    if (std::any_of(ex.begin(), ex.end(), [](long v) { return v < 0; })) {
        c.ab_claim = "invalid " + e.ab_text;
        c.outcome = RowOutcome::mismatch;
        return c;
    }
    std::vector<Integer> orders;
    for (long v : ex)
        orders.push_back(pow2(static_cast<unsigned long>(v)));
    AbelianType const claim(orders);
    c.ab_claim = claim.str();
    c.ab_match = c.ab_claim == c.ab_computed;
    c.outcome = c.ab_match && c.derived_match ? RowOutcome::match : RowOutcome::mismatch;
    return c;
}

TableCheck verify_table_row(MetacyclicParams const & p, int i, int level)
{
    FiniteGroup const G = build_metacyclic(p);
    return verify_table_row(p, G, standard_subgroups(G), i, level);
}

namespace {

/* b acts by a -> a^t, so t^(2^n) = 1 mod 2^alpha is needed for order 2^(alpha+n). */
bool twist_order_fits(int alpha, int n, long t)
{
    long const M = 1L << alpha;
    long u = ((t % M) + M) % M;
    for (int i = 0; i < n; ++i)
        u = u * u % M;
    return u == 1;
}

} // namespace

std::vector<MetacyclicParams> parameter_sweep(std::vector<int> const & alphas, std::vector<int> const & ns,
                                              std::vector<int> const & types, std::vector<int> const & ks)
{
    std::vector<MetacyclicParams> out;
    for (int al : alphas)
        for (int n : ns)
            for (int type : types) {
                if (al < 2 || n < 2 || type < 1 || type > 4)
                    continue;
                if (type <= 2) {
                    out.push_back({type, al, n, 0, 0});
                    continue;
                }
                for (int s = 2; s < al; ++s)
                    for (int k : ks)
                        if (k % 2 != 0 && twist_order_fits(al, n, -1 + static_cast<long>(k) * (1L << s)))
                            out.push_back({type, al, n, s, k});
            }
    return out;
}

} // namespace twoclass::groups
