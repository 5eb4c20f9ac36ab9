#include "twoclass/family.hpp"

#include <algorithm>
#include <numeric>

namespace twoclass::family {

namespace qf = quadfield;

namespace {

Integer Z(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

void check_primes(FamilyParams const & p)
{
    for (auto v : {p.q, p.r, p.s})
        if (!is_prime(v) || v == 2)
            throw domain_error("expected an odd prime, got " + std::to_string(v));
    if (p.eta != 1 && p.eta != 2)
        throw domain_error("eta must be 1 or 2");
    if (p.r == p.s)
        throw domain_error("r and s must be distinct");
    if (p.q == p.r || p.q == p.s)
        throw domain_error("q must differ from r and s");
}

std::optional<Rational> rational_sqrt(Rational const & v)
{
    if (sgn(v) < 0)
        return std::nullopt;
    auto n = exact_sqrt(v.get_num());
    auto d = exact_sqrt(v.get_den());
    if (!n || !d)
        return std::nullopt;
    return Rational(*n, *d);
}

/* a + b sqrt m with rational coefficients. */
struct Quad {
    Rational a, b;
};

Quad mul(Quad const & x, Quad const & y, Integer const & m)
{
    return {x.a * y.a + m * x.b * y.b, x.a * y.b + x.b * y.a};
}

std::optional<Quad> quad_sqrt(Quad const & v, Integer const & m)
{
    auto n0 = rational_sqrt(v.a * v.a - m * v.b * v.b);
    if (!n0)
        return std::nullopt;
    for (int sign : {1, -1}) {
        auto x = rational_sqrt((v.a + sign * *n0) / 2);
        if (!x)
            continue;
        Quad c;
        if (sgn(*x) != 0) {
            c = {*x, v.b / (2 * *x)};
        } else {
            auto y = rational_sqrt(v.a / m);
            if (!y)
                continue;
            c = {0, *y};
        }
        Quad sq = mul(c, c, m);
        if (sq.a == v.a && sq.b == v.b)
            return c;
    }
    return std::nullopt;
}

/* alpha + beta sqrt 2 with alpha, beta in Q(sqrt m). */
struct Bi {
    Quad alpha, beta;
};

bool bi_is_square(Bi const & v, Integer const & m)
{
    Quad a2 = mul(v.alpha, v.alpha, m);
    Quad b2 = mul(v.beta, v.beta, m);
    auto n = quad_sqrt({a2.a - 2 * b2.a, a2.b - 2 * b2.b}, m);
    if (!n)
        return false;
    for (int sign : {1, -1}) {
        Quad half{(v.alpha.a + sign * n->a) / 2, (v.alpha.b + sign * n->b) / 2};
        auto g = quad_sqrt(half, m);
        if (!g)
            continue;
        Quad delta;
        if (sgn(g->a) != 0 || sgn(g->b) != 0) {
            /* delta = beta / (2 gamma) */
            Rational nrm = g->a * g->a - m * g->b * g->b;
            Quad inv{g->a / nrm, -g->b / nrm};
            delta = mul(v.beta, inv, m);
            delta.a /= 2;
            delta.b /= 2;
        } else {
            auto dd = quad_sqrt({v.alpha.a / 2, v.alpha.b / 2}, m);
            if (!dd)
                continue;
            delta = *dd;
        }
        /* (g + delta sqrt 2)^2 = g^2 + 2 delta^2 + 2 g delta sqrt 2 */
        Quad g2 = mul(*g, *g, m);
        Quad d2 = mul(delta, delta, m);
        Quad gd = mul(*g, delta, m);
        if (g2.a + 2 * d2.a == v.alpha.a && g2.b + 2 * d2.b == v.alpha.b && 2 * gd.a == v.beta.a
            && 2 * gd.b == v.beta.b)
            return true;
    }
    return false;
}

std::string eps(std::uint64_t d) { return "eps_" + std::to_string(d); }

Integer int_h2(std::uint64_t d) { return qf::h2(d); }

} // namespace

std::string FamilyParams::str() const
{
    return "(" + std::to_string(q) + ", " + std::to_string(r) + ", " + std::to_string(s)
           + "; eta=" + std::to_string(eta) + ")";
}

std::string to_string(Condition c)
{
    switch (c) {
    case Condition::congruences: return "congruences";
    case Condition::legendre: return "legendre";
    case Condition::rs_residue: return "rs_residue";
    case Condition::quartic: return "quartic";
    case Condition::norm_rs: return "norm_rs";
    case Condition::square: return "square";
    }
    return "?";
}

std::string to_string(Branch b)
{
    switch (b) {
    case Branch::Q: return "Q";
    case Branch::R: return "R";
    case Branch::S: return "S";
    }
    return "?";
}

hypothesis_error::hypothesis_error(Condition c, std::string const & what)
    : domain_error("hypothesis '" + to_string(c) + "' fails: " + what), failed(c)
{
}

std::optional<Condition> HypothesisReport::first_failure() const
{
    if (!congruences)
        return Condition::congruences;
    if (!legendre)
        return Condition::legendre;
    if (!rs_residue)
        return Condition::rs_residue;
    if (!quartic_neq.value_or(false))
        return Condition::quartic;
    if (norm_rs.value_or(0) != 1)
        return Condition::norm_rs;
    if (!square_cond.value_or(false))
        return Condition::square;
    return std::nullopt;
}

HypothesisReport check_hypotheses(FamilyParams const & p, std::size_t digit_cap)
{
    check_primes(p);
    HypothesisReport rep;
    rep.congruences = p.q % 4 == 3 && p.r % 8 == 5 && p.s % 8 == 5;
    int const want = p.eta == 2 ? -1 : 1;
    rep.legendre = legendre_symbol(Z(p.q), Z(p.r)) == want && legendre_symbol(Z(p.q), Z(p.s)) == want;
    rep.rs_residue = legendre_symbol(Z(p.r), Z(p.s)) == 1;
    if (!rep.family())
        return rep;

    rep.quartic_neq = quartic_symbol(Z(p.r), Z(p.s)) != quartic_symbol(Z(p.s), Z(p.r));
    try {
        rep.norm_rs = qf::unit_norm(p.r * p.s, digit_cap);
        qf::QuadUnit const u = qf::fundamental_unit(p.eta_qrs(), digit_cap);
        Integer const cq = (p.eta == 1 ? 2 : 1) * Z(p.q);
        rep.square_cond = !is_perfect_square(cq * (u.X - 1));
    } catch (qf::unit_too_large const &) {
        rep.unit_too_large = true;
        return rep;
    }
    if (rep.corollary()) {
        Integer h = int_h2(p.eta_qrs());
        unsigned long const v = two_valuation(h);
        if (v < 1 || pow2(v) != h)
            throw invariant_violation("h2(" + std::to_string(p.eta_qrs()) + ") = " + twoclass::to_string(h));
        rep.m = static_cast<int>(v) - 1;
    }
    return rep;
}

void require_family(FamilyParams const & p)
{
    check_primes(p);
    if (!(p.q % 4 == 3 && p.r % 8 == 5 && p.s % 8 == 5))
        throw hypothesis_error(Condition::congruences, p.str());
    int const want = p.eta == 2 ? -1 : 1;
    if (legendre_symbol(Z(p.q), Z(p.r)) != want || legendre_symbol(Z(p.q), Z(p.s)) != want)
        throw hypothesis_error(Condition::legendre, p.str());
    if (legendre_symbol(Z(p.r), Z(p.s)) != 1)
        throw hypothesis_error(Condition::rs_residue, p.str());
}

TrichotomyResult unit_trichotomy(FamilyParams const & p, std::size_t digit_cap)
{
    require_family(p);
    qf::QuadUnit const u = qf::fundamental_unit(p.eta_qrs(), digit_cap);
    if (u.norm != 1 || !u.integral())
        throw invariant_violation("eps_" + std::to_string(p.eta_qrs()) + " is not integral of norm 1");

    TrichotomyResult t;
    t.gamma = u.X;
    t.gamma_p = u.Y;
    Integer const eta = p.eta;
    Integer const q = Z(p.q), r = Z(p.r), s = Z(p.s);
    int const sgn2 = p.eta == 2 ? -1 : 1; /* (-1)^delta(eta,2) */
    Integer const cq = (p.eta == 1 ? 2 : 1) * q;

    std::array<Integer, 3> vals{cq * (t.gamma - 1), 2 * r * (t.gamma + sgn2), 2 * s * (t.gamma + sgn2)};
    std::array<Integer, 3> divs{cq, 2 * r, 2 * s};
    std::array<std::optional<Integer>, 3> roots;
    int count = 0;
    for (int i = 0; i < 3; ++i) {
        roots[i] = exact_sqrt(vals[i]);
        t.flags[i] = roots[i].has_value();
        count += t.flags[i];
    }
    if (count != 1)
        throw invariant_violation(std::to_string(count) + " square flags for " + p.str());
    int const i = t.flags[0] ? 0 : t.flags[1] ? 1 : 2;
    t.which = static_cast<Branch>(i);

    if (!mpz_divisible_p(roots[i]->get_mpz_t(), divs[i].get_mpz_t()))
        throw invariant_violation("square root not divisible on branch " + to_string(t.which));
    t.gamma1 = *roots[i] / divs[i];
    Integer const num = eta * t.gamma_p;
    if (sgn(t.gamma1) == 0 || !mpz_divisible_p(num.get_mpz_t(), Integer(2 * t.gamma1).get_mpz_t()))
        throw invariant_violation("gamma2 not integral for " + p.str());
    t.gamma2 = num / (2 * t.gamma1);

    /* (g1 sqrt A + g2 sqrt B)^2 = eta eps with AB = eta qrs */
    Integer A, B, ident;
    Integer const g1s = t.gamma1 * t.gamma1, g2s = t.gamma2 * t.gamma2;
    switch (t.which) {
    case Branch::Q:
        A = q;
        B = eta * r * s;
        ident = -q * g1s + eta * r * s * g2s;
        break;
    case Branch::R:
        A = eta * r;
        B = q * s;
        ident = sgn2 * eta * r * g1s + (p.eta == 1 ? -1 : 1) * q * s * g2s;
        break;
    case Branch::S:
        A = eta * s;
        B = q * r;
        ident = sgn2 * eta * s * g1s + (p.eta == 1 ? -1 : 1) * q * r * g2s;
        break;
    }
    if (A * g1s + B * g2s != eta * t.gamma || 2 * t.gamma1 * t.gamma2 != eta * t.gamma_p || ident != eta)
        throw invariant_violation("branch identity fails for " + p.str());
    return t;
}

DichotomyResult rho_dichotomy(FamilyParams const & p, std::size_t digit_cap)
{
    require_family(p);
    qf::QuadUnit const u = qf::fundamental_unit(p.rho_qrs(), digit_cap);
    if (u.norm != 1 || !u.integral())
        throw invariant_violation("eps_" + std::to_string(p.rho_qrs()) + " is not integral of norm 1");

    DichotomyResult d;
    d.x = u.X;
    d.y = u.Y;
    Integer const q = Z(p.q), rs = Z(p.r) * Z(p.s), rho = p.rho();
    Integer const c = (p.rho() == 2 ? 2 : 1) * q;
    auto plus = exact_sqrt(c * (d.x + 1));
    auto minus = exact_sqrt(c * (d.x - 1));
    d.flags = {plus.has_value(), minus.has_value()};
    if (d.flags[0] == d.flags[1])
        throw invariant_violation("dichotomy flags equal for " + p.str());
    d.sign = d.flags[0] ? 1 : -1;
    Integer const root = d.flags[0] ? *plus : *minus;
    if (!mpz_divisible_p(root.get_mpz_t(), c.get_mpz_t()))
        throw invariant_violation("dichotomy root not divisible for " + p.str());
    d.y1 = root / c;
    if (sgn(d.y1) == 0 || !mpz_divisible_p(d.y.get_mpz_t(), d.y1.get_mpz_t()))
        throw invariant_violation("y1 does not divide y for " + p.str());
    d.y2 = d.y / d.y1;

    Integer const a = rho * q * d.y1 * d.y1, b = rs * d.y2 * d.y2;
    if (a + b != 2 * d.x || d.y1 * d.y2 != d.y || d.sign * (a - b) != 2)
        throw invariant_violation("dichotomy identity fails for " + p.str());
    return d;
}

int q_index_F1(FamilyParams const & p, std::size_t digit_cap)
{
    return unit_trichotomy(p, digit_cap).which == Branch::Q ? 2 : 1;
}

Integer h2_F1(FamilyParams const & p, std::size_t digit_cap)
{
    int const qi = q_index_F1(p, digit_cap);
    return kuroda_class_number({int_h2(2), int_h2(p.qrs()), int_h2(2 * p.qrs())}, qi, 2, true);
}

ProductIdentity h2_product_identity(FamilyParams const & p)
{
    require_family(p);
    return {int_h2(p.qrs()), int_h2(2 * p.qrs()), int_h2(p.eta_qrs())};
}

bool k2_unit_product_is_square(std::uint64_t rs, std::size_t digit_cap)
{
    qf::QuadUnit const e2 = qf::fundamental_unit(2, digit_cap);
    qf::QuadUnit const e1 = qf::fundamental_unit(rs, digit_cap);
    qf::QuadUnit const e3 = qf::fundamental_unit(2 * rs, digit_cap);
    Integer const m = Z(rs);
    /* eps_2 eps_rs = (x2 + y2 sqrt2)(x1 + y1 sqrt m) */
    Quad const a1{e1.x(), e1.y()};
    Bi prod{{e2.x() * a1.a, e2.x() * a1.b}, {e2.y() * a1.a, e2.y() * a1.b}};
    /* times (x3 + y3 sqrt 2 sqrt m) */
    Quad const t{e3.x(), 0}, w{0, e3.y()};
    Quad const na = mul(prod.alpha, t, m);
    Quad const nb = mul(prod.beta, t, m);
    Quad const aw = mul(prod.alpha, w, m);
    Quad const bw = mul(prod.beta, w, m);
    /* (alpha + beta sqrt2)(t + w sqrt2) = alpha t + 2 beta w + (alpha w + beta t) sqrt2 */
    Bi const v{{na.a + 2 * bw.a, na.b + 2 * bw.b}, {aw.a + nb.a, aw.b + nb.b}};
    return bi_is_square(v, m);
}

UnitIndexReport unit_index_K1(FamilyParams const & p, std::size_t digit_cap)
{
    TrichotomyResult const t = unit_trichotomy(p, digit_cap);
    if (t.which == Branch::Q)
        throw hypothesis_error(Condition::square, p.str());

    std::uint64_t const rs = p.r * p.s;
    UnitIndexReport rep;
    rep.field = "Q(sqrt 2, sqrt " + std::to_string(p.q) + ", sqrt " + std::to_string(rs) + ")";
    rep.q_index = 16;
    std::string const e_eta = eps(p.eta_qrs());
    std::vector<std::string> common{"-1", eps(2)};
    if (qf::unit_norm(rs, digit_cap) == 1) {
        rep.unit_case = 1;
        common.push_back(eps(2 * rs));
    } else {
        rep.unit_case = k2_unit_product_is_square(rs, digit_cap) ? 2 : 3;
        common.push_back(eps(rs));
    }
    common.push_back(e_eta);
    common.push_back("sqrt(" + eps(p.q) + ")");
    common.push_back("sqrt(" + eps(2 * p.q) + ")");
    common.push_back("sqrt(" + eps(p.rho_qrs()) + ")");
    std::string const trio = eps(2) + "*" + eps(rs) + "*" + eps(2 * rs);
    switch (rep.unit_case) {
    case 1: common.push_back("sqrt(" + eps(rs) + "*" + e_eta + ")"); break;
    case 2: common.push_back("sqrt(" + trio + ")"); break;
    default: common.push_back("sqrt(" + trio + "*" + e_eta + ")"); break;
    }
    rep.basis = std::move(common);
    return rep;
}

BiquadraticH2 h2_K(FamilyParams const & p, std::size_t digit_cap)
{
    require_family(p);
    std::uint64_t const rs = p.r * p.s;
    BiquadraticH2 out;
    out.q_index = qf::unit_norm(rs, digit_cap) == 1 ? 2 : 1;
    out.h2 = kuroda_class_number({int_h2(p.eta * p.q), int_h2(rs), int_h2(p.eta_qrs())}, out.q_index, 2,
                                 true);
    return out;
}

Integer h2_K1(FamilyParams const & p, std::size_t digit_cap)
{
    if (unit_trichotomy(p, digit_cap).which == Branch::Q)
        throw hypothesis_error(Condition::square, p.str());
    std::uint64_t const q = p.q, rs = p.r * p.s;
    return kuroda_class_number({int_h2(2), int_h2(q), int_h2(2 * q), int_h2(rs), int_h2(2 * rs),
                                int_h2(q * rs), int_h2(2 * q * rs)},
                               16, 3, true);
}

int kuroda_exponent(int n, bool real)
{
    if (n < 2)
        throw domain_error("Kuroda formula needs n >= 2");
    if (real)
        return n * ((1 << (n - 1)) - 1);
    return (n - 1) * ((1 << (n - 2)) - 1) + (1 << (n - 1)) - 1;
}

Integer kuroda_class_number(std::vector<Integer> const & subfield_h, Integer const & q_index, int n, bool real)
{
    int const v = kuroda_exponent(n, real);
    if (subfield_h.size() != (std::size_t{1} << n) - 1)
        throw domain_error("Kuroda formula: expected " + std::to_string((1 << n) - 1) + " subfields, got "
                           + std::to_string(subfield_h.size()));
    Integer num = q_index;
    for (auto const & h : subfield_h)
        num *= h;
    Integer const den = pow2(v);
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw domain_error("Kuroda formula gives a non-integral class number");
    return num / den;
}

namespace {

std::int64_t squarefree_product(std::int64_t a, std::int64_t b)
{
    std::int64_t const g = std::gcd(a, b);
    return (a / g) * (b / g);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        out.push_back(p);
        while (n % p == 0)
            n /= p;
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

int ramification_index(std::uint64_t p, std::int64_t a, std::int64_t b)
{
    int ram = 0;
    for (std::int64_t d : {a, b, squarefree_product(a, b)})
        if (d != 1 && qf::prime_splitting(qf::Place::prime(p), d) == qf::Splitting::ramified)
            ++ram;
    if (p == 2 && ram == 3)
        return 4;
    return ram > 0 ? 2 : 1;
}

} // namespace

AmbiguousRank ambiguous_rank_interval(std::int64_t base_d, std::int64_t ext_d)
{
    if (base_d <= 1 || !is_squarefree(static_cast<std::uint64_t>(base_d)))
        throw domain_error("ambiguous formula: base must be a real quadratic field");
    std::uint64_t const ae = static_cast<std::uint64_t>(ext_d < 0 ? -ext_d : ext_d);
    if (ext_d == 1 || ext_d == base_d || ext_d == 0 || !is_squarefree(ae))
        throw domain_error("ambiguous formula: extension radicand must be squarefree and new");
    if (qf::class_group(static_cast<std::uint64_t>(base_d)).h % 2 == 0)
        throw domain_error("ambiguous formula: class number of Q(sqrt " + std::to_string(base_d)
                           + ") is even");

    AmbiguousRank out;
    std::uint64_t const ab = static_cast<std::uint64_t>(base_d);
    std::vector<std::uint64_t> primes{2};
    for (std::uint64_t n : {ab, ae})
        for (std::uint64_t p : prime_factors(n))
            primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    for (std::uint64_t p : primes) {
        qf::Splitting const sp = qf::prime_splitting(qf::Place::prime(p), base_d);
        int const e_base = sp == qf::Splitting::ramified ? 2 : 1;
        if (ramification_index(p, base_d, ext_d) > e_base) {
            int const places = sp == qf::Splitting::split ? 2 : 1;
            out.t += places;
            out.ramified.push_back(std::to_string(p) + " (" + qf::to_string(sp) + " in base, "
                                   + std::to_string(places) + (places == 1 ? " place)" : " places)"));
        }
    }
    if (ext_d < 0) {
        out.t += 2;
        out.ramified.push_back("infinity (2 real places)");
    }
    out.rank_hi = out.t - 1;
    out.rank_lo = std::max(0, out.t - 3);
    return out;
}

} // namespace twoclass::family
