#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "twoclass/family.hpp"
#include "twoclass/search.hpp"

using namespace twoclass;
using namespace twoclass::family;
namespace qf = twoclass::quadfield;

namespace {

/* family triples (congruences, Legendre pattern, (r/s) = 1) below a bound */
std::vector<FamilyParams> family_triples(std::uint64_t bound)
{
    std::vector<FamilyParams> out;
    for (auto const & p : search::candidates(bound, {1, 2})) {
        int const want = p.eta == 2 ? -1 : 1;
        if (oracle::legendre(static_cast<long>(p.q), p.r) == want
            && oracle::legendre(static_cast<long>(p.q), p.s) == want
            && oracle::legendre(static_cast<long>(p.r), p.s) == 1)
            out.push_back(p);
    }
    return out;
}

Integer Z(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

} // namespace

TEST_CASE("check_hypotheses on (3, 13, 61)")
{
    HypothesisReport const rep = check_hypotheses({3, 13, 61, 1});
    CHECK(rep.congruences);
    CHECK(rep.legendre);
    CHECK(rep.rs_residue);
    CHECK(oracle::quartic(13, 61) == 1);
    CHECK(oracle::quartic(61, 13) == 1);
    REQUIRE(rep.quartic_neq);
    CHECK_FALSE(*rep.quartic_neq);
    CHECK(rep.family());

    HypothesisReport const rep2 = check_hypotheses({3, 13, 61, 2});
    CHECK_FALSE(rep2.legendre);
    CHECK(rep2.first_failure() == Condition::legendre);
}

TEST_CASE("check_hypotheses rejects bad input")
{
    CHECK_THROWS_AS(check_hypotheses({3, 13, 13, 1}), domain_error);
    CHECK_THROWS_AS(check_hypotheses({4, 13, 61, 1}), domain_error);
    CHECK_THROWS_AS(check_hypotheses({3, 13, 61, 3}), domain_error);
    CHECK_THROWS_AS(unit_trichotomy({3, 13, 61, 2}), hypothesis_error);
    try {
        require_family({3, 13, 61, 2});
    } catch (hypothesis_error const & e) {
        CHECK(e.failed == Condition::legendre);
    }
}

TEST_CASE("trichotomy and dichotomy on (3, 13, 61, 1)")
{
    FamilyParams const p{3, 13, 61, 1};
    TrichotomyResult const t = unit_trichotomy(p);
    CHECK(t.which == Branch::S);
    CHECK(t.flags[0] + t.flags[1] + t.flags[2] == 1);
    qf::QuadUnit const u = qf::fundamental_unit(p.eta_qrs());
    CHECK(t.gamma == u.X);
    CHECK(t.gamma_p == u.Y);

    DichotomyResult const d = rho_dichotomy(p);
    CHECK(d.sign == 1);
    CHECK(d.y == d.y1 * d.y2);
    CHECK(2 * 3 * d.y1 * d.y1 - 13 * 61 * d.y2 * d.y2 == 2);
}

TEST_CASE("trichotomy flags recomputed independently")
{
    for (auto const & p : family_triples(110)) {
        INFO(p.str());
        qf::QuadUnit const u = qf::fundamental_unit(p.eta_qrs());
        Integer const g = u.X;
        int const sg = p.eta == 2 ? -1 : 1;
        bool const f[3] = {oracle::is_square((p.eta == 1 ? 2 : 1) * Z(p.q) * (g - 1)),
                           oracle::is_square(2 * Z(p.r) * (g + sg)), oracle::is_square(2 * Z(p.s) * (g + sg))};
        REQUIRE(f[0] + f[1] + f[2] == 1);
        TrichotomyResult const t = unit_trichotomy(p);
        REQUIRE(t.flags[0] == f[0]);
        REQUIRE(t.flags[1] == f[1]);
        REQUIRE(t.flags[2] == f[2]);
        /* sqrt(eta eps) squared back */
        Integer const eta = p.eta;
        Integer A = Z(p.q), B = eta * Z(p.r) * Z(p.s);
        if (t.which == Branch::R) {
            A = eta * Z(p.r);
            B = Z(p.q) * Z(p.s);
        } else if (t.which == Branch::S) {
            A = eta * Z(p.s);
            B = Z(p.q) * Z(p.r);
        }
        REQUIRE(A * t.gamma1 * t.gamma1 + B * t.gamma2 * t.gamma2 == eta * g);
        REQUIRE(2 * t.gamma1 * t.gamma2 == eta * u.Y);

        DichotomyResult const d = rho_dichotomy(p);
        Integer const c = (p.rho() == 2 ? 2 : 1) * Z(p.q);
        REQUIRE(oracle::is_square(c * (d.x + 1)) != oracle::is_square(c * (d.x - 1)));
        REQUIRE(d.y == d.y1 * d.y2);

        REQUIRE((q_index_F1(p) == 2) == (t.which == Branch::Q));
        Integer const h = qf::h2(p.eta_qrs());
        REQUIRE(h2_F1(p) == (t.which == Branch::Q ? 2 * h : h));
        REQUIRE(h2_product_identity(p).holds());
    }
}

TEST_CASE("h2_K and the Kuroda path")
{
    int seen_half = 0, seen_quarter = 0;
    for (auto const & p : family_triples(110)) {
        INFO(p.str());
        BiquadraticH2 const k = h2_K(p);
        Integer const prod = qf::h2(p.r * p.s) * qf::h2(p.eta_qrs());
        if (qf::unit_norm(p.r * p.s) == 1) {
            REQUIRE(k.q_index == 2);
            REQUIRE(2 * k.h2 == prod);
            ++seen_half;
        } else {
            REQUIRE(k.q_index == 1);
            REQUIRE(4 * k.h2 == prod);
            ++seen_quarter;
        }
        HypothesisReport const rep = check_hypotheses(p);
        if (rep.corollary()) {
            /* K1 = Q(sqrt 2, sqrt q, sqrt rs) */
            REQUIRE(2 * h2_K1(p) == qf::h2(p.r * p.s) * qf::h2(p.eta_qrs()));
        }
    }
    CHECK(seen_half > 0);
    CHECK(seen_quarter > 0);
}

TEST_CASE("kuroda_class_number")
{
    CHECK(kuroda_exponent(2, true) == 2);
    CHECK(kuroda_exponent(3, true) == 9);
    CHECK(kuroda_class_number({3, 5, 7}, 4, 2, true) == 105);
    CHECK_THROWS_AS(kuroda_class_number({1, 1}, 1, 2, true), domain_error);
    CHECK(kuroda_class_number({1, 1, 1, 2, 4, 1, 4}, 16, 3, true) == 1);
}

TEST_CASE("unit_index_K1")
{
    int cases[4] = {};
    for (auto const & p : family_triples(140)) {
        HypothesisReport const rep = check_hypotheses(p);
        if (!rep.corollary())
            continue;
        INFO(p.str());
        UnitIndexReport const u = unit_index_K1(p);
        REQUIRE(u.q_index == 16);
        ++cases[u.unit_case];
        std::string const rs = std::to_string(p.r * p.s);
        std::string const want = u.unit_case == 1
                                     ? "sqrt(eps_" + rs + "*eps_" + std::to_string(p.eta_qrs()) + ")"
                                     : u.unit_case == 2 ? "sqrt(eps_2*eps_" + rs + "*eps_" + std::to_string(2 * p.r * p.s) + ")"
                                                        : "sqrt(eps_2*eps_" + rs + "*eps_" + std::to_string(2 * p.r * p.s)
                                                              + "*eps_" + std::to_string(p.eta_qrs()) + ")";
        REQUIRE(std::find(u.basis.begin(), u.basis.end(), want) != u.basis.end());
        REQUIRE((u.unit_case == 1) == (qf::unit_norm(p.r * p.s) == 1));
    }
    CHECK(cases[1] > 0);
    CHECK(cases[2] + cases[3] > 0);

    /* Q branch fails the square condition */
    for (auto const & p : family_triples(110))
        if (unit_trichotomy(p).which == Branch::Q) {
            CHECK_THROWS_AS(unit_index_K1(p), hypothesis_error);
            break;
        }
}

TEST_CASE("ambiguous_rank_interval")
{
    /* K' = Q(sqrt r, sqrt(eta q s)) over Q(sqrt r) */
    AmbiguousRank const a = ambiguous_rank_interval(13, 3 * 61);
    CHECK(a.t == 5);
    CHECK(a.rank_hi == 4);
    CHECK(a.rank_lo == 2);

    AmbiguousRank const b = ambiguous_rank_interval(5, 2 * 3 * 101);
    CHECK(b.t == 4);
    CHECK(b.rank_lo == 1);
    CHECK(b.rank_hi == 3);

    CHECK_THROWS_AS(ambiguous_rank_interval(10, 3), domain_error); /* h(10) = 2 */
    CHECK_THROWS_AS(ambiguous_rank_interval(13, 13), domain_error);
}

TEST_CASE("fukuda_stable")
{
    CHECK(fukuda_stable(8, 8));
    CHECK_FALSE(fukuda_stable(8, 16));
}
