#include <doctest.h>

#include "twoclass/predict.hpp"
#include "twoclass/search.hpp"

using namespace twoclass;
using namespace twoclass::predict;
using family::Condition;
using family::FamilyParams;
using family::hypothesis_error;
namespace qf = twoclass::quadfield;
namespace gr = twoclass::groups;

namespace {

Condition failed_condition(FamilyParams const & p)
{
    try {
        predict_quadratic(p);
    } catch (hypothesis_error const & e) {
        return e.failed;
    }
    FAIL("no hypothesis_error for " << p.str());
    return Condition::congruences;
}

} // namespace

TEST_CASE("type 1 triple (7, 29, 53)")
{
    FamilyParams const p{7, 29, 53, 1};
    Prediction const pr = predict_quadratic(p);
    CHECK(pr.m == 2);
    CHECK(pr.galois == Galois::type1_alpha2);
    CHECK(to_string(pr.galois) == "type1-alpha2");
    CHECK(pr.A_F.str() == "2x4");
    CHECK(pr.A_F_computed == pr.A_F);
    REQUIRE(pr.A_K);
    CHECK(pr.A_K->str() == "2x4");
    CHECK(pr.A_Kp->str() == "2x4");
    CHECK(pr.A_Kpp->str() == "2x4");
    CHECK(pr.A_FF->str() == "2x2");
    CHECK(pr.minimal16);
    REQUIRE(pr.presentation);
    CHECK(pr.presentation->type == 1);
    CHECK(pr.presentation->alpha == 2);
    CHECK(pr.presentation->n == 2);

    CHECK(predict_minimal16(p));
    CHECK(predict_triquadratic(p).str() == "2x2");
    gr::FiniteGroup const G = gr::build_metacyclic(predict_presentation(p));
    CHECK(G.order() == 16);
    CHECK(gr::is_minimal(G));
}

TEST_CASE("not type 1: (3, 13, 61)")
{
    FamilyParams const p{3, 13, 61, 1};
    Prediction const pr = predict_quadratic(p);
    CHECK(pr.galois == Galois::not_type1);
    CHECK(pr.m == 2);
    CHECK(pr.A_F.str() == "2x4");
    CHECK_FALSE(pr.A_K);
    CHECK_FALSE(pr.A_FF);
    CHECK_FALSE(pr.presentation);
    REQUIRE(pr.h2_rs);
    CHECK(*pr.h2_rs % 4 == 0);
    CHECK_THROWS_AS(predict_minimal16(p), hypothesis_error);
    CHECK_THROWS_AS(predict_presentation(p), hypothesis_error);
    CHECK_THROWS_AS(predict_triquadratic(p), hypothesis_error);
}

TEST_CASE("gates name the first failed hypothesis")
{
    CHECK(failed_condition({3, 13, 61, 2}) == Condition::legendre);
    CHECK(failed_condition({5, 13, 29, 1}) == Condition::congruences);
    /* N(eps_145) = -1 */
    CHECK(qf::unit_norm(5 * 29) == -1);
    CHECK(failed_condition({59, 5, 29, 1}) == Condition::norm_rs);
    /* the corollary level does not need the norm */
    BiquadraticPrediction const bq = predict_biquadratic({59, 5, 29, 1});
    CHECK(bq.A_Kp.rank() == 2);
    CHECK_THROWS_AS(predict_biquadratic({3, 13, 61, 2}), hypothesis_error);
}

TEST_CASE("unit_too_large is raised, not swallowed")
{
    qf::clear_cache();
    CHECK_THROWS_AS(predict_quadratic({3, 13, 61, 1}, 2), qf::unit_too_large);
    qf::clear_cache();
}

TEST_CASE("coherence over a small search")
{
    search::SearchConfig cfg;
    cfg.max_prime = 200;
    int checked = 0, type1 = 0;
    for (auto const & rec : search::run_search(cfg)) {
        if (rec.status != report::Status::ok)
            continue;
        FamilyParams const p = rec.params();
        INFO(p.str());
        Prediction const pr = predict_quadratic(p);
        REQUIRE(pr.A_F_computed == pr.A_F);
        REQUIRE(pr.A_F.order() == qf::h2(p.eta_qrs()));
        REQUIRE(rec.A_F == pr.A_F.str());
        REQUIRE(rec.galois == to_string(pr.galois));
        ++checked;
        if (pr.galois != Galois::type1_alpha2)
            continue;
        ++type1;
        REQUIRE(pr.m >= 2);
        REQUIRE(qf::h2(p.r * p.s) == 2);
        REQUIRE(pr.A_K->order() == family::h2_K(p).h2);
        gr::FiniteGroup const G = gr::build_metacyclic(*pr.presentation);
        gr::StandardSubgroups const S = gr::standard_subgroups(G);
        REQUIRE(gr::abelianization(G, S.H32) == *pr.A_K);
        REQUIRE(gr::abelianization(G, S.H12) == *pr.A_Kp);
        REQUIRE(gr::abelianization(G, S.H34) == *pr.A_FF);
    }
    CHECK(checked > 10);
    CHECK(type1 > 0);
}
