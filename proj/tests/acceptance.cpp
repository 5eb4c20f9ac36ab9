// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "oracle.hpp"
#include "twoclass/family.hpp"
#include "twoclass/groups.hpp"
#include "twoclass/predict.hpp"
#include "twoclass/quadfield.hpp"
#include "twoclass/report.hpp"
#include "twoclass/search.hpp"

using namespace twoclass;
namespace fam = twoclass::family;
namespace gr = twoclass::groups;
namespace qf = twoclass::quadfield;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(std::string const & why)
    {
        if (pass)
            detail << "first failure: " << why << "; ";
        pass = false;
    }
};

Integer Z(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

/* Family triples from the search candidates (primes < bound, both eta). */
std::vector<fam::FamilyParams> family_sweep(std::uint64_t bound)
{
    std::vector<fam::FamilyParams> out;
    for (auto const & p : search::candidates(bound, {1, 2})) {
        int const want = p.eta == 2 ? -1 : 1;
        if (oracle::legendre(static_cast<long>(p.q), p.r) == want && oracle::legendre(static_cast<long>(p.q), p.s) == want
            && oracle::legendre(static_cast<long>(p.r), p.s) == 1)
            out.push_back(p);
    }
    return out;
}

/* Valid (r, s): primes = 5 mod 8, r < s, (r/s) = 1, rs < bound. */
std::vector<std::pair<std::uint64_t, std::uint64_t>> rs_pairs(std::uint64_t bound)
{
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::uint64_t r = 5; r * r < bound; r += 8)
        for (std::uint64_t s = r + 8; r * s < bound; s += 8)
            if (oracle::is_prime(r) && oracle::is_prime(s) && oracle::legendre(static_cast<long>(r), s) == 1)
                out.emplace_back(r, s);
    return out;
}

Outcome trichotomy()
{
    Outcome o;
    int checked = 0, skipped = 0;
    for (auto const & p : family_sweep(500)) {
        try {
            qf::QuadUnit const u = qf::fundamental_unit(p.eta_qrs());
            Integer const g = u.X;
            int const sg = p.eta == 2 ? -1 : 1;
            bool const f[3] = {oracle::is_square((p.eta == 1 ? 2 : 1) * Z(p.q) * (g - 1)),
                               oracle::is_square(2 * Z(p.r) * (g + sg)), oracle::is_square(2 * Z(p.s) * (g + sg))};
            if (f[0] + f[1] + f[2] != 1)
                o.fail(p.str() + " has " + std::to_string(f[0] + f[1] + f[2]) + " square flags");
            fam::TrichotomyResult const t = fam::unit_trichotomy(p);
            if (t.flags[0] != f[0] || t.flags[1] != f[1] || t.flags[2] != f[2])
                o.fail(p.str() + " library flags differ");
            ++checked;
        } catch (qf::unit_too_large const &) {
            ++skipped;
        } catch (std::exception const & e) {
            o.fail(p.str() + ": " + e.what());
        }
    }
    o.detail << checked << " family triples (primes < 500, eta 1 and 2), " << skipped << " over the digit cap";
    return o;
}

Outcome dichotomy()
{
    Outcome o;
    int checked = 0, skipped = 0, plus = 0;
    for (auto const & p : family_sweep(500)) {
        try {
            qf::QuadUnit const u = qf::fundamental_unit(p.rho_qrs());
            Integer const c = (p.rho() == 2 ? 2 : 1) * Z(p.q);
            bool const fp = oracle::is_square(c * (u.X + 1)), fm = oracle::is_square(c * (u.X - 1));
            if (fp == fm)
                o.fail(p.str() + " dichotomy flags equal");
            fam::DichotomyResult const d = fam::rho_dichotomy(p);
            Integer const lhs = p.rho() * Z(p.q) * d.y1 * d.y1 - Z(p.r) * Z(p.s) * d.y2 * d.y2;
            if (d.x != u.X || d.y != u.Y || d.y != d.y1 * d.y2 || lhs != 2 * d.sign || d.sign != (fp ? 1 : -1))
                o.fail(p.str() + " identity fails");
            plus += d.sign == 1;
            ++checked;
        } catch (qf::unit_too_large const &) {
            ++skipped;
        } catch (std::exception const & e) {
            o.fail(p.str() + ": " + e.what());
        }
    }
    o.detail << checked << " triples, " << plus << " with the + sign, " << skipped << " over the digit cap";
    return o;
}

Outcome product_identity()
{
    Outcome o;
    int checked = 0;
    auto const primes = primes_up_to(100000 / 15);
    for (std::uint64_t q : primes) {
        if (q % 4 != 3 || q * 5 * 13 >= 100000)
            continue;
        for (std::uint64_t r : primes) {
            if (r % 8 != 5)
                continue;
            if (q * r * (r + 8) >= 100000)
                break;
            for (std::uint64_t s : primes) {
                if (s <= r || s % 8 != 5)
                    continue;
                if (q * r * s >= 100000)
                    break;
                for (int eta : {1, 2}) {
                    fam::FamilyParams const p{q, r, s, eta};
                    if (!fam::check_hypotheses(p).family())
                        continue;
                    fam::ProductIdentity const id = fam::h2_product_identity(p);
                    if (!id.holds())
                        o.fail(p.str() + ": " + to_string(id.h2_qrs) + " * " + to_string(id.h2_2qrs) + " != 4 * "
                               + to_string(id.h2_eta_qrs));
                    ++checked;
                }
            }
        }
    }
    o.detail << checked << " family triples with qrs < 10^5";
    return o;
}

Outcome small_fields()
{
    Outcome o;
    int nq = 0;
    for (std::uint64_t q = 3; q < 1000; q += 4)
        if (oracle::is_prime(q)) {
            if (qf::h2(q) != 1 || qf::h2(2 * q) != 1)
                o.fail("q = " + std::to_string(q));
            ++nq;
        }
    auto const pairs = rs_pairs(10000);
    for (auto [r, s] : pairs)
        if (qf::h2(2 * r * s) != 4)
            o.fail("h2(2rs) for " + std::to_string(r) + ", " + std::to_string(s) + " is "
                   + to_string(qf::h2(2 * r * s)));
    o.detail << nq << " primes q, " << pairs.size() << " pairs (r, s)";
    return o;
}

Outcome quartic_norm()
{
    Outcome o;
    int norm_plus = 0, unequal = 0;
    auto const pairs = rs_pairs(10000);
    for (auto [r, s] : pairs) {
        int const qrs = oracle::quartic(static_cast<long>(r), s), qsr = oracle::quartic(static_cast<long>(s), r);
        if (qf::unit_norm(r * s) == 1) {
            ++norm_plus;
            if (!(qrs != qsr || (qrs == 1 && qsr == 1)))
                o.fail("both symbols -1 with norm +1 at " + std::to_string(r) + ", " + std::to_string(s));
        }
        if (qrs != qsr) {
            ++unequal;
            if (qf::h2(r * s) != 2)
                o.fail("h2(rs) = " + to_string(qf::h2(r * s)) + " at " + std::to_string(r) + ", " + std::to_string(s));
        }
    }
    o.detail << pairs.size() << " pairs, " << norm_plus << " with N(eps_rs) = +1, " << unequal
             << " with unequal symbols";
    return o;
}

using Key = std::tuple<int, int, int, int, int, int, int>; /* type, alpha, n, s, k, level, i */

std::map<Key, std::string> read_discrepancies(std::string const & path)
{
    std::map<Key, std::string> out;
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string f[8];
        for (auto & x : f)
            std::getline(ss, x, ',');
        out[{std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3]), std::stoi(f[4]), std::stoi(f[5]),
             std::stoi(f[6])}] = f[7];
    }
    return out;
}

Outcome tables()
{
    Outcome o;
    auto const golden = read_discrepancies(std::string(TWOCLASS_GOLDEN_DIR) + "/table_discrepancies.csv");
    std::map<Key, std::string> found;
    int rows = 0, matched = 0, groups_checked = 0;
    for (auto const & p : gr::parameter_sweep({2, 3, 4}, {2, 3, 4}, {1, 2, 3, 4}, {1, 3})) {
        oracle::TableGroup const T = oracle::metacyclic(p.type, p.alpha, p.n, p.s, p.k);
        if (T.order() != (std::size_t{1} << (p.alpha + p.n))) {
            o.fail(p.str() + ": presentation has order " + std::to_string(T.order()));
            continue;
        }
        oracle::Profile const P = oracle::profile(T);
        ++groups_checked;
        for (int level : {2, 4})
            for (int i = 1; i <= 3; ++i) {
                auto const e = gr::table_entry(p, i, level);
                if (!e)
                    continue;
                ++rows;
                oracle::SubProfile const & H = P.sub[(level == 2 ? 0 : 3) + i - 1];
                /* table generators span the same subgroup */
                std::vector<int> gens;
                for (auto [x, y] : e->gen_exponents)
                    gens.push_back(T.mul[T.power(T.a, (x % (1L << p.alpha) + (1L << p.alpha)) % (1L << p.alpha))]
                                        [T.power(T.b, y)]);
                std::size_t const span = oracle::subgroup(T, gens).size();
                if (span != H.order)
                    o.fail(p.str() + " row " + std::to_string(level) + "/" + std::to_string(i) + " generators span "
                           + std::to_string(span));
                long const A = 1L << p.alpha;
                long const ex = e->derived_a_exponent % A;
                std::size_t const dclaim = ex == 0 ? 1 : static_cast<std::size_t>(A / std::gcd(ex, A));
                Key const key{p.type, p.alpha, p.n, p.s, p.k, level, i};
                std::string verdict;
                if (!e->ab_exponents) {
                    verdict = "undefined";
                } else {
                    std::vector<Integer> ords;
                    for (long v : *e->ab_exponents)
                        ords.push_back(pow2(static_cast<unsigned long>(std::max(0L, v))));
                    bool const neg = std::any_of(e->ab_exponents->begin(), e->ab_exponents->end(),
                                                 [](long v) { return v < 0; });
                    bool const ok = !neg && AbelianType(ords) == H.ab && dclaim == H.derived_order;
                    verdict = ok ? "match" : "mismatch";
                }
                if (verdict == "match") {
                    ++matched;
                    if (golden.count(key))
                        o.fail(p.str() + " row " + std::to_string(level) + "/" + std::to_string(i)
                               + " matches but is listed as a discrepancy");
                } else {
                    found[key] = verdict;
                }
                if (gr::to_string(gr::verify_table_row(p, i, level).outcome) != verdict)
                    o.fail(p.str() + " library verdict differs from the oracle");
            }
    }
    for (auto const & [k, v] : found) {
        auto const it = golden.find(k);
        if (it == golden.end() || it->second != v)
            o.fail("unrecorded " + v + " at type " + std::to_string(std::get<0>(k)) + " alpha "
                   + std::to_string(std::get<1>(k)) + " n " + std::to_string(std::get<2>(k)));
    }
    if (found.size() != golden.size())
        o.fail("golden file lists " + std::to_string(golden.size()) + " rows, oracle finds "
               + std::to_string(found.size()));
    o.detail << groups_checked << " groups, " << rows << " applicable rows, " << matched << " match, "
             << found.size() << " recorded discrepancies";
    return o;
}

/* Theorem-level triples with unequal quartic symbols below the search bound. */
std::vector<fam::FamilyParams> theorem_triples()
{
    search::SearchConfig cfg;
    cfg.max_prime = 500;
    cfg.workers = 4;
    std::vector<fam::FamilyParams> out;
    for (auto const & rec : search::run_search(cfg))
        if (rec.status == report::Status::ok && rec.galois == "type1-alpha2")
            out.push_back(rec.params());
    return out;
}

Outcome coherence(std::vector<fam::FamilyParams> const & triples)
{
    Outcome o;
    std::map<int, int> by_m;
    for (auto const & p : triples) {
        predict::Prediction const pr = predict::predict_quadratic(p);
        Integer const h = qf::h2(p.eta_qrs());
        if (pr.A_F.order() != pow2(static_cast<unsigned long>(pr.m + 1)) || pr.A_F.order() != h)
            o.fail(p.str() + ": |A_F| incoherent");
        if (pr.A_F_computed != pr.A_F)
            o.fail(p.str() + ": A_F predicted " + pr.A_F.str() + ", forms give " + pr.A_F_computed.str());
        if (!pr.A_K || pr.A_K->order() != fam::h2_K(p).h2)
            o.fail(p.str() + ": |A_K| differs from the Kuroda value");
        if (!pr.presentation) {
            o.fail(p.str() + ": no presentation for m = " + std::to_string(pr.m));
            continue;
        }
        gr::FiniteGroup const G = gr::build_metacyclic(*pr.presentation);
        gr::StandardSubgroups const S = gr::standard_subgroups(G);
        if (gr::abelianization(G, S.H32) != *pr.A_K || gr::abelianization(G, S.H12) != *pr.A_Kp
            || gr::abelianization(G, S.H34) != *pr.A_FF)
            o.fail(p.str() + ": subgroup abelianizations differ from the predictions");
        ++by_m[pr.m];
    }
    if (triples.empty())
        o.fail("no triples");
    o.detail << triples.size() << " triples (primes < 500); m:";
    for (auto [m, c] : by_m)
        o.detail << " " << m << "->" << c;
    return o;
}

Outcome minimal16(std::vector<fam::FamilyParams> const & triples)
{
    Outcome o;
    int checked = 0;
    for (auto const & p : triples) {
        if (qf::h2(p.eta_qrs()) != 8)
            continue;
        ++checked;
        if (!predict::predict_minimal16(p))
            o.fail(p.str() + ": predict_minimal16 false");
        gr::FiniteGroup const G = gr::build_metacyclic(predict::predict_presentation(p));
        gr::StandardSubgroups const S = gr::standard_subgroups(G);
        AbelianType const c24{2, 4};
        if (G.order() != 16 || !gr::is_minimal(G) || gr::abelianization(G, S.H12) != c24
            || gr::abelianization(G, S.H22) != c24)
            o.fail(p.str() + ": presentation is not minimal of order 16");
    }
    if (checked == 0)
        o.fail("no triple with h2 = 8");
    o.detail << checked << " triples with h2(eta qrs) = 8";
    return o;
}

Outcome substrate()
{
    Outcome o;
    int units = 0, brute = 0, groups = 0;
    for (std::uint64_t d = 2; d < 10000; ++d) {
        if (!is_squarefree(d))
            continue;
        qf::QuadUnit const u = qf::fundamental_unit(d, 100000);
        if (u.X * u.X - Z(d) * u.Y * u.Y != u.norm * u.den * u.den)
            o.fail("Pell identity for d = " + std::to_string(d));
        ++units;
        if (auto const b = oracle::pell(d, 3000)) {
            if (b->X != u.X || b->Y != u.Y || b->den != u.den || b->norm != u.norm)
                o.fail("unit for d = " + std::to_string(d) + " is not minimal");
            ++brute;
        } else if ((d % 4 == 1 && u.den == 1 ? 2 * u.Y : u.Y) <= 3000) {
            /* for d = 1 mod 4 the brute force searches X^2 - d Y^2 = +-4 */
            o.fail("brute force misses d = " + std::to_string(d));
        }
    }
    for (std::int64_t D = 5; D < 2000; ++D) {
        if (!qf::is_fundamental_discriminant(D) || is_perfect_square(D))
            continue;
        auto const n = oracle::narrow_class_group(D);
        auto const g = qf::narrow_class_group(D);
        if (!n.group_axioms || n.order != g.order || !(n.structure == g.structure))
            o.fail("D = " + std::to_string(D));
        ++groups;
    }
    o.detail << units << " units (" << brute << " also found by brute force), " << groups
             << " discriminants against the composition table";
    return o;
}

Outcome determinism()
{
    Outcome o;
    search::SearchConfig cfg;
    cfg.max_prime = 300;
    std::string ref_csv, ref_json;
    int runs = 0;
    for (unsigned w : {1u, 1u, 2u, 8u, 3u}) {
        qf::clear_cache();
        cfg.workers = w;
        auto const rows = search::run_search(cfg);
        std::ostringstream csv;
        report::write_csv(csv, rows);
        std::string const js = report::to_json(rows);
        if (runs++ == 0) {
            ref_csv = csv.str();
            ref_json = js;
        } else if (csv.str() != ref_csv || js != ref_json) {
            o.fail("output differs with " + std::to_string(w) + " workers");
        }
    }
    o.detail << runs << " runs (workers 1, 1, 2, 8, 3), " << ref_csv.size() << " CSV bytes";
    return o;
}

} // namespace

int main()
{
    std::vector<fam::FamilyParams> golden_triples;
    std::vector<std::pair<char const *, std::function<Outcome()>>> const criteria{
        {"trichotomy exactness", trichotomy},
        {"dichotomy exactness", dichotomy},
        {"h2 product identity", product_identity},
        {"fixed small-field values", small_fields},
        {"quartic/norm relation", quartic_norm},
        {"table verification", tables},
        {"structural coherence", [&] {
             golden_triples = theorem_triples();
             return coherence(golden_triples);
         }},
        {"minimal-case closure", [&] { return minimal16(golden_triples); }},
        {"quadratic substrate oracles", substrate},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto const t0 = std::chrono::steady_clock::now();
        Outcome r;
        try {
            r = criteria[k].second();
        } catch (std::exception const & e) {
            r.fail(std::string("exception: ") + e.what());
        }
        double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << " (" << criteria[k].first
                  << "): " << r.detail.str() << " [" << std::fixed << std::setprecision(1) << secs << " s]"
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
