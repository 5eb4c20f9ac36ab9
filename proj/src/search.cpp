#include "twoclass/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "twoclass/predict.hpp"

namespace twoclass::search {

namespace qf = quadfield;
using family::FamilyParams;

namespace {

/* out[i] = fn(i) over a pool of workers; the first exception wins. */
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, unsigned workers, Fn fn)
{
    std::vector<T> out(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    auto work = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (!err)
                    err = std::current_exception();
                next = n;
            }
        }
    };
    unsigned const k = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < k; ++t)
        pool.emplace_back(work);
    work();
    for (auto & th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
    return out;
}

Integer Z(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

std::string yes(bool b) { return b ? "yes" : "no"; }

} // namespace

void SearchConfig::validate() const
{
    if (max_prime < 13)
        throw domain_error("max prime must be at least 13");
    if (digit_cap < 1000)
        throw domain_error("digit cap must be at least 1000");
    for (int e : etas)
        if (e != 1 && e != 2)
            throw domain_error("eta must be 1 or 2");
}

std::vector<FamilyParams> candidates(std::uint64_t max_prime, std::vector<int> const & etas)
{
    std::vector<int> es = etas;
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());

    std::vector<std::uint64_t> qs, rs;
    for (std::uint64_t p : primes_up_to(max_prime)) {
        if (p % 4 == 3)
            qs.push_back(p);
        if (p % 8 == 5)
            rs.push_back(p);
    }
    std::vector<FamilyParams> out;
    for (int eta : es)
        for (std::uint64_t q : qs)
            for (std::size_t i = 0; i < rs.size(); ++i)
                for (std::size_t j = i + 1; j < rs.size(); ++j)
                    out.push_back({q, rs[i], rs[j], eta});
    return out;
}

std::vector<report::TripleRecord> run_search(SearchConfig const & cfg)
{
    cfg.validate();
    auto const cands = candidates(cfg.max_prime, cfg.etas);
    return parallel_map<report::TripleRecord>(cands.size(), cfg.workers, [&](std::size_t i) {
        return report::evaluate(cands[i], cfg.require, cfg.digit_cap);
    });
}

VerifyReport verify_triple(FamilyParams const & p, report::Require require, std::size_t digit_cap)
{
    for (std::uint64_t v : {p.q, p.r, p.s})
        if (!is_prime(v))
            throw domain_error(std::to_string(v) + " is not prime");
    if (p.eta != 1 && p.eta != 2)
        throw domain_error("eta must be 1 or 2");

    VerifyReport v;
    v.record = report::evaluate(p, require, digit_cap);
    auto const & rec = v.record;
    Integer const q = Z(p.q), r = Z(p.r), s = Z(p.s);

    std::ostringstream d;
    d << "q mod 4 = " << p.q % 4 << ", r mod 8 = " << p.r % 8 << ", s mod 8 = " << p.s % 8;
    v.trace.push_back({"congruences", rec.cong_ok, d.str()});
    d.str("");
    d << "(q/r) = " << legendre_symbol(q, r) << ", (q/s) = " << legendre_symbol(q, s) << ", wanted "
      << (p.eta == 2 ? -1 : 1);
    v.trace.push_back({"legendre", rec.leg_ok, d.str()});
    d.str("");
    d << "(r/s) = " << legendre_symbol(r, s);
    v.trace.push_back({"rs_residue", rec.rs_ok, d.str()});

    bool const fam = rec.cong_ok && rec.leg_ok && rec.rs_ok;
    if (fam) {
        d.str("");
        d << "(r/s)_4 = " << quartic_symbol(r, s) << ", (s/r)_4 = " << quartic_symbol(s, r);
        v.trace.push_back({"quartic", rec.quartic_neq, d.str()});
    } else {
        v.trace.push_back({"quartic", std::nullopt, "gated"});
    }
    v.trace.push_back({"norm_rs", rec.norm_rs ? std::optional<bool>(*rec.norm_rs == 1) : std::nullopt,
                       rec.norm_rs ? "N(eps_rs) = " + std::to_string(*rec.norm_rs) : "gated"});
    std::string sq_detail = "gated";
    if (rec.square_cond) {
        qf::QuadUnit const u = qf::fundamental_unit(p.eta_qrs(), digit_cap);
        sq_detail = "gamma has " + std::to_string(mpz_sizeinbase(u.X.get_mpz_t(), 10)) + " digits";
    } else if (rec.status == report::Status::unit_too_large) {
        sq_detail = "unit exceeds the digit cap";
    }
    v.trace.push_back({"square", rec.square_cond, sq_detail});
    if (rec.branch) {
        auto const dc = family::rho_dichotomy(p, digit_cap);
        v.trace.push_back({"trichotomy", true, "branch " + *rec.branch});
        v.trace.push_back({"dichotomy", true, std::string("sign ") + (dc.sign > 0 ? "+" : "-")});
    }

    if (fam && rec.status != report::Status::unit_too_large) {
        family::ProductIdentity const pi = family::h2_product_identity(p);
        d.str("");
        d << "h2(qrs) = " << pi.h2_qrs << ", h2(2qrs) = " << pi.h2_2qrs << ", h2(eta qrs) = " << pi.h2_eta_qrs;
        v.checks.push_back({"h2_product_identity", pi.holds(), d.str()});
    }
    if (rec.status == report::Status::ok && rec.A_F) {
        predict::Prediction const pred = predict::predict_quadratic(p, digit_cap);
        Integer const h = qf::h2(p.eta_qrs());
        d.str("");
        d << "|A_F| = " << pred.A_F.order() << ", h2(eta qrs) = " << h;
        v.checks.push_back({"A_F_order", pred.A_F.order() == h, d.str()});
        v.checks.push_back({"A_F_structure", pred.A_F == pred.A_F_computed,
                            "predicted " + pred.A_F.str() + ", form class group " + pred.A_F_computed.str()});
        if (pred.A_K) {
            family::BiquadraticH2 const hk = family::h2_K(p, digit_cap);
            d.str("");
            d << "|A_K| = " << pred.A_K->order() << ", Kuroda h2(K) = " << hk.h2;
            v.checks.push_back({"A_K_order", pred.A_K->order() == hk.h2, d.str()});
        }
        if (pred.presentation) {
            groups::FiniteGroup const G = groups::build_metacyclic(*pred.presentation);
            auto const S = groups::standard_subgroups(G);
            auto ab = [&](groups::Subgroup const & H) { return groups::abelianization(G, H); };
            v.checks.push_back({"A_K_vs_H32", ab(S.H32) == *pred.A_K, "H32 " + ab(S.H32).str()});
            v.checks.push_back({"A_Kp_vs_H12", ab(S.H12) == *pred.A_Kp, "H12 " + ab(S.H12).str()});
            v.checks.push_back({"A_FF_vs_H34", ab(S.H34) == *pred.A_FF, "H34 " + ab(S.H34).str()});
            if (pred.minimal16)
                v.checks.push_back({"minimal16", G.order() == 16 && groups::is_minimal(G),
                                    "order " + std::to_string(G.order())});
        }
    }
    return v;
}

std::string verify_json(VerifyReport const & v, int indent)
{
    using json = nlohmann::ordered_json;
    json out;
    out["record"] = json::parse(report::to_json({v.record}, -1))[0];
    auto steps = [](std::vector<TraceStep> const & xs) {
        json arr = json::array();
        for (auto const & t : xs) {
            json j;
            j["condition"] = t.condition;
            j["holds"] = t.holds ? json(*t.holds) : json(nullptr);
            j["detail"] = t.detail;
            arr.push_back(std::move(j));
        }
        return arr;
    };
    out["trace"] = steps(v.trace);
    out["checks"] = steps(v.checks);
    return out.dump(indent) + "\n";
}

std::string verify_text(VerifyReport const & v)
{
    std::ostringstream o;
    auto const & r = v.record;
    o << "triple " << r.params().str() << "\n";
    for (auto const & t : v.trace)
        o << "  " << t.condition << ": " << (t.holds ? yes(*t.holds) : "-") << "  (" << t.detail << ")\n";
    if (r.m)
        o << "  m = " << *r.m << "\n";
    auto show = [&](char const * label, std::optional<std::string> const & x) {
        if (x)
            o << "  " << label << " = " << *x << "\n";
    };
    show("A(F)", r.A_F);
    show("A(K)", r.A_K);
    show("A(K')", r.A_Kp);
    show("A(FF)", r.A_FF);
    if (!r.galois.empty())
        o << "  galois: " << r.galois << "\n";
    for (auto const & c : v.checks)
        o << "  check " << c.condition << ": " << (c.holds.value_or(false) ? "ok" : "FAILED") << "  (" << c.detail
          << ")\n";
    o << "  status: " << report::to_string(r.status) << "\n";
    return o.str();
}

std::vector<groups::TableCheck> run_table_sweep(TableSweepConfig const & cfg)
{
    std::vector<groups::MetacyclicParams> params;
    for (auto const & p : groups::parameter_sweep(cfg.alphas, cfg.ns, cfg.types, cfg.ks))
        if (p.type <= 2 || cfg.ss.empty() || std::find(cfg.ss.begin(), cfg.ss.end(), p.s) != cfg.ss.end())
            params.push_back(p);
    for (auto const & p : params)
        if (p.alpha + p.n > 12)
            throw groups::capacity_error(p.str() + " has order above 2^12");

    auto per = parallel_map<std::vector<groups::TableCheck>>(params.size(), cfg.workers, [&](std::size_t k) {
        groups::FiniteGroup const G = groups::build_metacyclic(params[k]);
        auto const S = groups::standard_subgroups(G);
        std::vector<groups::TableCheck> rows;
        for (int level : {2, 4})
            for (int i = 1; i <= 3; ++i)
                rows.push_back(groups::verify_table_row(params[k], G, S, i, level));
        return rows;
    });
    std::vector<groups::TableCheck> out;
    for (auto & v : per)
        out.insert(out.end(), v.begin(), v.end());
    return out;
}

} // namespace twoclass::search
