// twoclass: triple search, single-triple verification and group-table sweeps.
//
// Exit codes: 0 success, 1 internal error, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "twoclass/report.hpp"
#include "twoclass/search.hpp"

namespace {

using namespace twoclass;

struct Common {
    std::string out;
    std::string format = "csv";
    unsigned workers = 1;
    std::size_t digit_cap = quadfield::default_digit_cap;
};

void add_common(CLI::App * cmd, Common & c)
{
    cmd->add_option("--out", c.out, "Write output to PATH instead of stdout");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
    cmd->add_option("--digit-cap", c.digit_cap, "Largest fundamental unit, in decimal digits")
        ->check(CLI::Range(std::size_t{1000}, std::size_t{100000000}));
}

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* "2,3,4", "2-4" or a mix; empty string gives an empty list. */
std::vector<int> parse_list(std::string const & text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            auto dash = item.find('-', 1);
            if (dash == std::string::npos) {
                out.push_back(std::stoi(item));
            } else {
                int lo = std::stoi(item.substr(0, dash)), hi = std::stoi(item.substr(dash + 1));
                for (int v = lo; v <= hi; ++v)
                    out.push_back(v);
            }
        } catch (std::logic_error const &) {
            throw usage_error("bad list item '" + item + "'");
        }
    }
    return out;
}

void emit(Common const & c, std::string const & text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + c.out);
    f << text;
    if (!f)
        throw std::runtime_error("write failed: " + c.out);
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Prime-triple search and 2-class group predictions for real quadratic fields"};
    app.require_subcommand(1);

    Common search_c, verify_c, tables_c;

    auto * search = app.add_subcommand("search", "Enumerate prime triples and evaluate the hypotheses");
    std::uint64_t max_prime = 100;
    std::string eta_opt = "both", require_opt = "full-theorem";
    search->add_option("--max-prime", max_prime, "Largest prime for q, r and s");
    search->add_option("--eta", eta_opt, "1, 2 or both")->check(CLI::IsMember({"1", "2", "both"}));
    search->add_option("--require", require_opt, "Hypothesis set required for predictions")
        ->check(CLI::IsMember({"full-theorem", "corollary-only"}));
    add_common(search, search_c);

    auto * verify = app.add_subcommand("verify", "Full pipeline and cross-checks for one triple");
    std::uint64_t vq = 0, vr = 0, vs = 0;
    int veta = 1;
    std::string vrequire = "full-theorem";
    verify->add_option("q", vq, "Prime q = 3 mod 4")->required();
    verify->add_option("r", vr, "Prime r = 5 mod 8")->required();
    verify->add_option("s", vs, "Prime s = 5 mod 8")->required();
    verify->add_option("eta", veta, "1 or 2")->check(CLI::IsMember({1, 2}));
    verify->add_option("--require", vrequire, "Hypothesis set required for predictions")
        ->check(CLI::IsMember({"full-theorem", "corollary-only"}));
    add_common(verify, verify_c);

    auto * tables = app.add_subcommand("group-tables", "Check the subgroup tables against the groups engine");
    std::string alphas = "2-4", ns = "2-4", types = "1-4", ss, ks = "1,3";
    tables->add_option("--alpha", alphas, "alpha values, e.g. 2-4 or 2,3");
    tables->add_option("--n", ns, "n values");
    tables->add_option("--types", types, "types among 1..4");
    tables->add_option("--s", ss, "s values for types 3 and 4 (default: all valid)");
    tables->add_option("--k", ks, "odd k values for types 3 and 4");
    add_common(tables, tables_c);

    try {
        app.parse(argc, argv);
    } catch (CLI::Success const & e) {
        return app.exit(e);
    } catch (CLI::ParseError const & e) {
        app.exit(e);
        return 2;
    }

    try {
        if (search->parsed()) {
            search::SearchConfig cfg;
            cfg.max_prime = max_prime;
            cfg.etas = eta_opt == "both" ? std::vector<int>{1, 2} : std::vector<int>{std::stoi(eta_opt)};
            cfg.require = report::parse_require(require_opt);
            cfg.digit_cap = search_c.digit_cap;
            cfg.workers = search_c.workers;
            try {
                cfg.validate();
            } catch (domain_error const & e) {
                throw usage_error(e.what());
            }
            auto const rows = search::run_search(cfg);
            if (search_c.format == "json") {
                emit(search_c, report::to_json(rows));
            } else {
                std::ostringstream o;
                report::write_csv(o, rows);
                emit(search_c, o.str());
            }
        } else if (verify->parsed()) {
            family::FamilyParams const p{vq, vr, vs, veta};
            for (std::uint64_t v : {vq, vr, vs})
                if (!is_prime(v))
                    throw usage_error(std::to_string(v) + " is not prime");
            auto const rep = search::verify_triple(p, report::parse_require(vrequire), verify_c.digit_cap);
            if (verify->count("--format") == 0)
                emit(verify_c, search::verify_text(rep));
            else if (verify_c.format == "json")
                emit(verify_c, search::verify_json(rep));
            else {
                std::ostringstream o;
                report::write_csv(o, {rep.record});
                emit(verify_c, o.str());
            }
        } else if (tables->parsed()) {
            search::TableSweepConfig cfg;
            cfg.alphas = parse_list(alphas);
            cfg.ns = parse_list(ns);
            cfg.types = parse_list(types);
            cfg.ss = parse_list(ss);
            cfg.ks = parse_list(ks);
            cfg.workers = tables_c.workers;
            std::vector<groups::TableCheck> rows;
            try {
                rows = search::run_table_sweep(cfg);
            } catch (groups::capacity_error const & e) {
                throw usage_error(e.what());
            }
            if (tables_c.format == "json") {
                emit(tables_c, report::table_json(rows));
            } else {
                std::ostringstream o;
                report::write_table_csv(o, rows);
                emit(tables_c, o.str());
            }
            std::size_t counts[4] = {};
            for (auto const & r : rows)
                ++counts[static_cast<int>(r.outcome)];
            std::cerr << "rows " << rows.size() << ": match " << counts[0] << ", mismatch " << counts[1]
                      << ", no_row " << counts[2] << ", undefined " << counts[3] << "\n";
        }
    } catch (usage_error const & e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (std::exception const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
