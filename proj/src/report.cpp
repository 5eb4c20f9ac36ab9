#include "twoclass/report.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "twoclass/predict.hpp"

namespace twoclass::report {

using json = nlohmann::ordered_json;
namespace qf = quadfield;

std::string to_string(Require r)
{
    return r == Require::full_theorem ? "full-theorem" : "corollary-only";
}

Require parse_require(std::string const & s)
{
    if (s == "full-theorem")
        return Require::full_theorem;
    if (s == "corollary-only")
        return Require::corollary_only;
    throw domain_error("unknown requirement '" + s + "'");
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::ok: return "ok";
    case Status::unit_too_large: return "unit-too-large";
    case Status::hypothesis_failed: return "hypothesis-failed";
    }
    return "?";
}

Status parse_status(std::string const & s)
{
    if (s == "ok")
        return Status::ok;
    if (s == "unit-too-large")
        return Status::unit_too_large;
    if (s == "hypothesis-failed")
        return Status::hypothesis_failed;
    throw domain_error("unknown status '" + s + "'");
}

std::vector<std::string> const & csv_columns()
{
    static std::vector<std::string> const cols{"eta", "q", "r", "s", "cong_ok", "leg_ok", "rs_ok",
                                               "quartic_neq", "norm_rs", "square_cond", "branch", "m",
                                               "A_F", "A_K", "A_Kp", "A_FF", "galois", "status"};
    return cols;
}

TripleRecord evaluate(family::FamilyParams const & p, Require require, std::size_t digit_cap)
{
    family::HypothesisReport const rep = family::check_hypotheses(p, digit_cap);
    TripleRecord rec;
    rec.eta = p.eta;
    rec.q = p.q;
    rec.r = p.r;
    rec.s = p.s;
    rec.cong_ok = rep.congruences;
    rec.leg_ok = rep.legendre;
    rec.rs_ok = rep.rs_residue;
    rec.quartic_neq = rep.quartic_neq;
    rec.norm_rs = rep.norm_rs;
    rec.square_cond = rep.square_cond;
    rec.m = rep.m;
    if (rep.unit_too_large) {
        rec.status = Status::unit_too_large;
        return rec;
    }
    if (!rep.family())
        return rec;
    rec.branch = family::to_string(family::unit_trichotomy(p, digit_cap).which);

    bool const theorem = rep.corollary() && rep.norm_rs == 1;
    bool const wanted = require == Require::full_theorem ? theorem : rep.corollary();
    if (!wanted)
        return rec;
    rec.status = Status::ok;
    if (theorem) {
        predict::Prediction const pred = predict::predict_quadratic(p, digit_cap);
        rec.A_F = pred.A_F.str();
        rec.A_Kp = pred.A_Kp->str();
        if (pred.A_K)
            rec.A_K = pred.A_K->str();
        if (pred.A_FF)
            rec.A_FF = pred.A_FF->str();
        rec.galois = predict::to_string(pred.galois);
    } else {
        predict::BiquadraticPrediction const bq = predict::predict_biquadratic(p, digit_cap);
        rec.A_Kp = bq.A_Kp.str();
        if (bq.A_K)
            rec.A_K = bq.A_K->str();
    }
    return rec;
}

namespace {

std::string cell(std::optional<bool> const & v) { return v ? (*v ? "true" : "false") : ""; }
std::string cell(std::optional<int> const & v) { return v ? std::to_string(*v) : ""; }
std::string cell(std::optional<std::string> const & v) { return v.value_or(""); }
std::string cell(bool v) { return v ? "true" : "false"; }

bool parse_bool(std::string const & s)
{
    if (s == "true")
        return true;
    if (s == "false")
        return false;
    throw domain_error("expected true/false, got '" + s + "'");
}

std::optional<bool> opt_bool(std::string const & s)
{
    if (s.empty())
        return std::nullopt;
    return parse_bool(s);
}

std::optional<int> opt_int(std::string const & s)
{
    if (s.empty())
        return std::nullopt;
    return std::stoi(s);
}

std::optional<std::string> opt_str(std::string const & s)
{
    if (s.empty())
        return std::nullopt;
    return s;
}

std::vector<std::string> split(std::string const & line)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ','))
        out.push_back(cur);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::string csv_quote(std::string const & s)
{
    if (s.find_first_of(",\"") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

template <class T>
json nullable(std::optional<T> const & v)
{
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(json const & j, char const * key)
{
    json const & v = j.at(key);
    if (v.is_null())
        return std::nullopt;
    return v.get<T>();
}

} // namespace

void write_csv(std::ostream & out, std::vector<TripleRecord> const & rows)
{
    auto const & cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';
    for (auto const & r : rows) {
        std::vector<std::string> const v{std::to_string(r.eta), std::to_string(r.q), std::to_string(r.r),
                                         std::to_string(r.s), cell(r.cong_ok), cell(r.leg_ok), cell(r.rs_ok),
                                         cell(r.quartic_neq), cell(r.norm_rs), cell(r.square_cond), cell(r.branch),
                                         cell(r.m), cell(r.A_F), cell(r.A_K), cell(r.A_Kp), cell(r.A_FF),
                                         r.galois, to_string(r.status)};
        for (std::size_t i = 0; i < v.size(); ++i)
            out << (i ? "," : "") << v[i];
        out << '\n';
    }
}

std::vector<TripleRecord> read_csv(std::istream & in)
{
    std::string line;
    if (!std::getline(in, line) || split(line) != csv_columns())
        throw domain_error("CSV header does not match the record columns");
    std::vector<TripleRecord> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto const f = split(line);
        if (f.size() != csv_columns().size())
            throw domain_error("CSV row has " + std::to_string(f.size()) + " fields: " + line);
        TripleRecord r;
        r.eta = std::stoi(f[0]);
        r.q = std::stoull(f[1]);
        r.r = std::stoull(f[2]);
        r.s = std::stoull(f[3]);
        r.cong_ok = parse_bool(f[4]);
        r.leg_ok = parse_bool(f[5]);
        r.rs_ok = parse_bool(f[6]);
        r.quartic_neq = opt_bool(f[7]);
        r.norm_rs = opt_int(f[8]);
        r.square_cond = opt_bool(f[9]);
        r.branch = opt_str(f[10]);
        r.m = opt_int(f[11]);
        r.A_F = opt_str(f[12]);
        r.A_K = opt_str(f[13]);
        r.A_Kp = opt_str(f[14]);
        r.A_FF = opt_str(f[15]);
        r.galois = f[16];
        r.status = parse_status(f[17]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string to_json(std::vector<TripleRecord> const & rows, int indent)
{
    json arr = json::array();
    for (auto const & r : rows) {
        json j;
        j["eta"] = r.eta;
        j["q"] = r.q;
        j["r"] = r.r;
        j["s"] = r.s;
        j["cong_ok"] = r.cong_ok;
        j["leg_ok"] = r.leg_ok;
        j["rs_ok"] = r.rs_ok;
        j["quartic_neq"] = nullable(r.quartic_neq);
        j["norm_rs"] = nullable(r.norm_rs);
        j["square_cond"] = nullable(r.square_cond);
        j["branch"] = nullable(r.branch);
        j["m"] = nullable(r.m);
        j["A_F"] = nullable(r.A_F);
        j["A_K"] = nullable(r.A_K);
        j["A_Kp"] = nullable(r.A_Kp);
        j["A_FF"] = nullable(r.A_FF);
        j["galois"] = r.galois;
        j["status"] = to_string(r.status);
        arr.push_back(std::move(j));
    }
    return arr.dump(indent) + "\n";
}

std::vector<TripleRecord> from_json(std::string const & text)
{
    json const arr = json::parse(text);
    if (!arr.is_array())
        throw domain_error("expected a JSON array of records");
    std::vector<TripleRecord> rows;
    for (auto const & j : arr) {
        TripleRecord r;
        r.eta = j.at("eta").get<int>();
        r.q = j.at("q").get<std::uint64_t>();
        r.r = j.at("r").get<std::uint64_t>();
        r.s = j.at("s").get<std::uint64_t>();
        r.cong_ok = j.at("cong_ok").get<bool>();
        r.leg_ok = j.at("leg_ok").get<bool>();
        r.rs_ok = j.at("rs_ok").get<bool>();
        r.quartic_neq = get_opt<bool>(j, "quartic_neq");
        r.norm_rs = get_opt<int>(j, "norm_rs");
        r.square_cond = get_opt<bool>(j, "square_cond");
        r.branch = get_opt<std::string>(j, "branch");
        r.m = get_opt<int>(j, "m");
        r.A_F = get_opt<std::string>(j, "A_F");
        r.A_K = get_opt<std::string>(j, "A_K");
        r.A_Kp = get_opt<std::string>(j, "A_Kp");
        r.A_FF = get_opt<std::string>(j, "A_FF");
        r.galois = j.at("galois").get<std::string>();
        r.status = parse_status(j.at("status").get<std::string>());
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::string> const & table_csv_columns()
{
    static std::vector<std::string> const cols{
        "type", "alpha", "n", "s", "k", "level", "i", "block", "outcome", "generators", "generators_match",
        "derived_table", "derived_order_table", "derived_order_computed", "ab_table", "ab_computed", "gprime_order",
        "gprime_match"};
    return cols;
}

namespace {

std::vector<std::string> table_fields(groups::TableCheck const & c)
{
    auto const & e = c.entry;
    return {std::to_string(c.params.type),
            std::to_string(c.params.alpha),
            std::to_string(c.params.n),
            std::to_string(c.params.s),
            std::to_string(c.params.k),
            std::to_string(c.level),
            std::to_string(c.i),
            e ? e->block : "",
            groups::to_string(c.outcome),
            e ? e->generators : "",
            e ? cell(c.generators_match) : "",
            e ? e->derived_text : "",
            e ? std::to_string(c.derived_order_claim) : "",
            std::to_string(c.derived_order_computed),
            e ? c.ab_claim : "",
            c.ab_computed,
            std::to_string(c.gprime_order),
            e ? cell(c.gprime_match) : ""};
}

} // namespace

void write_table_csv(std::ostream & out, std::vector<groups::TableCheck> const & rows)
{
    auto const & cols = table_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';
    for (auto const & c : rows) {
        auto const f = table_fields(c);
        for (std::size_t i = 0; i < f.size(); ++i)
            out << (i ? "," : "") << csv_quote(f[i]);
        out << '\n';
    }
}

std::string table_json(std::vector<groups::TableCheck> const & rows, int indent)
{
    json summary = {{"match", 0}, {"mismatch", 0}, {"no_row", 0}, {"undefined", 0}};
    json arr = json::array();
    for (auto const & c : rows) {
        summary[groups::to_string(c.outcome)] = summary[groups::to_string(c.outcome)].get<int>() + 1;
        json j;
        j["type"] = c.params.type;
        j["alpha"] = c.params.alpha;
        j["n"] = c.params.n;
        j["s"] = c.params.s;
        j["k"] = c.params.k;
        j["level"] = c.level;
        j["i"] = c.i;
        j["outcome"] = groups::to_string(c.outcome);
        if (c.entry) {
            j["block"] = c.entry->block;
            j["generators"] = c.entry->generators;
            j["generators_match"] = c.generators_match;
            j["derived_table"] = c.entry->derived_text;
            j["derived_order_table"] = c.derived_order_claim;
            j["ab_table"] = c.ab_claim;
            j["gprime_match"] = c.gprime_match;
        } else {
            for (char const * k : {"block", "generators", "generators_match", "derived_table", "derived_order_table",
                                   "ab_table", "gprime_match"})
                j[k] = nullptr;
        }
        j["derived_order_computed"] = c.derived_order_computed;
        j["ab_computed"] = c.ab_computed;
        j["gprime_order"] = c.gprime_order;
        arr.push_back(std::move(j));
    }
    json out;
    out["summary"] = summary;
    out["rows"] = arr;
    return out.dump(indent) + "\n";
}

} // namespace twoclass::report
