#include "geocensus/report.hpp"

#include <fmt/format.h>

namespace geocensus::report {

double round12(double value)
{
    return std::stod(fmt::format("{:.12g}", value));
}

json integer(const Integer& n)
{
    if (n.fits_slong_p()) {
        return n.get_si();
    }
    return n.get_str();
}

json integers(const std::vector<Integer>& values)
{
    json out = json::array();
    for (const auto& v : values) {
        out.push_back(integer(v));
    }
    return out;
}

json field(const QuadField& f)
{
    return {{"radicand", integer(f.radicand())}, {"disc", integer(f.disc())}, {"name", f.name()}};
}

json order(const QuadOrder& o)
{
    return {{"field", field(o.field())}, {"conductor", integer(o.conductor())}, {"disc", integer(o.disc())}};
}

json coarea(const Coarea& c)
{
    return {{"symbolic", c.symbolic()}, {"value", round12(c.value)}};
}

json algebra_class(const AlgebraClass& c)
{
    json out = {{"ramified", integers(c.ram.finite_primes())},
                {"at_infinity", c.ram.at_infinity()},
                {"is_division", c.is_division},
                {"name", c.ram.name()}};
    out["coarea"] = c.coarea ? coarea(*c.coarea) : json(nullptr);
    return out;
}

json geodesic(const GeodesicClass& g)
{
    return {{"trace", integer(g.trace)},
            {"length", round12(g.length)},
            {"field", field(g.field)},
            {"order", order(g.order)}};
}

json verdict(const FinitenessVerdict& v)
{
    json out = {{"finite", v.finite}};
    if (v.finite) {
        out["relation"] = v.relation;
    } else {
        json signs = json::array();
        for (const auto& s : v.signs) {
            signs.push_back({{"prime_disc", integer(s.prime_disc)}, {"sign", s.sign}});
        }
        out["signs"] = std::move(signs);
    }
    return out;
}

json census(const CensusReport& r)
{
    json fields = json::array();
    for (const auto& f : r.fields) {
        fields.push_back(field(f));
    }
    json classes = json::array();
    for (const auto& c : r.classes) {
        classes.push_back(algebra_class(c));
    }
    return {{"fields", std::move(fields)},
            {"verdict", verdict(r.verdict)},
            {"nonsplit_primes", integers(r.nonsplit_primes)},
            {"classes", std::move(classes)},
            {"count_total", r.count_total},
            {"count_division", r.count_division},
            {"eventual_pi", r.eventual_pi}};
}

namespace {

json condition(const ConditionCheck& c)
{
    json out = {{"holds", c.holds}, {"detail", c.detail}};
    out["witness_prime"] = c.witness_prime ? integer(*c.witness_prime) : json(nullptr);
    return out;
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return out + "\"";
}

std::string scalar(const json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

} // namespace

json selectivity(const SelectivityVerdict& v)
{
    json out = {{"selective_possible", v.selective_possible},
                {"violated_condition", v.violated_condition},
                {"conditions",
                 {{"1", condition(v.integral_domain)},
                  {"2", condition(v.unramified_match)},
                  {"3", condition(v.discriminant_split)}}}};
    out["certificate_prime"] = v.certificate_prime ? integer(*v.certificate_prime) : json(nullptr);
    return out;
}

json document(const std::string& command, json inputs, json result, std::vector<std::string> warnings)
{
    return {{"command", command},
            {"inputs", std::move(inputs)},
            {"result", std::move(result)},
            {"warnings", std::move(warnings)}};
}

std::string classes_csv(const json& classes)
{
    std::string out = "ramified,at_infinity,is_division,coarea_symbolic,coarea\n";
    for (const auto& c : classes) {
        std::string primes;
        for (const auto& p : c.at("ramified")) {
            primes += (primes.empty() ? "" : ";") + scalar(p);
        }
        const json& area = c.at("coarea");
        out += fmt::format("{},{},{},{},{}\n", primes, c.at("at_infinity").dump(), c.at("is_division").dump(),
                           area.is_null() ? "" : scalar(area.at("symbolic")),
                           area.is_null() ? "" : area.at("value").dump());
    }
    return out;
}

std::string flat_csv(const json& doc)
{
    std::string out = "key,value\n";
    const json flat = doc.flatten();
    for (const auto& [key, value] : flat.items()) {
        out += csv_escape(key) + "," + csv_escape(scalar(value)) + "\n";
    }
    return out;
}

} // namespace geocensus::report
