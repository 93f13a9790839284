#include "geocensus/cli.hpp"

#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "geocensus/arith.hpp"
#include "geocensus/census.hpp"
#include "geocensus/errors.hpp"
#include "geocensus/report.hpp"
#include "geocensus/spectra.hpp"

namespace geocensus::cli {

namespace {

using report::json;

struct SpectrumFlags {
    std::vector<double> lengths;
    std::vector<std::string> traces;
    std::vector<std::string> radicands;
    double tol = kDefaultLengthTolerance;

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--lengths", lengths, "Geodesic lengths, comma separated")->delimiter(',');
        cmd.add_option("--traces", traces, "Hyperbolic traces t >= 3, comma separated")->delimiter(',');
        cmd.add_option("--radicands", radicands, "Field radicands d > 1, comma separated")->delimiter(',');
        cmd.add_option("--tol", tol, "Tolerance when resolving lengths to traces")->capture_default_str();
    }

    SpectrumInputs inputs() const
    {
        SpectrumInputs in;
        in.lengths = lengths;
        in.tol = tol;
        for (const auto& t : traces) {
            in.traces.push_back(parse_integer(t));
        }
        for (const auto& r : radicands) {
            in.radicands.push_back(parse_integer(r));
        }
        return in;
    }

    json echo() const
    {
        json out = {{"tol", tol}};
        out["lengths"] = lengths;
        json t = json::array(), r = json::array();
        for (const auto& s : traces) {
            t.push_back(report::integer(parse_integer(s)));
        }
        for (const auto& s : radicands) {
            r.push_back(report::integer(parse_integer(s)));
        }
        out["traces"] = std::move(t);
        out["radicands"] = std::move(r);
        return out;
    }
};

std::vector<Integer> parse_list(const std::vector<std::string>& items)
{
    std::vector<Integer> out;
    for (const auto& s : items) {
        out.push_back(parse_integer(s));
    }
    return out;
}

json fields_json(const std::vector<QuadField>& fields)
{
    json out = json::array();
    for (const auto& f : fields) {
        out.push_back(report::field(f));
    }
    return out;
}

json error_document(const std::string& command, const Error& e)
{
    json err = {{"kind", e.kind()}, {"message", e.what()}};
    if (const auto* nr = dynamic_cast<const NotRealizable*>(&e)) {
        err["index"] = nr->index();
        err["length"] = report::round12(nr->length());
    }
    if (const auto* inf = dynamic_cast<const InfiniteCensus*>(&e)) {
        err["verdict"] = report::verdict(inf->verdict());
    }
    return {{"command", command}, {"error", std::move(err)}};
}

int exit_code_for(const Error& e)
{
    if (dynamic_cast<const DomainError*>(&e)) {
        return kDomain;
    }
    if (dynamic_cast<const SearchExhausted*>(&e) || dynamic_cast<const ResourceLimit*>(&e)) {
        return kExhausted;
    }
    return kInternal;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Census of arithmetic surfaces over Q sharing prescribed geodesic lengths", "geocensus"};
    app.require_subcommand(1);

    std::string format = "json";
    unsigned threads = 0;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--threads", threads, "Worker threads for scans (0: all cores)");

    // spectra
    auto* spectra = app.add_subcommand("spectra", "Resolve lengths, traces or radicands to geodesic classes");
    SpectrumFlags spectra_flags;
    spectra_flags.attach(*spectra);

    // count
    auto* count = app.add_subcommand("count", "Count the quaternion algebras admitting every field");
    SpectrumFlags count_flags;
    count_flags.attach(*count);

    // pi
    auto* pi = app.add_subcommand("pi", "Evaluate pi(V, S)");
    SpectrumFlags pi_flags;
    pi_flags.attach(*pi);
    double pi_volume = 0.0;
    std::size_t max_classes = 1000;
    pi->add_option("--volume,-V", pi_volume, "Volume bound V")->required();
    pi->add_option("--max-classes", max_classes, "Largest class list to print")->capture_default_str();

    // interval
    auto* interval = app.add_subcommand("interval", "Compare pi(V+W, S) - pi(V, S) to W / (2^r log V)");
    SpectrumFlags interval_flags;
    interval_flags.attach(*interval);
    double interval_v = 0.0, interval_w = 0.0;
    interval->add_option("--V", interval_v, "Volume V")->required();
    interval->add_option("--W", interval_w, "Window width W < V")->required();

    // family
    auto* family = app.add_subcommand("family", "Build fields whose census has exactly 2^n classes");
    unsigned family_n = 0;
    std::uint64_t search_bound = 1'000'000;
    family->add_option("--n", family_n, "Exponent n")->required();
    family->add_option("--search-bound", search_bound, "Largest prime or radicand tried")->capture_default_str();

    // volume
    auto* volume = app.add_subcommand("volume", "Coarea of Gamma_O for an indefinite algebra over Q");
    std::vector<std::string> volume_ramified;
    volume->add_option("--ramified", volume_ramified, "Ramified primes, comma separated")->delimiter(',');

    // chebotarev
    auto* chebotarev = app.add_subcommand("chebotarev", "Count primes inert in every field in [X, X+Y]");
    SpectrumFlags chebotarev_flags;
    chebotarev_flags.attach(*chebotarev);
    std::uint64_t cheb_x = 0, cheb_y = 0;
    chebotarev->add_option("--X", cheb_x, "Interval start X >= 1000")->required();
    chebotarev->add_option("--Y", cheb_y, "Interval width Y <= X")->required();

    // selectivity
    auto* selectivity = app.add_subcommand("selectivity", "Check the selectivity conditions over Q");
    std::vector<std::string> sel_ramified;
    std::string sel_disc;
    selectivity->add_option("--ramified", sel_ramified, "Ramified primes, comma separated")->delimiter(',');
    selectivity->add_option("--order-disc", sel_disc, "Discriminant of the quadratic order")->required();

    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kDomain;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    CensusOptions options;
    options.threads = threads;

    try {
        json doc;
        std::string csv_table;
        bool has_table = false;
        if (spectra->parsed()) {
            const SpectrumSpec spec = spectrum_from_inputs(spectra_flags.inputs());
            json classes = json::array();
            for (const auto& g : spec.classes()) {
                json entry = report::geodesic(g);
                const auto sq = invariant_trace_data(g.trace);
                entry["trace_of_square"] = report::integer(sq.trace_of_square);
                entry["field_of_square"] = report::field(sq.field_of_square);
                classes.push_back(std::move(entry));
            }
            doc = report::document(command, spectra_flags.echo(),
                                   {{"classes", classes},
                                    {"embedding_fields", fields_json(spec.embedding_fields())},
                                    {"traces", report::integers(spec.traces())}},
                                   {});
        } else if (count->parsed()) {
            const SpectrumSpec spec = spectrum_from_inputs(count_flags.inputs());
            const CensusReport census = count_algebras(spec.embedding_fields());
            json result = report::census(census);
            result["traces"] = report::integers(spec.traces());
            csv_table = report::classes_csv(result["classes"]);
            has_table = true;
            doc = report::document(command, count_flags.echo(), std::move(result), {});
        } else if (pi->parsed()) {
            const SpectrumSpec spec = spectrum_from_inputs(pi_flags.inputs());
            const PiResult r = pi_of_V(spec, pi_volume, options);
            json classes = json::array();
            for (std::size_t i = 0; i < r.classes.size() && i < max_classes; ++i) {
                classes.push_back(report::algebra_class(r.classes[i]));
            }
            std::vector<std::string> warnings;
            if (r.classes.size() > max_classes) {
                warnings.push_back(fmt::format("class list truncated to {} of {}", max_classes, r.classes.size()));
            }
            json inputs = pi_flags.echo();
            inputs["volume"] = pi_volume;
            csv_table = report::classes_csv(classes);
            has_table = true;
            doc = report::document(command, std::move(inputs),
                                   {{"value", r.value},
                                    {"finite_census", r.finite_census},
                                    {"prime_pool_size", r.pool_size},
                                    {"classes", std::move(classes)},
                                    {"classes_truncated", r.classes.size() > max_classes}},
                                   std::move(warnings));
        } else if (interval->parsed()) {
            const SpectrumSpec spec = spectrum_from_inputs(interval_flags.inputs());
            const IntervalDelta d = short_interval_delta(spec, interval_v, interval_w, options);
            json inputs = interval_flags.echo();
            inputs["V"] = interval_v;
            inputs["W"] = interval_w;
            std::vector<std::string> warnings;
            if (static_cast<double>(d.delta) < d.bound) {
                warnings.push_back("delta is below the asymptotic bound at this scale");
            }
            doc = report::document(command, std::move(inputs),
                                   {{"delta", d.delta},
                                    {"bound", report::round12(d.bound)},
                                    {"pi_lower", d.pi_lower},
                                    {"pi_upper", d.pi_upper},
                                    {"r", spec.classes().size()},
                                    {"theta", report::round12(d.theta)},
                                    {"window_floor", report::round12(d.window_floor)},
                                    {"delta_meets_bound", static_cast<double>(d.delta) >= d.bound}},
                                   std::move(warnings));
        } else if (family->parsed()) {
            const Family f = construct_family(family_n, search_bound);
            json result = {{"n", f.n},
                           {"m", f.primes.size()},
                           {"primes", report::integers(f.primes)},
                           {"fields", fields_json(f.fields)},
                           {"census", report::census(f.report)},
                           {"eventual_pi", f.report.eventual_pi}};
            csv_table = report::classes_csv(result["census"]["classes"]);
            has_table = true;
            doc = report::document(command, {{"n", family_n}, {"search_bound", search_bound}}, std::move(result),
                                   {});
        } else if (volume->parsed()) {
            const AlgebraClass c = AlgebraClass::from(RamSet(parse_list(volume_ramified), false));
            json result = report::algebra_class(c);
            csv_table = report::classes_csv(json::array({result}));
            has_table = true;
            doc = report::document(command, {{"ramified", report::integers(parse_list(volume_ramified))}},
                                   std::move(result), {});
        } else if (chebotarev->parsed()) {
            const SpectrumSpec spec = spectrum_from_inputs(chebotarev_flags.inputs());
            const auto fields = spec.embedding_fields();
            const ChebotarevResult r = verify_chebotarev_interval(fields, cheb_x, cheb_y, threads);
            json inputs = chebotarev_flags.echo();
            inputs["X"] = cheb_x;
            inputs["Y"] = cheb_y;
            doc = report::document(command, std::move(inputs),
                                   {{"fields", fields_json(fields)},
                                    {"actual", r.actual},
                                    {"predicted", report::round12(r.predicted)},
                                    {"ratio", report::round12(r.ratio)}},
                                   {});
        } else if (selectivity->parsed()) {
            const RamSet ram(parse_list(sel_ramified), false);
            const QuadOrder ord = QuadOrder::from_disc(parse_integer(sel_disc));
            const SelectivityVerdict v = selectivity_check(ram, ord);
            json result = report::selectivity(v);
            result["algebra"] = ram.name();
            result["order"] = report::order(ord);
            result["certificate_verifies"] = v.verify(ram, ord);
            doc = report::document(command,
                                   {{"ramified", report::integers(ram.finite_primes())},
                                    {"order_disc", report::integer(ord.disc())}},
                                   std::move(result), {});
        }

        if (format == "csv") {
            out << (has_table ? csv_table : report::flat_csv(doc));
        } else {
            out << doc.dump(2) << "\n";
        }
        return kSuccess;
    } catch (const Error& e) {
        out << error_document(command, e).dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        out << json{{"command", command}, {"error", {{"kind", "Internal"}, {"message", e.what()}}}}.dump(2) << "\n";
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

} // namespace geocensus::cli
