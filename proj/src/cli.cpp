#include "loopgr/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "loopgr/json_io.hpp"

namespace loopgr::cli {

namespace {

using json_io::json;

struct Options {
    std::string ring = "Q";
    int precision = kDefaultPrecision;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::string input = "-";
    int twist = 0;
    std::string to;
    std::string batch;
};

struct Output {
    json doc;
    std::string text;
};

template <class T>
std::string str(const T& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

std::string join_splitting(const SplittingType& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.a.size(); ++i) out += (i ? " + O(" : "O(") + std::to_string(s.a[i]) + ")";
    return out;
}

std::string factors_text(const Factorization& f)
{
    if (f.factors.empty()) return "I";
    std::string out;
    for (std::size_t k = 0; k < f.factors.size(); ++k) {
        const auto& e = f.factors[k];
        out += (k ? " * E" : "E") + std::to_string(e.i + 1) + std::to_string(e.j + 1) + "(" + e.param.to_string() + ")";
    }
    return out;
}

std::string datum_text(const ModificationDatum& b)
{
    std::ostringstream os;
    os << "rank " << b.rank() << " over " << b.ring().name() << "\n";
    for (std::size_t i = 0; i < b.size(); ++i) os << "  t = " << b.points()[i].r.to_string() << ": " << b.loops()[i].entries() << "\n";
    if (b.infinity_loop()) os << "  inf: " << b.infinity_loop()->entries() << "\n";
    return os.str();
}

Output do_stratum(const json& in, const Ring& ring, const Options& o)
{
    const Cocharacter c = stratum(json_io::loop_from_json(in, ring), o.precision);
    return {json_io::to_json(c), str(c)};
}

Output do_coarse(const json& in, const Ring& ring, const Options& o)
{
    const CoarseStratum c = coarse_stratum(json_io::loop_from_json(in, ring), o.precision);
    std::string text = "{";
    for (std::size_t i = 0; i < c.orbit.size(); ++i) text += (i ? ", " : "") + str(c.orbit[i]);
    return {json_io::to_json(c), text + "}"};
}

Output do_snf(const json& in, const Ring& ring, const Options& o)
{
    const CartanFactorization f = smith_normal_form(json_io::loop_from_json(in, ring), o.precision);
    json doc = {{"u", json_io::to_json(f.u)}, {"lambda", f.lambda.values()}, {"v", json_io::to_json(f.v)}};
    return {doc, "lambda = " + str(f.lambda) + "\nu = " + str(f.u.entries()) + "\nv = " + str(f.v.entries())};
}

Output do_splitting(const json& in, const Ring& ring, const Options&)
{
    const SplittingType s = splitting_type(json_io::datum_from_json(in, ring));
    return {json_io::to_json(s), join_splitting(s)};
}

Output do_h0(const json& in, const Ring& ring, const Options& o)
{
    const int k = h0(json_io::datum_from_json(in, ring), o.twist);
    return {{{"m", o.twist}, {"h0", k}}, "h0(" + std::to_string(o.twist) + ") = " + std::to_string(k)};
}

Output do_glue(const json& in, const Ring& ring, const Options& o)
{
    const ModificationDatum b = json_io::datum_from_json(in, ring);
    const H0Table table = h0_scan(b);
    const SplittingType s = fit_splitting_type(table, b.rank());
    const std::vector<Cocharacter> strata = strata_of(b, o.precision);
    const bool zero = std::all_of(strata.begin(), strata.end(), [](const Cocharacter& c) { return c.is_zero(); });

    json js = json::array();
    for (const auto& c : strata) js.push_back(c.values());
    json doc = {{"a", s.a},
                {"strata", js},
                {"all_strata_zero", zero},
                {"trivial", s.is_zero()},
                {"h0", {{"m_min", table.m_min}, {"values", table.values}}}};

    std::vector<std::string> names;
    for (const auto& p : b.points()) names.push_back(p.r.to_string());
    if (b.infinity_loop()) names.push_back("inf");
    std::size_t w = 5;
    for (const auto& nm : names) w = std::max(w, nm.size());
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(w)) << "point" << "  stratum\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
        os << std::setw(static_cast<int>(w)) << names[i] << "  " << strata[i] << "\n";
    }
    os << "splitting type  " << join_splitting(s) << "\n";
    os << "trivial         " << (s.is_zero() ? "yes" : "no") << "\n";
    os << "strata zero     " << (zero ? "yes" : "no");
    return {doc, os.str()};
}

Output do_modify(const json& in, const Ring& ring, const Options&)
{
    if (!in.is_object()) throw SchemaError("modify input must be an object");
    for (const auto& [key, value] : in.items()) {
        if (key != "datum" && key != "point" && key != "loop") throw SchemaError("modify: unknown field \"" + key + "\"");
    }
    if (!in.contains("datum") || !in.contains("point") || !in.contains("loop")) {
        throw SchemaError("modify needs \"datum\", \"point\" and \"loop\"");
    }
    const ModificationDatum b = modify(json_io::datum_from_json(in["datum"], ring),
                                       {json_io::scalar_from_json(in["point"], ring)},
                                       json_io::loop_from_json(in["loop"], ring));
    return {json_io::to_json(b), datum_text(b)};
}

Output do_factor(const json& in, const Ring& ring, const Options& o)
{
    const LoopMatrix m = json_io::loop_from_json(in, ring);
    const Factorization f = factor_elementary(m, o.precision);
    json doc = json_io::to_json(f);
    doc["reconstructs"] = approx_equal(f.product(), m.entries());
    return {doc, factors_text(f) + "\nreconstructs: " + (doc["reconstructs"].get<bool>() ? "true" : "false")};
}

Ring target_ring(const Options& o)
{
    if (o.to.empty()) throw SchemaError("--to is required");
    return Ring::parse(o.to);
}

Output do_lift(const json& in, const Ring& ring, const Options& o)
{
    const Factorization f = json_io::factorization_from_json(in, ring);
    const Ring target = target_ring(o);
    std::vector<std::optional<LaurentSeries>> perturb;
    if (o.seed) perturb = random_perturbations(f, target, *o.seed);
    const Factorization l = lift_factorization(f, target, perturb);
    return {json_io::to_json(l), factors_text(l)};
}

Output do_extend(const json& in, const Ring& ring, const Options& o)
{
    const ModificationDatum b = extend_point(json_io::datum_from_json(in, ring), target_ring(o), o.seed, o.precision);
    return {json_io::to_json(b), datum_text(b)};
}

Output do_expand(const json& in, const Ring& ring, const Options& o)
{
    if (!in.is_object()) throw SchemaError("expand input must be an object");
    for (const auto& [key, value] : in.items()) {
        if (key != "f" && key != "at") throw SchemaError("expand: unknown field \"" + key + "\"");
    }
    if (!in.contains("f") || !in.contains("at")) throw SchemaError("expand needs \"f\" and \"at\"");
    const RationalFunction f = json_io::rational_function_from_json(in["f"], ring);
    const LaurentSeries s = in["at"] == "inf" ? expand_at_infinity(f, o.precision)
                                              : expand_shift(f, json_io::scalar_from_json(in["at"], ring), o.precision);
    return {json_io::to_json(s), s.to_string()};
}

using Handler = Output (*)(const json&, const Ring&, const Options&);

struct Command {
    const char* name;
    const char* help;
    Handler handler;
};

const Command kCommands[] = {
    {"stratum", "Cartan stratum of a loop", do_stratum},
    {"coarse-stratum", "stratum up to transpose-inverse", do_coarse},
    {"snf", "Smith normal form u * t^lambda * v", do_snf},
    {"splitting-type", "splitting type of a glued bundle", do_splitting},
    {"h0", "global sections of a glued bundle twisted at infinity", do_h0},
    {"glue", "summary of a glued bundle", do_glue},
    {"modify", "modify a datum at a point", do_modify},
    {"factor", "elementary factorization of an SL(2) loop", do_factor},
    {"lift", "lift a factorization to k[x]/(x^m)", do_lift},
    {"extend", "extend a datum over k[x]/(x^m)", do_extend},
    {"expand", "expand a rational function at a point", do_expand},
};

int report(std::ostream& err, int code, const std::exception& e)
{
    err << "error: " << e.what() << "\n";
    return code;
}

int run_batch(const std::string& path, std::ostream& out, std::ostream& err)
{
    std::ifstream file(path);
    if (!file) {
        err << "error: cannot open batch file " << path << "\n";
        return kUsage;
    }
    struct Result {
        int code;
        std::string out;
        std::string err;
    };
    std::vector<std::future<Result>> jobs;
    std::string line;
    while (std::getline(file, line)) {
        std::istringstream is(line);
        std::vector<std::string> args{std::istream_iterator<std::string>(is), std::istream_iterator<std::string>()};
        if (args.empty() || args[0].starts_with("#")) continue;
        jobs.push_back(std::async(std::launch::async, [args] {
            std::istringstream no_input;
            std::ostringstream o;
            std::ostringstream e;
            if (std::find(args.begin(), args.end(), "--batch") != args.end()) {
                return Result{kUsage, "", "error: nested --batch\n"};
            }
            const int code = run(args, no_input, o, e);
            return Result{code, o.str(), e.str()};
        }));
    }
    int first = kOk;
    for (auto& j : jobs) {
        const Result r = j.get();
        out << r.out;
        err << r.err;
        if (first == kOk) first = r.code;
    }
    return first;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Loop group strata, bundles on P^1 and elementary factorizations", "loopgr"};
    Options o;
    std::uint64_t seed = 0;
    app.add_option("--ring", o.ring, "coefficient ring: Q, F<p>, Q[x]/x^m, F<p>[x]/x^m")->capture_default_str();
    app.add_option("--precision", o.precision, "working relative precision")
        ->check(CLI::Range(1, kMaxPrecision))
        ->capture_default_str();
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed, "seed for randomized subcommands");
    app.add_option("--batch", o.batch, "file with one command line per line");
    app.require_subcommand(0, 1);

    for (const auto& c : kCommands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->fallthrough();
        sub->add_option("input", o.input, "input JSON file, - for stdin")->capture_default_str();
        if (std::string(c.name) == "h0") sub->add_option("--twist", o.twist, "twist m at infinity")->required();
        if (std::string(c.name) == "lift" || std::string(c.name) == "extend") {
            sub->add_option("--to", o.to, "target ring k[x]/x^m")->required();
        }
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (*seed_opt) o.seed = seed;

    if (!o.batch.empty()) {
        if (!app.get_subcommands().empty()) {
            err << "error: --batch takes no subcommand\n";
            return kUsage;
        }
        return run_batch(o.batch, out, err);
    }
    if (app.get_subcommands().empty()) {
        err << app.help();
        return kUsage;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    const Command& cmd = *std::find_if(std::begin(kCommands), std::end(kCommands),
                                       [&](const Command& c) { return name == c.name; });

    json doc;
    try {
        if (o.input == "-") {
            doc = json::parse(in);
        } else {
            std::ifstream file(o.input);
            if (!file) {
                err << "error: cannot open " << o.input << "\n";
                return kUsage;
            }
            doc = json::parse(file);
        }
    } catch (const json::exception& e) {
        return report(err, kSchema, e);
    }

    try {
        const Ring ring = Ring::parse(o.ring);
        const Output result = cmd.handler(doc, ring, o);
        if (o.format == "json") {
            out << result.doc.dump() << "\n";
        } else {
            out << result.text << "\n";
        }
        return kOk;
    } catch (const SchemaError& e) {
        return report(err, kSchema, e);
    } catch (const json::exception& e) {
        return report(err, kSchema, e);
    } catch (const PrecisionError& e) {
        return report(err, kPrecision, e);
    } catch (const SingularToPrecision& e) {
        return report(err, kSingular, e);
    } catch (const DomainError& e) {
        return report(err, kDomain, e);
    } catch (const BackendMismatch& e) {
        return report(err, kDomain, e);
    }
}

} // namespace loopgr::cli
