#include "loopgr/json_io.hpp"

#include <initializer_list>
#include <string>

namespace loopgr::json_io {

namespace {

void require_object(const json& j, const char* what, std::initializer_list<const char*> allowed,
                    std::initializer_list<const char*> required)
{
    if (!j.is_object()) throw SchemaError(std::string(what) + " must be an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw SchemaError(std::string(what) + ": unknown field \"" + key + "\"");
    }
    for (const char* r : required) {
        if (!j.contains(r)) throw SchemaError(std::string(what) + ": missing field \"" + r + "\"");
    }
}

const json& require_array(const json& j, const char* what)
{
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
    return j;
}

int require_int(const json& j, const char* what)
{
    if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
    const auto v = j.get<long long>();
    if (v < -kMaxPrecision * 64LL || v > kMaxPrecision * 64LL) throw SchemaError(std::string(what) + " is out of range");
    return static_cast<int>(v);
}

std::vector<int> int_list(const json& j, const char* what)
{
    std::vector<int> out;
    for (const auto& x : require_array(j, what)) out.push_back(require_int(x, what));
    return out;
}

Polynomial polynomial_from_json(const json& j, const Ring& ring)
{
    Polynomial p(ring);
    for (const auto& term : require_array(j, "polynomial")) {
        if (!term.is_array() || term.size() != 2) throw SchemaError("a term is [exponent, coefficient]");
        const int e = require_int(term[0], "exponent");
        if (e < 0) throw SchemaError("polynomial exponents must be non-negative");
        p += Polynomial::monomial(scalar_from_json(term[1], ring), e);
    }
    return p;
}

json polynomial_to_json(const Polynomial& p)
{
    json out = json::array();
    for (int k = 0; k <= p.degree(); ++k) {
        if (!p.coefficient(k).is_zero()) out.push_back(json::array({k, to_json(p.coefficient(k))}));
    }
    return out;
}

} // namespace

json to_json(const Scalar& c)
{
    if (c.ring().kind != RingKind::artinian) return c.to_string();
    json out = json::array();
    for (int k = 0; k < c.ring().nilpotency; ++k) out.push_back(c.coefficient(k).to_string());
    while (out.size() > 1 && out.back() == "0") out.erase(out.end() - 1);
    return out;
}

Scalar scalar_from_json(const json& j, const Ring& ring)
{
    if (j.is_string()) {
        const std::string text = j.get<std::string>();
        if (ring.kind == RingKind::artinian) return Scalar::parse(ring.residue_field(), text).lift_to(ring);
        return Scalar::parse(ring, text);
    }
    if (j.is_array() && ring.kind == RingKind::artinian) {
        if (j.size() > static_cast<std::size_t>(ring.nilpotency)) throw SchemaError("too many x-coefficients");
        std::vector<Scalar> c;
        for (const auto& x : j) {
            if (!x.is_string()) throw SchemaError("coefficients must be strings");
            c.push_back(Scalar::parse(ring.residue_field(), x.get<std::string>()));
        }
        return Scalar::from_coefficients(ring, std::move(c));
    }
    throw SchemaError("coefficients must be strings such as \"3/7\"");
}

json to_json(const LaurentSeries& s)
{
    json terms = json::array();
    if (!s.is_exact_zero()) {
        for (int k = s.support_begin(); k < s.support_end(); ++k) {
            const Scalar c = s.coefficient(k);
            if (!c.is_zero()) terms.push_back(json::array({k, to_json(c)}));
        }
    }
    return {{"terms", terms}, {"precision", s.is_exact() ? json(nullptr) : json(s.absolute_precision())}};
}

LaurentSeries series_from_json(const json& j, const Ring& ring)
{
    require_object(j, "series", {"terms", "precision"}, {"terms"});
    int prec = kExact;
    if (j.contains("precision") && !j["precision"].is_null()) prec = require_int(j["precision"], "precision");
    LaurentSeries s = LaurentSeries::zero(ring);
    for (const auto& term : require_array(j["terms"], "terms")) {
        if (!term.is_array() || term.size() != 2) throw SchemaError("a term is [exponent, coefficient]");
        const int e = require_int(term[0], "exponent");
        if (e >= prec) throw SchemaError("term at or beyond the stated precision");
        s += LaurentSeries::monomial(scalar_from_json(term[1], ring), e);
    }
    return s.truncated(prec);
}

json to_json(const RationalFunction& f)
{
    return {{"num", polynomial_to_json(f.numerator())}, {"den", polynomial_to_json(f.denominator())}};
}

RationalFunction rational_function_from_json(const json& j, const Ring& ring)
{
    require_object(j, "rational function", {"num", "den"}, {"num"});
    Polynomial num = polynomial_from_json(j["num"], ring);
    if (!j.contains("den")) return RationalFunction(std::move(num));
    Polynomial den = polynomial_from_json(j["den"], ring);
    if (den.is_zero()) throw SchemaError("denominator is zero");
    return RationalFunction(std::move(num), std::move(den));
}

json to_json(const LoopMatrix& a)
{
    json rows = json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < a.size(); ++k) row.push_back(to_json(a.entries()(i, k)));
        rows.push_back(std::move(row));
    }
    return {{"n", a.size()}, {"entries", rows}, {"group", a.group() == Group::SL ? "SL" : "GL"}};
}

LoopMatrix loop_from_json(const json& j, const Ring& ring)
{
    require_object(j, "loop", {"n", "entries", "group"}, {"entries"});
    const json& rows = require_array(j["entries"], "entries");
    const std::size_t n = rows.size();
    if (n == 0) throw SchemaError("loop has no rows");
    if (j.contains("n") && require_int(j["n"], "n") != static_cast<int>(n)) throw SchemaError("n does not match entries");
    std::vector<LaurentSeries> e;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n) throw SchemaError("loop must be square");
        for (const auto& x : row) e.push_back(series_from_json(x, ring));
    }
    Group g = Group::GL;
    if (j.contains("group")) {
        const json& gj = j["group"];
        if (gj == "SL") {
            g = Group::SL;
        } else if (gj != "GL") {
            throw SchemaError("group must be \"GL\" or \"SL\"");
        }
    }
    return LoopMatrix(SeriesMatrix(ring, n, n, std::move(e)), g);
}

json to_json(const ModificationDatum& b)
{
    json points = json::array();
    for (const auto& p : b.points()) points.push_back(to_json(p.r));
    json loops = json::array();
    for (const auto& l : b.loops()) loops.push_back(to_json(l));
    return {{"n", b.rank()},
            {"points", points},
            {"loops", loops},
            {"infinity_loop", b.infinity_loop() ? to_json(*b.infinity_loop()) : json(nullptr)}};
}

ModificationDatum datum_from_json(const json& j, const Ring& ring)
{
    require_object(j, "bundle datum", {"n", "points", "loops", "infinity_loop"}, {"points", "loops"});
    std::vector<MarkedPoint> points;
    for (const auto& p : require_array(j["points"], "points")) points.push_back({scalar_from_json(p, ring)});
    std::vector<LoopMatrix> loops;
    for (const auto& l : require_array(j["loops"], "loops")) loops.push_back(loop_from_json(l, ring));
    std::optional<LoopMatrix> inf;
    if (j.contains("infinity_loop") && !j["infinity_loop"].is_null()) inf = loop_from_json(j["infinity_loop"], ring);
    if (points.size() != loops.size()) throw SchemaError("points and loops differ in length");
    if (loops.empty() && !inf) {
        if (!j.contains("n")) throw SchemaError("a datum without loops needs \"n\"");
        const int n = require_int(j["n"], "n");
        if (n <= 0) throw SchemaError("n must be positive");
        return ModificationDatum(ring, static_cast<std::size_t>(n));
    }
    ModificationDatum b(std::move(points), std::move(loops), std::move(inf));
    if (j.contains("n") && require_int(j["n"], "n") != static_cast<int>(b.rank())) {
        throw SchemaError("n does not match the loops");
    }
    return b;
}

json to_json(const Cocharacter& c) { return {{"lambda", c.values()}}; }

Cocharacter cocharacter_from_json(const json& j)
{
    require_object(j, "cocharacter", {"lambda"}, {"lambda"});
    return Cocharacter(int_list(j["lambda"], "lambda"));
}

json to_json(const CoarseStratum& c)
{
    json orbit = json::array();
    for (const auto& l : c.orbit) orbit.push_back(l.values());
    return {{"orbit", orbit}};
}

CoarseStratum coarse_stratum_from_json(const json& j)
{
    require_object(j, "coarse stratum", {"orbit"}, {"orbit"});
    const auto& orbit = require_array(j["orbit"], "orbit");
    if (orbit.empty()) throw SchemaError("orbit is empty");
    const CoarseStratum c = CoarseStratum::of(Cocharacter(int_list(orbit[0], "orbit")));
    CoarseStratum given;
    for (const auto& l : orbit) given.orbit.emplace_back(int_list(l, "orbit"));
    if (!(given == c)) throw SchemaError("orbit is not a sorted dual pair");
    return c;
}

json to_json(const SplittingType& s) { return {{"a", s.a}}; }

SplittingType splitting_type_from_json(const json& j)
{
    require_object(j, "splitting type", {"a"}, {"a"});
    SplittingType s{int_list(j["a"], "a")};
    if (!std::is_sorted(s.a.begin(), s.a.end(), std::greater<>())) throw SchemaError("a must be non-increasing");
    return s;
}

json to_json(const Factorization& f)
{
    json factors = json::array();
    for (const auto& e : f.factors) {
        factors.push_back({{"pos", {e.i + 1, e.j + 1}}, {"param", to_json(e.param)}});
    }
    const bool trivial_gamma = f.gamma.entries() == SeriesMatrix::identity(f.ring, f.n);
    return {{"gamma", trivial_gamma ? json(nullptr) : to_json(f.gamma)}, {"factors", factors}};
}

Factorization factorization_from_json(const json& j, const Ring& ring)
{
    require_object(j, "factorization", {"gamma", "factors", "reconstructs"}, {"factors"});
    Factorization f{ring, 2, LoopMatrix::identity(ring, 2, Group::SL), {}};
    if (j.contains("gamma") && !j["gamma"].is_null()) {
        f.gamma = loop_from_json(j["gamma"], ring);
        f.n = f.gamma.size();
    }
    for (const auto& e : require_array(j["factors"], "factors")) {
        require_object(e, "factor", {"pos", "param"}, {"pos", "param"});
        const std::vector<int> pos = int_list(e["pos"], "pos");
        if (pos.size() != 2 || pos[0] < 1 || pos[1] < 1 || pos[0] == pos[1] || pos[0] > static_cast<int>(f.n) ||
            pos[1] > static_cast<int>(f.n)) {
            throw SchemaError("pos must be two distinct 1-based indices");
        }
        f.factors.push_back({static_cast<std::size_t>(pos[0] - 1), static_cast<std::size_t>(pos[1] - 1),
                             series_from_json(e["param"], ring)});
    }
    if (j.contains("reconstructs") && !j["reconstructs"].is_boolean()) throw SchemaError("reconstructs must be a boolean");
    return f;
}

} // namespace loopgr::json_io
