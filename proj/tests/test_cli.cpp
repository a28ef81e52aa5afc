#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "loopgr/cli.hpp"
#include "loopgr/json_io.hpp"

using namespace loopgr;
using json_io::json;

namespace {

const std::string kData = TEST_DATA_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args, const std::string& stdin_text = "")
{
    std::istringstream in(stdin_text);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::string scratch(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("loopgr_test_" + name)).string();
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("cli examples")
{
    const Result s = call({"stratum", data("identity_loop.json")});
    CHECK(s.code == 0);
    CHECK(json::parse(s.out) == json::parse(R"({"lambda":[0,0]})"));

    const Result st = call({"splitting-type", data("diag_point.json")});
    CHECK(st.code == 0);
    CHECK(json::parse(st.out) == json::parse(R"({"a":[1,-1]})"));

    const Result f = call({"factor", data("rotation.json")});
    CHECK(f.code == 0);
    const json fj = json::parse(f.out);
    CHECK(fj["factors"].size() == 3);
    CHECK(fj["reconstructs"] == true);
    CHECK(fj["factors"][1]["pos"] == json::array({2, 1}));
}

TEST_CASE("cli subcommands and round trips")
{
    const Ring Q = Ring::rationals();
    const Ring A3 = Ring::artinian(Q, 3);

    const Result coarse = call({"coarse-stratum", data("rotation.json")});
    CHECK(coarse.code == 0);
    CHECK(json_io::coarse_stratum_from_json(json::parse(coarse.out)).orbit.size() == 1);

    const Result snf = call({"snf", data("rotation.json")});
    CHECK(snf.code == 0);
    const json sj = json::parse(snf.out);
    CHECK(sj["lambda"] == json::array({0, 0}));
    CHECK_NOTHROW(json_io::loop_from_json(sj["u"], Q));

    const Result st = call({"splitting-type", data("unipotent_point.json")});
    CHECK(json_io::splitting_type_from_json(json::parse(st.out)).a == std::vector{0, 0});

    const Result h = call({"h0", data("diag_point.json"), "--twist", "0"});
    CHECK(h.code == 0);
    CHECK(json::parse(h.out) == json::parse(R"({"m":0,"h0":2})"));

    const Result glue = call({"glue", data("unipotent_point.json")});
    CHECK(glue.code == 0);
    const json gj = json::parse(glue.out);
    CHECK(gj["a"] == json::array({0, 0}));
    CHECK(gj["strata"] == json::parse("[[1,-1]]"));
    CHECK(gj["all_strata_zero"] == false);
    CHECK(gj["trivial"] == true);

    const Result mod = call({"modify", data("modify_example.json")});
    CHECK(mod.code == 0);
    const ModificationDatum md = json_io::datum_from_json(json::parse(mod.out), Q);
    CHECK(splitting_type(md).a == std::vector{1, -1});

    const Result fac = call({"factor", data("rotation.json")});
    const Factorization fr = json_io::factorization_from_json(json::parse(fac.out), Q);
    CHECK(fr.factors.size() == 3);

    const std::string factors_path = scratch("rotation_factors.json");
    std::ofstream(factors_path) << fac.out;
    const Result lift = call({"lift", factors_path, "--to", "Q[x]/x^3", "--seed", "4"});
    CHECK(lift.code == 0);
    const Factorization fl = json_io::factorization_from_json(json::parse(lift.out), A3);
    CHECK(residue(LoopMatrix(fl.product())).entries() ==
          json_io::loop_from_json(json::parse(slurp(data("rotation.json"))), Q).entries());

    const Result ext = call({"extend", data("unipotent_point.json"), "--to", "Q[x]/x^2", "--seed", "1"});
    CHECK(ext.code == 0);
    const ModificationDatum ed = json_io::datum_from_json(json::parse(ext.out), Ring::artinian(Q, 2));
    CHECK(ed.ring().kind == RingKind::artinian);

    const Result ex = call({"expand", data("expand_example.json"), "--precision", "4"});
    CHECK(ex.code == 0);
    const LaurentSeries es = json_io::series_from_json(json::parse(ex.out), Q);
    CHECK(es.coefficient(0) == Scalar::parse(Q, "-1/2"));
    CHECK(es.coefficient(2) == Scalar::parse(Q, "-1/8"));
    CHECK(es.absolute_precision() == 4);

    // Same seed, same output.
    CHECK(call({"extend", data("unipotent_point.json"), "--to", "Q[x]/x^2", "--seed", "1"}).out == ext.out);
}

TEST_CASE("cli stdin, text format, rings")
{
    const Result s = call({"stratum", "-"}, slurp(data("rotation.json")));
    CHECK(s.code == 0);
    CHECK(json::parse(s.out)["lambda"] == json::array({0, 0}));

    const Result t = call({"glue", data("diag_point.json"), "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("splitting type  O(1) + O(-1)") != std::string::npos);
    CHECK(t.out.find("0      (1, -1)") != std::string::npos);

    const Result f3 = call({"--ring", "F3", "stratum", data("rotation.json")});
    CHECK(f3.code == 0);
    CHECK(json::parse(f3.out)["lambda"] == json::array({0, 0}));
}

TEST_CASE("cli exit codes")
{
    CHECK(call({"stratum", data("unknown_field.json")}).code == cli::kSchema);
    CHECK(call({"stratum", "-"}, "{not json").code == cli::kSchema);
    CHECK(call({"expand", data("rotation.json")}).code == cli::kSchema);
    CHECK(call({"stratum", data("hidden_pivot.json")}).code == cli::kPrecision);
    CHECK(call({"stratum", data("singular.json")}).code == cli::kSingular);
    CHECK(call({"factor", data("identity3.json")}).code == cli::kDomain);
    CHECK(call({"factor", data("identity_loop.json"), "--ring", "Q[x]/x^2"}).code == cli::kDomain);

    CHECK(call({"frobnicate"}).code == cli::kUsage);
    CHECK(call({"stratum", data("no_such_file.json")}).code == cli::kUsage);
    CHECK(call({"stratum", data("rotation.json"), "--precision", "5000"}).code == cli::kUsage);
    CHECK(call({"h0", data("diag_point.json")}).code == cli::kUsage);
    CHECK(call({"--help"}).code == cli::kOk);
}

TEST_CASE("cli batch keeps input order")
{
    const std::string path = scratch("batch.txt");
    {
        std::ofstream b(path);
        b << "# comment\n";
        for (int k = 0; k < 6; ++k) {
            b << "h0 " << data("diag_point.json") << " --twist " << k << "\n";
        }
        b << "stratum " << data("singular.json") << "\n";
    }
    const Result r = call({"--batch", path});
    std::istringstream lines(r.out);
    std::string line;
    int k = 0;
    while (std::getline(lines, line)) {
        const json j = json::parse(line);
        CHECK(j["m"] == k);
        CHECK(j["h0"] == 2 * k + 2);
        ++k;
    }
    CHECK(k == 6);
    CHECK(r.code == cli::kSingular);
}

TEST_CASE("json documents round-trip")
{
    const Ring Q = Ring::rationals();
    const Ring A = Ring::artinian(Ring::prime_field(5), 3);

    const LaurentSeries s = LaurentSeries::monomial(Scalar::parse(Q, "3/7"), -2) +
                            LaurentSeries::monomial(Scalar::parse(Q, "-1"), 4).truncated(9);
    CHECK(json_io::series_from_json(json_io::to_json(s), Q) == s);
    const json sj = json_io::to_json(s);
    CHECK(sj["precision"] == 9);
    CHECK(sj["terms"][0] == json::parse(R"([-2, "3/7"])"));

    const Scalar a = Scalar::from_coefficients(A, {Scalar::from_int(Ring::prime_field(5), 2), Scalar::from_int(Ring::prime_field(5), 0),
                                                   Scalar::from_int(Ring::prime_field(5), 4)});
    CHECK(json_io::to_json(a) == json::parse(R"(["2", "0", "4"])"));
    CHECK(json_io::scalar_from_json(json_io::to_json(a), A) == a);
    CHECK(json_io::scalar_from_json("3", A) == Scalar::from_int(A, 3));
    CHECK_THROWS_AS(json_io::scalar_from_json(3, Q), SchemaError);
    CHECK_THROWS_AS(json_io::scalar_from_json(json::parse(R"(["1","1","1","1"])"), A), SchemaError);

    const RationalFunction f(Polynomial(Q, {Scalar::parse(Q, "1"), Scalar::parse(Q, "0"), Scalar::parse(Q, "2")}),
                             Polynomial::linear(Scalar::parse(Q, "5")));
    const RationalFunction g = json_io::rational_function_from_json(json_io::to_json(f), Q);
    CHECK(g.numerator() == f.numerator());
    CHECK(g.denominator() == f.denominator());

    const LoopMatrix l = random_loop(Q, 3, 2, 4).loop;
    CHECK(json_io::loop_from_json(json_io::to_json(l), Q).entries() == l.entries());

    const ModificationDatum b({{Scalar::parse(Q, "1/2")}}, {random_loop(Q, 2, 1, 3).loop},
                              LoopMatrix::monomial(Q, {1, -1}));
    const ModificationDatum b2 = json_io::datum_from_json(json_io::to_json(b), Q);
    CHECK(b2.points()[0].r == b.points()[0].r);
    CHECK(b2.infinity_loop()->entries() == b.infinity_loop()->entries());
    const ModificationDatum empty = json_io::datum_from_json(json_io::to_json(ModificationDatum(Q, 3)), Q);
    CHECK(empty.rank() == 3);

    const Cocharacter c({2, 0, -1});
    CHECK(json_io::cocharacter_from_json(json_io::to_json(c)) == c);
    CHECK_THROWS_AS(json_io::cocharacter_from_json(json::parse(R"({"lambda":[0,1]})")), DomainError);
    const CoarseStratum cs = CoarseStratum::of(Cocharacter({1, 1, -2}));
    CHECK(json_io::coarse_stratum_from_json(json_io::to_json(cs)) == cs);
    CHECK_THROWS_AS(json_io::coarse_stratum_from_json(json::parse(R"({"orbit":[[1,1,-2]]})")), SchemaError);
    const SplittingType st{{3, 0, -2}};
    CHECK(json_io::splitting_type_from_json(json_io::to_json(st)) == st);

    const Factorization fac = factor_elementary(random_loop(Q, 2, 2, 8, Group::SL).loop);
    const Factorization fac2 = json_io::factorization_from_json(json_io::to_json(fac), Q);
    CHECK(fac2.product() == fac.product());

    CHECK_THROWS_AS(json_io::series_from_json(json::parse(R"({"terms":[[5,"1"]],"precision":3})"), Q), SchemaError);
    CHECK_THROWS_AS(json_io::series_from_json(json::parse(R"({"terms":[],"extra":1})"), Q), SchemaError);
    CHECK_THROWS_AS(json_io::loop_from_json(json::parse(R"({"entries":[[{"terms":[]}]],"group":"SO"})"), Q), SchemaError);
}
