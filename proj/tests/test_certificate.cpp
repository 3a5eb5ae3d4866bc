#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "qlg/certificate.hpp"
#include "test_shared.hpp"

using namespace qlg;

namespace {

ParamTuple worked_tuple() {
    ParamTuple t;
    t.b = {Int(-1), Int(17), Int(89), Int(257), Int(769)};
    t.u = ParamTuple::default_u(t.b);
    return t;
}

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(QLG_FIXTURES_DIR) + "/paper-example/" + name);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    return line;
}

} // namespace

TEST_CASE("full certificate on the worked tuple") {
    const CertifyContext& ctx = shared_ctx();
    Certificate cert = run_certify(ctx, worked_tuple(), 100);
    REQUIRE_FALSE(cert.failure.has_value());
    CHECK(cert.bitangent_hasse_failure);
    CHECK(cert.sdr_hasse_failure);
    CHECK(cert.pass());
    CHECK(cert.smooth);
    CHECK(cert.rational_point);
    CHECK(cert.splitting_field_ok);
    CHECK(cert.star_minus.pass);
    CHECK(cert.star_plus.pass);
    CHECK(format_ternform(cert.quartic) == read_fixture("quartic.txt"));
    REQUIRE(cert.fibers.size() == 6);
    for (const FiberRecord& f : cert.fibers) {
        CHECK(f.line1_bitangent);
        CHECK(f.line2_bitangent);
    }

    // places: all ramified primes, 2, infinity, and every prime <= 100
    bool has_inf = false;
    std::set<std::string> places;
    for (const PlaceRecord& r : cert.places) {
        places.insert(r.cert.place.str());
        if (r.cert.place.infinite) has_inf = true;
        REQUIRE(r.cert.cyclic);
        // cross-module consistency: the generator's image in E fixes at
        // least one odd form, and the chosen witness is really fixed
        REQUIRE(r.fixed_odd_count >= 1);
        SpMat img;
        img.bits = r.generator_in_e;
        REQUIRE(ctx.e.contains(img));
        REQUIRE(fixes_form(img, QuadForm{static_cast<std::uint8_t>(
                                    r.witness_odd_form)}));
        REQUIRE(QuadForm{static_cast<std::uint8_t>(r.witness_odd_form)}.arf() == 1);
    }
    CHECK(has_inf);
    for (const char* p : {"2", "17", "89", "257", "769", "97"})
        CHECK(places.contains(p));
}

TEST_CASE("invalid tuple produces a structured validation failure") {
    ParamTuple t;
    t.b = {Int(-1), Int(5), Int(89), Int(257), Int(769)};
    t.u = ParamTuple::default_u(t.b);
    Certificate cert = run_certify(shared_ctx(), t, 50);
    REQUIRE(cert.failure.has_value());
    CHECK(cert.failure->kind == FailureKind::kInvalidParameters);
    CHECK(cert.failure->message.find("place 2") != std::string::npos);
    CHECK_FALSE(cert.bitangent_hasse_failure);
    CHECK_FALSE(cert.pass());
}

TEST_CASE("certificate JSON: schema keys, quartic round-trip, recheck") {
    Certificate cert = run_certify(shared_ctx(), worked_tuple(), 50);
    Json j = certificate_json(cert);
    for (const char* key :
         {"params", "quartic", "group", "arithmetic", "geometry", "verdicts",
          "versions"})
        REQUIRE(j.contains(key));
    CHECK(j["quartic"].get<std::string>() == read_fixture("quartic.txt"));
    CHECK(parse_ternform(j["quartic"].get<std::string>(), 4) == cert.quartic);
    CHECK(j["verdicts"]["bitangent_hasse_failure"].get<bool>());

    std::string why;
    CHECK(recheck_verdicts(j, &why));

    // tampering with a section must be caught by the recheck
    Json tampered = j;
    tampered["geometry"]["smooth"] = false;
    CHECK_FALSE(recheck_verdicts(tampered, &why));
    Json tampered2 = j;
    tampered2["verdicts"]["sdr_hasse_failure"] = false;
    CHECK_FALSE(recheck_verdicts(tampered2, &why));
    Json tampered3 = j;
    tampered3["group"]["star_minus"]["pass"] = false;
    CHECK_FALSE(recheck_verdicts(tampered3, &why));
}

TEST_CASE("recheck rejects forged group sections") {
    Certificate cert = run_certify(shared_ctx(), worked_tuple(), 30);
    Json j = certificate_json(cert);
    std::string why;

    // generators that span something much bigger than (F_2)^5
    Json forged = j;
    forged["group"]["E_generators"] = {transvection(1).encode(),
                                       transvection(8).encode(),
                                       transvection(2).encode(),
                                       transvection(16).encode(),
                                       transvection(3).encode()};
    CHECK_FALSE(recheck_verdicts(forged, &why));
    CHECK(why.find("span") != std::string::npos);

    // a non-symplectic encoding
    Json forged2 = j;
    SpMat bad = SpMat::identity();
    bad.set_row(0, 0b000011);
    forged2["group"]["E_generators"][0] = bad.encode();
    CHECK_FALSE(recheck_verdicts(forged2, &why));

    // generator image inconsistent with the claimed encoding
    Json forged3 = j;
    bool tampered_one = false;
    for (Json& p : forged3["arithmetic"]["places"]) {
        if (p["cyclic"].get<bool>() && p["generator"].get<unsigned>() != 0) {
            p["generator_in_E"] = SpMat::identity().encode();
            tampered_one = true;
            break;
        }
    }
    REQUIRE(tampered_one);
    CHECK_FALSE(recheck_verdicts(forged3, &why));
}

TEST_CASE("failed runs recheck consistently") {
    ParamTuple t;
    t.b = {Int(-1), Int(5), Int(89), Int(257), Int(769)};
    t.u = ParamTuple::default_u(t.b);
    Certificate cert = run_certify(shared_ctx(), t, 50);
    Json j = certificate_json(cert);
    std::string why;
    CHECK(recheck_verdicts(j, &why));
    Json tampered = j;
    tampered["verdicts"]["bitangent_hasse_failure"] = true;
    CHECK_FALSE(recheck_verdicts(tampered, &why));
}

TEST_CASE("extra spot-check places: accepted primes, rejected non-primes") {
    Certificate cert = run_certify(shared_ctx(), worked_tuple(), 10, {Int(1009)});
    bool found = false;
    for (const PlaceRecord& r : cert.places)
        if (!r.cert.place.infinite && r.cert.place.p == 1009) found = true;
    CHECK(found);
    CHECK(cert.pass());
    CHECK_THROWS_AS(run_certify(shared_ctx(), worked_tuple(), 10, {Int(4)}),
                    std::invalid_argument);
}

TEST_CASE("variant tuples with an even first parameter certify end to end") {
    for (Int b1 : {Int(2), Int(-2)}) {
        ParamTuple t;
        t.b = {b1, Int(17), Int(89), Int(257), Int(769)};
        t.u = ParamTuple::default_u(t.b);
        Certificate cert = run_certify(shared_ctx(), t, 30);
        REQUIRE_FALSE(cert.failure.has_value());
        CHECK(cert.bitangent_hasse_failure);
        CHECK(cert.sdr_hasse_failure);
    }
}

TEST_CASE("retry wrapper records attempts and never loops silently") {
    std::vector<CertifyAttempt> log;
    Certificate cert =
        run_certify_with_retries(shared_ctx(), worked_tuple(), 2, log, 30);
    CHECK(cert.pass());
    REQUIRE(log.size() == 1); // smooth on the first attempt
    CHECK_FALSE(log[0].not_smooth);
}
