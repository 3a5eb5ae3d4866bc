#pragma once
// Orchestration: run the whole pipeline on a parameter tuple and assemble
// the machine-checkable certificate (group facts, exact polynomial
// identities, smoothness, per-place decomposition data, verdicts), plus
// JSON serialization and the verdict recheck.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlg/conic.hpp"
#include "qlg/errors.hpp"
#include "qlg/qfield.hpp"
#include "qlg/smooth.hpp"
#include "qlg/sp6.hpp"
#include "qlg/subgroup.hpp"

namespace qlg {

inline constexpr const char* kToolVersion = "qlg 1.0.0";
inline constexpr int kCertificateFormat = 1;

// Parameter-independent part: the group, the certified subgroup E inside
// the stabilizer of e_1, and its two fixed-point condition reports.
struct CertifyContext {
    GroupTable table;
    Subgroup e;
    CondReport star_minus, star_plus;

    static CertifyContext build() {
        CertifyContext ctx;
        ctx.table = generate_sp6();
        ctx.e = pick_certified_E(ctx.table);
        ctx.star_minus = check_star(ctx.e, Parity::kOdd);
        ctx.star_plus = check_star(ctx.e, Parity::kEven);
        return ctx;
    }

    // GalVec -> E via the canonical generators (all elements commute)
    SpMat map_galvec(GalVec v) const {
        SpMat m = SpMat::identity();
        for (int i = 0; i < 5; ++i)
            if ((v >> i) & 1) m = m * e.generators[i];
        return m;
    }
};

struct PlaceRecord {
    PlaceCert cert;
    GalVec generator = 0;        // generator of the (cyclic) group, 0 if trivial
    std::uint64_t generator_in_e = 0; // encoding of its image in E
    int fixed_odd_count = 0;     // forms of Omega^- fixed by that image
    int witness_odd_form = -1;   // basis_vals of one fixed odd form
};

struct FiberRecord {
    FiberSplit split;
    bool line1_bitangent = false;
    bool line2_bitangent = false;
};

struct StructuredFailure {
    FailureKind kind;
    std::string message;
    std::string retry_hint;
};

struct Certificate {
    // params
    std::array<Int, 5> b;
    Rat u;
    std::array<Rat, 5> a;
    Rat a6, c;

    // construction
    BinForm f_sextic;
    BinForm g, h;
    TernForm quartic;

    // group section
    std::vector<std::uint64_t> e_generators;
    CondReport star_minus, star_plus;

    // arithmetic section
    ValidationReport validation;
    std::vector<PlaceRecord> places;
    bool splitting_field_ok = false;

    // geometry section
    bool smooth = false;
    std::vector<FiberRecord> fibers;
    bool rational_point = false; // [0:1:0] on the quartic

    // verdicts
    bool bitangent_hasse_failure = false;
    bool sdr_hasse_failure = false;

    std::optional<StructuredFailure> failure;

    bool pass() const {
        return !failure && bitangent_hasse_failure && sdr_hasse_failure;
    }
};

inline std::vector<Int> sample_places(const ValidationReport& validation,
                                      std::int64_t place_bound,
                                      const std::vector<Int>& extra = {}) {
    std::set<Int> ps;
    ps.insert(2);
    for (const auto& list : validation.ramified)
        for (const Int& p : list) ps.insert(p);
    for (std::int64_t q = 2; q <= place_bound; ++q)
        if (is_prime_u64(static_cast<std::uint64_t>(q))) ps.insert(Int(q));
    for (const Int& p : extra) {
        if (p < 2 || !is_prime(p))
            throw std::invalid_argument("sample_places: " + p.get_str() +
                                        " is not a prime");
        ps.insert(p);
    }
    return {ps.begin(), ps.end()};
}

// Full pipeline. Never loops: a singular quartic is reported as a
// structured NotSmooth failure with a retry hint.
inline Certificate run_certify(const CertifyContext& ctx, const ParamTuple& params,
                               std::int64_t place_bound = 100,
                               const std::vector<Int>& extra_places = {}) {
    Certificate cert;
    cert.b = params.b;
    cert.u = params.u;
    cert.a = params.derived_a();
    for (const SpMat& gen : ctx.e.generators)
        cert.e_generators.push_back(gen.encode());
    cert.star_minus = ctx.star_minus;
    cert.star_plus = ctx.star_plus;

    cert.validation = validate_params(params.b);
    if (!cert.validation.pass) {
        std::string msg = "parameter validation failed";
        for (const std::string& f : cert.validation.failures) msg += "; " + f;
        cert.failure = StructuredFailure{FailureKind::kInvalidParameters, msg,
                                         "choose parameters passing validate-params"};
        return cert;
    }

    // arithmetic section
    std::vector<Int> primes =
        sample_places(cert.validation, place_bound, extra_places);
    std::vector<Place> place_list;
    for (const Int& p : primes) place_list.push_back(Place::at(p));
    place_list.push_back(Place::infinity());
    bool all_cyclic = true;
    for (const Place& pl : place_list) {
        PlaceRecord rec;
        rec.cert = decomposition_generator(params.b, pl);
        if (rec.cert.cyclic) {
            rec.generator = 0;
            for (GalVec v : rec.cert.decomposition)
                if (v != 0) rec.generator = v;
            SpMat img = ctx.map_galvec(rec.generator);
            rec.generator_in_e = img.encode();
            std::vector<QuadForm> fixed = fixed_forms(img, Parity::kOdd);
            rec.fixed_odd_count = static_cast<int>(fixed.size());
            if (!fixed.empty()) rec.witness_odd_form = fixed.front().basis_vals;
        } else {
            all_cyclic = false;
        }
        cert.places.push_back(std::move(rec));
    }

    try {
        ConstructionInput in = make_input(cert.a, params.u);
        cert.a6 = in.a6;
        cert.c = in.c;
        cert.f_sextic = build_F(in);
        auto [g, h] = solve_gh(cert.f_sextic, in.c);
        cert.g = g;
        cert.h = h;
        SymMat3 m = assemble_M(g, h);
        if (!(det3(m) == -cert.f_sextic))
            throw PipelineError(FailureKind::kInexactDivision,
                                "det M != -F after solve step");
        cert.quartic = discriminant_quartic(m);
        cert.rational_point = (cert.quartic.eval(0, 1, 0) == 0);

        std::vector<Rat> all_a(cert.a.begin(), cert.a.end());
        all_a.push_back(cert.a6);
        cert.splitting_field_ok = splitting_field_check(all_a, params.b);

        cert.smooth = is_smooth(cert.quartic);
        if (!cert.smooth) {
            cert.failure = StructuredFailure{
                FailureKind::kNotSmooth, "discriminant quartic is singular",
                "re-sample u: multiply by a small prime and run again"};
            return cert;
        }

        for (int i = 0; i < 6; ++i) {
            Rat root = (i < 5) ? cert.a[i] : cert.a6;
            FiberRecord rec;
            rec.split = split_degenerate_fiber(m, root, i + 1);
            rec.line1_bitangent = verify_bitangent(cert.quartic, rec.split.line1);
            rec.line2_bitangent = verify_bitangent(cert.quartic, rec.split.line2);
            cert.fibers.push_back(std::move(rec));
        }
    } catch (const PipelineError& err) {
        cert.failure = StructuredFailure{err.kind(), err.what(),
                                         err.kind() == FailureKind::kNotSmooth
                                             ? "re-sample u and run again"
                                             : "adjust parameters"};
        return cert;
    }

    cert.bitangent_hasse_failure = cert.star_minus.pass && cert.smooth &&
                                   all_cyclic && cert.splitting_field_ok;
    cert.sdr_hasse_failure = cert.bitangent_hasse_failure &&
                             cert.star_plus.pass && cert.rational_point;
    return cert;
}

// Retry wrapper: on NotSmooth, multiply u by the next small prime and try
// again, keeping every attempt in the log (no silent looping).
struct CertifyAttempt {
    Rat u;
    bool not_smooth = false;
};

inline Certificate run_certify_with_retries(const CertifyContext& ctx,
                                            ParamTuple params,
                                            int max_retries,
                                            std::vector<CertifyAttempt>& log,
                                            std::int64_t place_bound = 100,
                                            const std::vector<Int>& extra = {}) {
    static const int kPrimes[] = {3, 5, 7, 11, 13, 19, 23, 29};
    Certificate cert = run_certify(ctx, params, place_bound, extra);
    log.push_back({params.u, cert.failure &&
                                 cert.failure->kind == FailureKind::kNotSmooth});
    int tries = 0;
    while (cert.failure && cert.failure->kind == FailureKind::kNotSmooth &&
           tries < max_retries) {
        params.u *= kPrimes[tries % 8];
        cert = run_certify(ctx, params, place_bound, extra);
        log.push_back({params.u, cert.failure &&
                                     cert.failure->kind == FailureKind::kNotSmooth});
        ++tries;
    }
    return cert;
}

// ---- JSON ----

using Json = nlohmann::ordered_json;

inline Json cond_report_json(const CondReport& rep) {
    Json j;
    j["parity"] = rep.parity == Parity::kOdd ? "-" : "+";
    j["pass"] = rep.pass;
    j["no_common_fixed"] = rep.no_common_fixed;
    j["every_element_fixes"] = rep.every_element_fixes;
    Json common = Json::array();
    for (const QuadForm& q : rep.common_fixed) common.push_back(q.basis_vals);
    j["common_fixed_forms"] = common;
    int min_count = -1;
    for (const auto& [enc, cnt] : rep.per_element_fixed_counts)
        if (min_count < 0 || cnt < min_count) min_count = cnt;
    j["min_fixed_count"] = min_count;
    if (rep.failing_element) j["failing_element"] = *rep.failing_element;
    return j;
}

inline Json quadext_json(const QuadExt& x) {
    Json j;
    j["a"] = to_string(x.a);
    j["b"] = to_string(x.b);
    j["delta"] = x.delta.get_str();
    j["text"] = to_string(x);
    return j;
}

inline Json certificate_json(const Certificate& cert) {
    Json j;
    j["versions"] = {{"format", kCertificateFormat}, {"tool", kToolVersion}};

    Json params;
    Json bs = Json::array();
    for (const Int& bi : cert.b) bs.push_back(bi.get_str());
    params["b"] = bs;
    params["u"] = to_string(cert.u);
    Json as = Json::array();
    for (const Rat& ai : cert.a) as.push_back(to_string(ai));
    params["a"] = as;
    params["a6"] = to_string(cert.a6);
    params["c"] = to_string(cert.c);
    j["params"] = params;

    j["quartic"] = format_ternform(cert.quartic);
    j["construction"] = {{"F", format_binform(cert.f_sextic, "S", "T")},
                         {"g", format_binform(cert.g, "S", "T")},
                         {"h", format_binform(cert.h, "S", "T")}};

    Json group;
    group["E_order"] = 32;
    group["E_generators"] = cert.e_generators;
    group["star_minus"] = cond_report_json(cert.star_minus);
    group["star_plus"] = cond_report_json(cert.star_plus);
    j["group"] = group;

    Json arith;
    arith["validation"] = {{"pass", cert.validation.pass},
                           {"failures", cert.validation.failures}};
    Json ram = Json::array();
    for (const auto& list : cert.validation.ramified) {
        Json l = Json::array();
        for (const Int& p : list) l.push_back(p.get_str());
        ram.push_back(l);
    }
    arith["validation"]["ramified_primes"] = ram;
    arith["splitting_field_check"] = cert.splitting_field_ok;
    Json places = Json::array();
    for (const PlaceRecord& rec : cert.places) {
        Json p;
        p["place"] = rec.cert.place.str();
        Json inert = Json::array();
        for (GalVec v : rec.cert.inertia_gens) inert.push_back(v);
        p["inertia_generators"] = inert;
        p["frobenius"] = rec.cert.frobenius;
        p["group_order"] = rec.cert.decomposition.size();
        p["cyclic"] = rec.cert.cyclic;
        p["generator"] = rec.generator;
        p["generator_in_E"] = rec.generator_in_e;
        p["fixed_odd_count"] = rec.fixed_odd_count;
        p["witness_odd_form"] = rec.witness_odd_form;
        places.push_back(p);
    }
    arith["places"] = places;
    j["arithmetic"] = arith;

    Json geom;
    geom["smooth"] = cert.smooth;
    geom["rational_point_0_1_0"] = cert.rational_point;
    Json fibers = Json::array();
    for (const FiberRecord& rec : cert.fibers) {
        Json f;
        f["index"] = rec.split.root_index;
        f["root"] = to_string(rec.split.root);
        f["delta"] = rec.split.delta.get_str();
        Json l1 = Json::array(), l2 = Json::array();
        for (int i = 0; i < 3; ++i) {
            l1.push_back(quadext_json(rec.split.line1[i]));
            l2.push_back(quadext_json(rec.split.line2[i]));
        }
        f["line1"] = l1;
        f["line2"] = l2;
        f["lambda"] = to_string(rec.split.lambda);
        f["line1_bitangent"] = rec.line1_bitangent;
        f["line2_bitangent"] = rec.line2_bitangent;
        fibers.push_back(f);
    }
    geom["fibers"] = fibers;
    j["geometry"] = geom;

    j["verdicts"] = {{"bitangent_hasse_failure", cert.bitangent_hasse_failure},
                     {"sdr_hasse_failure", cert.sdr_hasse_failure}};

    if (cert.failure) {
        j["failure"] = {{"kind", failure_name(cert.failure->kind)},
                        {"message", cert.failure->message},
                        {"retry_hint", cert.failure->retry_hint}};
    }
    return j;
}

// Recheck a serialized certificate: the verdicts must be the pure
// function of the sections they claim to be, and the group section is
// re-derived from the stored generator encodings (closure, fixed-point
// conditions, per-place witnesses) with plain bit arithmetic.
inline bool recheck_verdicts(const Json& j, std::string* diagnosis = nullptr) {
    auto fail = [&](const std::string& why) {
        if (diagnosis) *diagnosis = why;
        return false;
    };
    if (j.contains("failure")) {
        bool stored_b = j["verdicts"]["bitangent_hasse_failure"].get<bool>();
        bool stored_s = j["verdicts"]["sdr_hasse_failure"].get<bool>();
        if (stored_b || stored_s)
            return fail("failed run must not claim a verdict");
        return true;
    }
    const Json& group = j["group"];

    // rebuild E from the stored generators and recompute both conditions
    std::vector<SpMat> gens;
    for (const Json& e : group["E_generators"]) {
        SpMat m;
        m.bits = e.get<std::uint64_t>();
        if (!m.is_symplectic()) return fail("stored E generator not symplectic");
        gens.push_back(m);
    }
    if (gens.size() != 5) return fail("expected 5 generators of E");
    Subgroup e = subgroup_closure(gens);
    if (e.order() != 32) return fail("stored generators do not span (F_2)^5");
    for (const SpMat& x : e.elements)
        if (!((x * x) == SpMat::identity()))
            return fail("stored E contains an element of order > 2");
    CondReport minus = check_star(e, Parity::kOdd);
    CondReport plus = check_star(e, Parity::kEven);
    if (minus.pass != group["star_minus"]["pass"].get<bool>() ||
        plus.pass != group["star_plus"]["pass"].get<bool>())
        return fail("stored condition reports disagree with recomputation");
    auto cond_consistent = [](const Json& rep) {
        bool derived = rep["no_common_fixed"].get<bool>() &&
                       rep["every_element_fixes"].get<bool>() &&
                       rep["common_fixed_forms"].empty() &&
                       rep["min_fixed_count"].get<int>() >= 1;
        return rep["pass"].get<bool>() == derived;
    };
    if (!cond_consistent(group["star_minus"]) ||
        !cond_consistent(group["star_plus"]))
        return fail("condition report pass bit inconsistent with its fields");
    bool star_minus = minus.pass;
    bool star_plus = plus.pass;

    // per-place cross-checks: the generator maps into E consistently and
    // fixes the stored odd witness form
    bool all_cyclic = true;
    for (const Json& p : j["arithmetic"]["places"]) {
        if (!p["cyclic"].get<bool>()) {
            all_cyclic = false;
            continue;
        }
        GalVec v = static_cast<GalVec>(p["generator"].get<unsigned>());
        SpMat img = SpMat::identity();
        for (int i = 0; i < 5; ++i)
            if ((v >> i) & 1) img = img * gens[i];
        if (img.encode() != p["generator_in_E"].get<std::uint64_t>())
            return fail("stored image in E does not match the generator");
        int w = p["witness_odd_form"].get<int>();
        if (p["fixed_odd_count"].get<int>() < 1 || w < 0 || w > 63)
            return fail("place " + p["place"].get<std::string>() +
                        " has no fixed odd form witness");
        QuadForm wf{static_cast<std::uint8_t>(w)};
        if (wf.arf() != 1 || !fixes_form(img, wf))
            return fail("witness form at place " + p["place"].get<std::string>() +
                        " is not a fixed odd form");
    }
    bool splitting = j["arithmetic"]["splitting_field_check"].get<bool>();
    bool smooth = j["geometry"]["smooth"].get<bool>();
    bool ratpt = j["geometry"]["rational_point_0_1_0"].get<bool>();

    bool bitangent = star_minus && smooth && all_cyclic && splitting;
    bool sdr = bitangent && star_plus && ratpt;
    if (bitangent != j["verdicts"]["bitangent_hasse_failure"].get<bool>())
        return fail("bitangent verdict does not follow from sections");
    if (sdr != j["verdicts"]["sdr_hasse_failure"].get<bool>())
        return fail("sdr verdict does not follow from sections");
    return true;
}

} // namespace qlg
