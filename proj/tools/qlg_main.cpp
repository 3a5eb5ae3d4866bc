// Command line interface: group audits, elementary abelian classification,
// parameter search, the conic-bundle construction, and full certificates.
//
// Exit codes: 0 = certificate/audit pass, 1 = structured failure,
// 2 = invalid input or usage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qlg/certificate.hpp"

using namespace qlg;

namespace {

std::array<Int, 5> parse_b_list(const std::string& text) {
    std::array<Int, 5> b;
    std::stringstream ss(text);
    std::string item;
    int n = 0;
    while (std::getline(ss, item, ',')) {
        if (n >= 5) throw std::invalid_argument("expected exactly 5 values for --b");
        b[n++] = Int(item);
    }
    if (n != 5) throw std::invalid_argument("expected exactly 5 values for --b");
    return b;
}

std::string galvec_str(GalVec v) {
    std::string s = "(";
    for (int i = 0; i < 5; ++i) {
        s += ((v >> i) & 1) ? "1" : "0";
        if (i < 4) s += ",";
    }
    return s + ")";
}

void emit(const Json& j, bool json_mode, const std::string& text) {
    if (json_mode)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_group_audit(bool json_mode) {
    GroupTable table = generate_sp6();
    FormSet fs = all_forms();
    auto u28 = stabilizer_of_form(table, fs.omega_minus.front());
    auto u36 = stabilizer_of_form(table, fs.omega_plus.front());
    auto u63 = stabilizer_of_vector(table, F2Vec(1));
    auto orb_minus = form_orbit(table.generators, fs.omega_minus.front());
    auto orb_plus = form_orbit(table.generators, fs.omega_plus.front());

    Json j;
    j["group_order"] = table.size();
    j["omega_plus"] = fs.omega_plus.size();
    j["omega_minus"] = fs.omega_minus.size();
    j["stabilizer_orders"] = {{"odd_form", u28.size()},
                              {"even_form", u36.size()},
                              {"nonzero_vector", u63.size()}};
    j["transitive_on_omega_plus"] = orb_plus.size() == fs.omega_plus.size();
    j["transitive_on_omega_minus"] = orb_minus.size() == fs.omega_minus.size();

    std::ostringstream out;
    out << "|Sp_6(F_2)| = " << table.size() << "\n"
        << "|Omega^+| = " << fs.omega_plus.size()
        << "  |Omega^-| = " << fs.omega_minus.size() << "\n"
        << "stabilizer orders: odd form " << u28.size() << ", even form "
        << u36.size() << ", nonzero vector " << u63.size() << "\n"
        << "transitive on Omega^+: " << (orb_plus.size() == 36 ? "yes" : "NO")
        << ", on Omega^-: " << (orb_minus.size() == 28 ? "yes" : "NO") << "\n";
    emit(j, json_mode, out.str());

    bool ok = table.size() == kSp6Order && fs.omega_plus.size() == 36 &&
              fs.omega_minus.size() == 28 && u28.size() == 51840 &&
              u36.size() == 40320 && u63.size() == 23040 &&
              orb_plus.size() == 36 && orb_minus.size() == 28;
    return ok ? 0 : 1;
}

int cmd_classify(const std::string& ambient, bool json_mode) {
    GroupTable table = generate_sp6();
    Subgroup amb;
    AmbientLabel label;
    if (ambient == "sp6") {
        amb.elements = table.elements;
        amb.generators = table.generators;
        label = AmbientLabel::kSp6;
    } else if (ambient == "u63") {
        amb = subgroup_from_elements(stabilizer_of_vector(table, F2Vec(1)));
        label = AmbientLabel::kU63;
    } else if (ambient == "u36") {
        amb = subgroup_from_elements(
            stabilizer_of_form(table, all_forms().omega_plus.front()));
        label = AmbientLabel::kU36;
    } else {
        std::cerr << "unknown ambient '" << ambient << "' (want sp6|u63|u36)\n";
        return 2;
    }
    Subgroup syl = sylow2(amb);
    std::vector<Subgroup> eas = enumerate_ea32(syl);
    std::vector<EAClass> classes =
        classify_up_to_conjugacy(eas, amb.generators, amb.order(), label);

    Json j;
    j["ambient"] = ambient;
    j["ambient_order"] = amb.order();
    j["sylow2_order"] = syl.order();
    j["ea32_in_sylow"] = eas.size();
    j["class_count"] = classes.size();
    Json cl = Json::array();
    std::ostringstream out;
    out << classes.size() << "\n";
    for (const EAClass& c : classes) {
        CondReport sm = check_star(c.representative, Parity::kOdd);
        CondReport sp = check_star(c.representative, Parity::kEven);
        Json e;
        Json gens = Json::array();
        for (const SpMat& g : c.representative.generators) gens.push_back(g.encode());
        e["generators"] = gens;
        e["orbit_size"] = c.orbit_size;
        e["normalizer_order"] = c.normalizer_order;
        e["star_minus"] = sm.pass;
        e["star_plus"] = sp.pass;
        cl.push_back(e);
        out << "  class: orbit " << c.orbit_size << ", normalizer "
            << c.normalizer_order << ", (*)^-: " << (sm.pass ? "pass" : "fail")
            << ", (*)^+: " << (sp.pass ? "pass" : "fail") << "\n";
    }
    j["classes"] = cl;
    emit(j, json_mode, out.str());
    return 0;
}

int cmd_search(std::int64_t bound, std::uint64_t seed, bool json_mode) {
    try {
        ParamTuple t = search_params(bound, seed);
        Json j;
        Json bs = Json::array();
        for (const Int& bi : t.b) bs.push_back(bi.get_str());
        j["b"] = bs;
        j["u"] = to_string(t.u);
        std::ostringstream out;
        out << "b =";
        for (const Int& bi : t.b) out << " " << bi.get_str();
        out << "\nu = " << to_string(t.u) << "\n";
        emit(j, json_mode, out.str());
        return 0;
    } catch (const PipelineError& e) {
        Json j;
        j["failure"] = {{"kind", failure_name(e.kind())}, {"message", e.what()}};
        emit(j, json_mode, std::string(e.what()) + "\n");
        return 1;
    }
}

int cmd_construct(const std::string& b_text, const std::string& u_text,
                  bool json_mode) {
    std::array<Int, 5> b = parse_b_list(b_text);
    ParamTuple params;
    params.b = b;
    params.u = (u_text == "auto") ? ParamTuple::default_u(b) : parse_rat(u_text);
    try {
        std::array<Rat, 5> a = params.derived_a();
        ConstructionInput in = make_input(a, params.u);
        BinForm f = build_F(in);
        auto [g, h] = solve_gh(f, in.c);
        SymMat3 m = assemble_M(g, h);
        TernForm quart = discriminant_quartic(m);
        bool smooth = is_smooth(quart);

        Json j;
        j["a6"] = to_string(in.a6);
        j["c"] = to_string(in.c);
        j["F"] = format_binform(f, "S", "T");
        j["g"] = format_binform(g, "S", "T");
        j["h"] = format_binform(h, "S", "T");
        j["quartic"] = format_ternform(quart);
        j["smooth"] = smooth;
        std::ostringstream out;
        out << "a6 = " << to_string(in.a6) << "\nc = " << to_string(in.c) << "\n"
            << "F = " << format_binform(f, "S", "T") << "\n"
            << "g = " << format_binform(g, "S", "T") << "\n"
            << "h = " << format_binform(h, "S", "T") << "\n"
            << "quartic = " << format_ternform(quart) << "\n"
            << "smooth: " << (smooth ? "yes" : "no") << "\n";

        Json fibers = Json::array();
        std::array<Rat, 6> roots{a[0], a[1], a[2], a[3], a[4], in.a6};
        for (int i = 0; smooth && i < 6; ++i) {
            FiberSplit fs = split_degenerate_fiber(m, roots[i], i + 1);
            Json jf;
            jf["index"] = fs.root_index;
            jf["root"] = to_string(fs.root);
            jf["delta"] = fs.delta.get_str();
            Json l1 = Json::array(), l2 = Json::array();
            for (int k = 0; k < 3; ++k) {
                l1.push_back(to_string(fs.line1[k]));
                l2.push_back(to_string(fs.line2[k]));
            }
            jf["line1"] = l1;
            jf["line2"] = l2;
            fibers.push_back(jf);
            out << "fiber " << fs.root_index << ": root = " << to_string(fs.root)
                << ", delta = " << fs.delta.get_str() << "\n"
                << "  line: (" << to_string(fs.line1[0]) << ") X + ("
                << to_string(fs.line1[1]) << ") Y + (" << to_string(fs.line1[2])
                << ") Z and its conjugate\n";
        }
        j["fibers"] = fibers;
        emit(j, json_mode, out.str());
        return smooth ? 0 : 1;
    } catch (const PipelineError& e) {
        Json j;
        j["failure"] = {{"kind", failure_name(e.kind())}, {"message", e.what()}};
        emit(j, json_mode, std::string(e.what()) + "\n");
        return 1;
    }
}

int cmd_certify(const std::string& b_text, const std::string& u_text,
                std::int64_t place_bound, const std::string& places_text,
                int retries, bool json_mode, const std::string& out_file) {
    std::array<Int, 5> b = parse_b_list(b_text);
    ParamTuple params;
    params.b = b;
    params.u = (u_text == "auto") ? ParamTuple::default_u(b) : parse_rat(u_text);
    std::vector<Int> extra_places;
    if (!places_text.empty()) {
        std::stringstream ss(places_text);
        std::string item;
        while (std::getline(ss, item, ',')) extra_places.emplace_back(item);
    }

    CertifyContext ctx = CertifyContext::build();
    std::vector<CertifyAttempt> attempts;
    Certificate cert = run_certify_with_retries(ctx, params, retries, attempts,
                                                place_bound, extra_places);
    Json j = certificate_json(cert);
    if (attempts.size() > 1) {
        Json a = Json::array();
        for (const CertifyAttempt& at : attempts)
            a.push_back({{"u", to_string(at.u)}, {"not_smooth", at.not_smooth}});
        j["retries"] = a;
    }
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        f << j.dump(2) << "\n";
    }

    std::ostringstream out;
    out << "b =";
    for (const Int& bi : cert.b) out << " " << bi.get_str();
    out << "\nu = " << to_string(cert.u) << "\n";
    if (attempts.size() > 1) {
        for (std::size_t i = 0; i + 1 < attempts.size(); ++i)
            out << "attempt with u = " << to_string(attempts[i].u)
                << ": not smooth, re-sampled u\n";
    }
    if (cert.failure) {
        out << "failure: " << failure_name(cert.failure->kind) << "\n"
            << "  " << cert.failure->message << "\n"
            << "  hint: " << cert.failure->retry_hint << "\n";
        emit(j, json_mode, out.str());
        return 1;
    }
    out << "a6 = " << to_string(cert.a6) << "\nc = " << to_string(cert.c) << "\n"
        << "g = " << format_binform(cert.g, "S", "T") << "\n"
        << "h = " << format_binform(cert.h, "S", "T") << "\n"
        << "quartic = " << format_ternform(cert.quartic) << "\n"
        << "smooth: yes\n"
        << "(*)^-: " << (cert.star_minus.pass ? "pass" : "fail")
        << "  (*)^+: " << (cert.star_plus.pass ? "pass" : "fail") << "\n"
        << "splitting field check: " << (cert.splitting_field_ok ? "pass" : "fail")
        << "\n";
    out << "places checked: " << cert.places.size() << ", all cyclic: ";
    bool all_cyc = true;
    for (const PlaceRecord& r : cert.places) all_cyc = all_cyc && r.cert.cyclic;
    out << (all_cyc ? "yes" : "NO") << "\n";
    for (const FiberRecord& r : cert.fibers)
        out << "fiber " << r.split.root_index << ": delta = "
            << r.split.delta.get_str() << ", bitangents: "
            << (r.line1_bitangent && r.line2_bitangent ? "verified" : "FAILED")
            << "\n";
    out << "verdicts: bitangent_hasse_failure = "
        << (cert.bitangent_hasse_failure ? "true" : "false")
        << ", sdr_hasse_failure = "
        << (cert.sdr_hasse_failure ? "true" : "false") << "\n";
    emit(j, json_mode, out.str());
    return cert.pass() ? 0 : 1;
}

int cmd_check_place(const std::string& b_text, const std::string& place_text,
                    bool json_mode) {
    std::array<Int, 5> b = parse_b_list(b_text);
    Place place = (place_text == "inf" || place_text == "infinity")
                      ? Place::infinity()
                      : Place::at(Int(place_text));
    PlaceCert pc = decomposition_generator(b, place);

    CertifyContext ctx = CertifyContext::build();
    GalVec gen = 0;
    for (GalVec v : pc.decomposition)
        if (v != 0) gen = v;
    int fixed_count = -1;
    int witness = -1;
    if (pc.cyclic) {
        SpMat img = ctx.map_galvec(gen);
        auto fixed = fixed_forms(img, Parity::kOdd);
        fixed_count = static_cast<int>(fixed.size());
        if (!fixed.empty()) witness = fixed.front().basis_vals;
    }

    Json j;
    j["place"] = pc.place.str();
    Json inert = Json::array();
    for (GalVec v : pc.inertia_gens) inert.push_back(v);
    j["inertia_generators"] = inert;
    j["frobenius"] = pc.frobenius;
    j["group_order"] = pc.decomposition.size();
    j["cyclic"] = pc.cyclic;
    j["generator"] = gen;
    j["fixed_odd_count"] = fixed_count;
    j["witness_odd_form"] = witness;

    std::ostringstream out;
    out << "place " << pc.place.str() << ": decomposition group order "
        << pc.decomposition.size() << (pc.cyclic ? " (cyclic)" : " (NOT cyclic)")
        << "\n";
    out << "generator = " << galvec_str(gen) << ", frobenius part = "
        << galvec_str(pc.frobenius) << "\n";
    if (pc.cyclic)
        out << "fixed odd forms of the image in E: " << fixed_count
            << " (witness basis values " << witness << ")\n";
    emit(j, json_mode, out.str());
    return pc.cyclic && fixed_count >= 1 ? 0 : 1;
}

int cmd_recheck(const std::string& file) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "cannot open " << file << "\n";
        return 2;
    }
    Json j = Json::parse(in, nullptr, true);
    std::string why;
    bool ok = recheck_verdicts(j, &why);
    if (ok)
        std::cout << "verdicts consistent with stored sections\n";
    else
        std::cout << "RECHECK FAILED: " << why << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"construct and certify plane quartics that violate the "
                 "local-global principle for bitangents"};
    app.require_subcommand(1);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "machine-readable output");

    auto* audit = app.add_subcommand("group-audit", "orders, form counts and "
                                                    "stabilizers of Sp_6(F_2)");

    std::string ambient = "sp6";
    auto* classify = app.add_subcommand(
        "classify-ea32", "conjugacy classes of (F_2)^5 subgroups");
    classify->add_option("--ambient", ambient, "sp6|u63|u36");

    std::int64_t bound = 2000;
    std::uint64_t seed = 1;
    auto* search = app.add_subcommand("search-params",
                                      "find a valid parameter tuple");
    search->add_option("--bound", bound, "upper bound for the primes");
    search->add_option("--seed", seed, "search order seed");

    std::string b_text, u_text = "auto";
    auto* construct = app.add_subcommand("construct",
                                         "run the conic-bundle construction");
    construct->add_option("--b", b_text, "comma-separated b_1..b_5")->required();
    construct->add_option("--u", u_text, "rational u or 'auto'");

    std::string cert_b, cert_u = "auto", out_file, cert_places;
    std::int64_t place_bound = 100;
    int retries = 0;
    auto* certify = app.add_subcommand("certify", "full certificate");
    certify->add_option("--b", cert_b, "comma-separated b_1..b_5")->required();
    certify->add_option("--u", cert_u, "rational u or 'auto'");
    certify->add_option("--place-bound", place_bound,
                        "check all primes up to this bound");
    certify->add_option("--places", cert_places,
                        "comma-separated extra primes to spot-check");
    certify->add_option("--retries", retries,
                        "re-sample u at most this many times on NotSmooth");
    certify->add_option("--out", out_file, "write the JSON certificate here");

    std::string chk_b, chk_p;
    auto* check_place = app.add_subcommand("check-place",
                                           "decomposition group at one place");
    check_place->add_option("--b", chk_b, "comma-separated b_1..b_5")->required();
    check_place->add_option("--p", chk_p, "prime, or 'inf'")->required();

    std::string recheck_file;
    auto* recheck = app.add_subcommand("recheck",
                                       "recompute verdicts of a stored "
                                       "certificate from its sections");
    recheck->add_option("file", recheck_file, "certificate JSON")->required();

    for (CLI::App* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors -> 2; --help stays 0
    }

    try {
        if (audit->parsed()) return cmd_group_audit(json_mode);
        if (classify->parsed()) return cmd_classify(ambient, json_mode);
        if (search->parsed()) return cmd_search(bound, seed, json_mode);
        if (construct->parsed()) return cmd_construct(b_text, u_text, json_mode);
        if (certify->parsed())
            return cmd_certify(cert_b, cert_u, place_bound, cert_places, retries,
                               json_mode, out_file);
        if (check_place->parsed()) return cmd_check_place(chk_b, chk_p, json_mode);
        if (recheck->parsed()) return cmd_recheck(recheck_file);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
