// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criterion 3 also drives the CLI binary (path in argv[1])
// and compares its printed quartic byte for byte with the golden file.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qlg/certificate.hpp"

using namespace qlg;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail, double secs,
            double budget) {
    bool in_budget = secs <= budget;
    if (!pass || !in_budget) ++g_failures;
    std::printf("criterion %d: %s (%.1fs of %.0fs budget)%s%s\n", criterion,
                pass && in_budget ? "PASS" : "FAIL", secs, budget,
                detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
}

std::string read_line(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) return "<missing file " + path + ">";
    std::string line;
    std::getline(in, line);
    return line;
}

Rat random_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-30, 30);
    std::uniform_int_distribution<long> den(1, 7);
    long n = 0;
    while (n == 0) n = num(rng);
    Rat r(n, den(rng));
    r.canonicalize();
    return r;
}

std::string run_cli(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    pclose(pipe);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::string fixtures = QLG_FIXTURES_DIR "/paper-example/";
    const std::array<Int, 5> worked_b{Int(-1), Int(17), Int(89), Int(257),
                                     Int(769)};

    // ---- criterion 1: group facts, <= 60 s ----
    Clock::time_point t0 = Clock::now();
    GroupTable table;
    {
        bool ok = true;
        std::string detail;
        table = generate_sp6();
        FormSet fs = all_forms();
        ok &= table.size() == 1451520;
        ok &= fs.omega_plus.size() == 36 && fs.omega_minus.size() == 28;
        std::size_t s28 = stabilizer_of_form(table, fs.omega_minus.front()).size();
        std::size_t s36 = stabilizer_of_form(table, fs.omega_plus.front()).size();
        std::size_t s63 = stabilizer_of_vector(table, 1).size();
        ok &= s28 == 51840 && s36 == 40320 && s63 == 23040;
        std::size_t orbm = form_orbit(table.generators, fs.omega_minus.front()).size();
        std::size_t orbp = form_orbit(table.generators, fs.omega_plus.front()).size();
        ok &= orbm == 28 && orbp == 36;
        std::ostringstream d;
        d << "|G|=" << table.size() << " stab=" << s28 << "/" << s36 << "/" << s63
          << " orbits=" << orbp << "/" << orbm;
        report(1, ok, d.str(), std::chrono::duration<double>(Clock::now() - t0).count(),
               60.0);
    }

    // ---- criterion 2: elementary abelian classification, <= 15 min ----
    t0 = Clock::now();
    {
        Subgroup full;
        full.elements = table.elements;
        full.generators = table.generators;
        std::vector<EAClass> sp6_classes = classify_up_to_conjugacy(
            enumerate_ea32(sylow2(full)), full.generators, full.order(),
            AmbientLabel::kSp6);
        bool stars = true;
        for (const EAClass& cls : sp6_classes) {
            stars &= check_star(cls.representative, Parity::kOdd).pass;
            stars &= check_star(cls.representative, Parity::kEven).pass;
        }
        Subgroup u63 = subgroup_from_elements(stabilizer_of_vector(table, 1));
        std::vector<EAClass> u63_classes = classify_up_to_conjugacy(
            enumerate_ea32(sylow2(u63)), u63.generators, u63.order(),
            AmbientLabel::kU63);
        Subgroup u36 = subgroup_from_elements(
            stabilizer_of_form(table, all_forms().omega_plus.front()));
        std::size_t u36_count = enumerate_ea32(sylow2(u36)).size();

        bool ok = sp6_classes.size() == 6 && u63_classes.size() == 13 &&
                  u36_count == 0 && stars;
        std::ostringstream d;
        d << "classes sp6=" << sp6_classes.size() << " u63=" << u63_classes.size()
          << " u36=" << u36_count << " all-6-pass-both=" << (stars ? "yes" : "no");
        report(2, ok, d.str(), std::chrono::duration<double>(Clock::now() - t0).count(),
               900.0);
    }

    // ---- criterion 3: worked-example regression, byte-exact, <= 10 s ----
    t0 = Clock::now();
    {
        std::array<Rat, 5> a{Rat(-769), Rat(4369), Rat(89), Rat(257), Rat(769)};
        ConstructionInput in = make_input(a, Rat(-1) / Rat(197633));
        bool ok = in.a6 == Rat(-1513);
        BinForm f = build_F(in);
        auto [g, h] = solve_gh(f, in.c);
        ok &= format_binform(g, "S", "T") == read_line(fixtures + "g.txt");
        ok &= format_binform(h, "S", "T") == read_line(fixtures + "h.txt");
        BinForm g8 = g * Rat(8), h64 = h * Rat(-64);
        ok &= g8.c[0] == 2392149832 && g8.c[1] == 35008837 && g8.c[2] == 12804;
        ok &= h64.c[0] == Rat(Int("251582881045706064")) &&
              h64.c[1] == Rat(Int("1084638148302617")) &&
              h64.c[2] == Rat(Int("594847875240"));
        TernForm quart = discriminant_quartic(assemble_M(g, h));
        std::string golden = read_line(fixtures + "quartic.txt");
        ok &= format_ternform(quart) == golden;
        const std::pair<Mono3, const char*> coeffs[12] = {
            {{4, 0, 0}, "4096"},
            {{3, 1, 0}, "-16384"},
            {{3, 0, 1}, "-9869943810048"},
            {{2, 1, 1}, "143396196352"},
            {{1, 2, 1}, "-52445184"},
            {{0, 3, 1}, "-32768"},
            {{2, 0, 2}, "64826445425191482752"},
            {{1, 1, 2}, "-277686962456893696"},
            {{0, 2, 2}, "152281056061440"},
            {{1, 0, 3}, "-917870567374331469445024"},
            {{0, 1, 3}, "128810435095401504768"},
            {{0, 0, 4}, "577825743806146102974275227249"}};
        for (const auto& [m, text] : coeffs)
            ok &= quart.coeff(m[0], m[1], m[2]) == Rat(Int(text));
        ok &= quart.terms.size() == 12;
        ok &= is_smooth(quart);
        ok &= quart.eval(0, 1, 0) == 0;
        report(3, ok, "a6/g/h/quartic exact; smooth; [0:1:0] on curve",
               std::chrono::duration<double>(Clock::now() - t0).count(), 10.0);

        // CLI golden check (the certify subcommand prints the quartic
        // byte-identically in canonical term order); separate line since
        // the subprocess rebuilds the group context
        if (!cli.empty()) {
            Clock::time_point t1 = Clock::now();
            std::string out =
                run_cli(cli + " certify --b -1,17,89,257,769 --u auto 2>/dev/null");
            bool cli_ok = out.find("quartic = " + golden + "\n") != std::string::npos;
            if (!cli_ok) ++g_failures;
            std::printf("cli golden: %s (%.1fs) - quartic line %s\n",
                        cli_ok ? "PASS" : "FAIL",
                        std::chrono::duration<double>(Clock::now() - t1).count(),
                        cli_ok ? "byte-identical" : "MISMATCH");
            std::fflush(stdout);
        }
    }

    // ---- criterion 4: arithmetic certificate, <= 1 s ----
    t0 = Clock::now();
    {
        bool ok = validate_params(worked_b).pass;
        for (const Int& p :
             {Int(2), Int(17), Int(89), Int(257), Int(769)})
            ok &= decomposition_generator(worked_b, Place::at(p)).cyclic;
        ok &= decomposition_generator(worked_b, Place::infinity()).cyclic;
        for (long p = 2; p <= 100; ++p)
            if (is_prime_u64(p))
                ok &= decomposition_generator(worked_b, Place::at(p)).cyclic;

        ValidationReport bad5 =
            validate_params({Int(-1), Int(5), Int(89), Int(257), Int(769)});
        bool found5 = false;
        for (const std::string& s : bad5.failures)
            if (s.find("place 2") != std::string::npos &&
                s.find("mod 8") != std::string::npos)
                found5 = true;
        ok &= !bad5.pass && found5;

        ValidationReport bad3 =
            validate_params({Int(-1), Int(3), Int(89), Int(257), Int(769)});
        bool found3 = false;
        for (const std::string& s : bad3.failures)
            if (s.find("sqrt(3)") != std::string::npos) found3 = true;
        ok &= !bad3.pass && found3;

        report(4, ok, "worked tuple cyclic everywhere; perturbed tuples rejected",
               std::chrono::duration<double>(Clock::now() - t0).count(), 1.0);
    }

    // ---- criterion 5: property suites ----
    t0 = Clock::now();
    {
        bool ok = true;
        // det M = -F and F(1,0) = c^2 on 100 random valid tuples
        std::mt19937_64 rng(424242);
        int done = 0;
        while (done < 100) {
            std::array<Rat, 5> a;
            for (Rat& x : a) x = random_rat(rng);
            ConstructionInput in;
            try {
                in = make_input(a, random_rat(rng));
            } catch (const PipelineError&) {
                continue;
            }
            BinForm f = build_F(in);
            ok &= f.eval(1, 0) == in.c * in.c;
            auto [g, h] = solve_gh(f, in.c);
            ok &= det3(assemble_M(g, h)) == -f;
            ++done;
        }
        // Arf and polar-form preservation for 1000 sampled elements x 64 forms
        std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
        for (int trial = 0; trial < 1000 && ok; ++trial) {
            const SpMat& m = table.elements[pick(rng)];
            for (int bv = 0; bv < 64; ++bv) {
                QuadForm q{static_cast<std::uint8_t>(bv)};
                QuadForm mq = act(m, q);
                ok &= mq.arf() == q.arf();
                for (int x = 0; x < 64; x += 5)
                    for (int y = 0; y < 64; y += 7)
                        ok &= ((mq.eval(x ^ y) ^ mq.eval(x) ^ mq.eval(y)) ==
                               pairing(F2Vec(x), F2Vec(y)));
            }
        }
        // transvection fixed-point law, exhaustive 63 x 64
        for (int v = 1; v < 64 && ok; ++v) {
            SpMat t = transvection(F2Vec(v));
            for (int bv = 0; bv < 64; ++bv) {
                QuadForm q{static_cast<std::uint8_t>(bv)};
                ok &= fixes_form(t, q) == (q.eval(F2Vec(v)) == 1);
            }
        }
        // the 12 fiber lines of the worked example, and nonsquare deltas
        std::array<Rat, 5> a{Rat(-769), Rat(4369), Rat(89), Rat(257), Rat(769)};
        ConstructionInput in = make_input(a, Rat(-1) / Rat(197633));
        auto [g, h] = solve_gh(build_F(in), in.c);
        SymMat3 m = assemble_M(g, h);
        TernForm quart = discriminant_quartic(m);
        std::array<Rat, 6> roots{a[0], a[1], a[2], a[3], a[4], in.a6};
        for (int i = 0; i < 6; ++i) {
            FiberSplit fsp = split_degenerate_fiber(m, roots[i], i + 1);
            ok &= !is_square_int(fsp.delta);
            ok &= verify_bitangent(quart, fsp.line1);
            ok &= verify_bitangent(quart, fsp.line2);
        }
        report(5, ok,
               "detM=-F x100; arf/polar x1000; transvection law 63x64; 12 "
               "bitangents; deltas nonsquare",
               std::chrono::duration<double>(Clock::now() - t0).count(), 300.0);
    }

    // ---- criterion 6: end-to-end search + certify, <= 5 min ----
    t0 = Clock::now();
    {
        bool ok = true;
        std::string note;
        ParamTuple fresh = search_params(2000, 20260810);
        ok &= validate_params(fresh.b).pass;
        ok &= fresh.b != worked_b;
        CertifyContext ctx;
        ctx.table = table;
        ctx.e = pick_certified_E(ctx.table);
        ctx.star_minus = check_star(ctx.e, Parity::kOdd);
        ctx.star_plus = check_star(ctx.e, Parity::kEven);
        std::vector<CertifyAttempt> log;
        Certificate cert = run_certify_with_retries(ctx, fresh, 3, log, 100);
        if (cert.pass()) {
            std::ostringstream n;
            n << "tuple (" << fresh.b[0].get_str();
            for (int i = 1; i < 5; ++i) n << "," << fresh.b[i].get_str();
            n << ") certified after " << log.size() << " attempt(s)";
            note = n.str();
        } else if (cert.failure &&
                   cert.failure->kind == FailureKind::kNotSmooth) {
            note = "NotSmooth persisted through retries (structured, no loop)";
            ok = false;
        } else {
            note = std::string("unexpected failure: ") +
                   (cert.failure ? cert.failure->message : "verdict false");
            ok = false;
        }
        report(6, ok, note,
               std::chrono::duration<double>(Clock::now() - t0).count(), 300.0);
    }

    // ---- criterion 7: documented exclusion ----
    {
        // The full subgroup-lattice counts (296/1916/35/548/536) are out of
        // scope by design; the condition checker is validated on supplied
        // subgroups by criterion 2 and the brute-force cross-check in the
        // unit suite.
        report(7, true, "subgroup-lattice census excluded by scope", 0.0, 1.0);
    }

    std::printf(g_failures == 0 ? "ACCEPTANCE: all criteria passed\n"
                                : "ACCEPTANCE: %d criterion(s) FAILED\n",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
