#include "om/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "om/serialize.hpp"

namespace om {

namespace {

Chain load_chain(const std::string& spec, unsigned long prime_flag) {
    if (spec == "gauss") {
        if (prime_flag == 0) throw math_error("--chain gauss requires -p/--prime");
        return Chain::gauss(Prime(prime_flag));
    }
    std::ifstream in(spec);
    if (!in) throw math_error("cannot open chain file '" + spec + "'");
    ordered_json j = ordered_json::parse(in, nullptr, true, true);
    Chain c = chain_from_json(j);
    if (prime_flag != 0 && c.prime().value() != prime_flag)
        throw math_error("chain file prime differs from -p");
    return c;
}

// Minimal embedded invariant suite; the full property suites live in the
// test tree. Exit 0 means every check passed.
bool selftest(std::ostream& out, std::uint64_t seed) {
    std::mt19937_64 rng(seed ? seed : 0x9e3779b97f4a7c15ull);
    int failures = 0;
    auto check = [&](bool ok, const std::string& name) {
        out << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    // Bezout ledger laws on random reduced vectors
    {
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            int k = 1 + static_cast<int>(rng() % 3);
            std::vector<Rat> u;
            bool nonzero = false;
            for (int j = 0; j < k; ++j) {
                long num = static_cast<long>(rng() % 21) - 10;
                long den = 1 + static_cast<long>(rng() % 12);
                Rat q = make_rat(num, den);
                if (q != 0) nonzero = true;
                u.push_back(q);
            }
            if (!nonzero) u[0] = make_rat(1, 2);
            LevelLedger lg = bezout_ledger(u);
            Rat lhs = Rat(lg.Lprime) + L_value(lg, u);
            ok = ok && lhs == make_rat(1, lg.e_level);
            for (int j = 0; j < k; ++j)
                ok = ok && lg.ell[static_cast<size_t>(j)] * lg.h[static_cast<size_t>(j)] *
                                   lg.eprime[static_cast<size_t>(j)] +
                               lg.ellprime[static_cast<size_t>(j)] * lg.e[static_cast<size_t>(j)] ==
                           lg.d[static_cast<size_t>(j)];
        }
        check(ok, "bezout ledger identities");
    }

    // hull under random clouds: vertices lie on the cloud, polygon below it
    {
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            int n = 2 + static_cast<int>(rng() % 8);
            std::vector<CloudPoint> pts;
            for (int s = 0; s < n; ++s) {
                if (rng() % 5 == 0) {
                    pts.push_back({Int(s), std::nullopt});
                    continue;
                }
                long num = static_cast<long>(rng() % 17) - 8;
                long den = 1 + static_cast<long>(rng() % 4);
                pts.push_back({Int(s), GroupVec(std::vector<Rat>{make_rat(num, den)})});
            }
            Cloud c(pts);
            if (!c.has_finite_point()) continue;
            Polygon h = lower_hull(c);
            for (const auto& pt : c.points()) {
                if (!pt.u) continue;
                // the hull evaluated at pt.s must be <= pt.u
                for (size_t i = 0; i + 1 < h.vertices().size(); ++i) {
                    const auto& a = h.vertices()[i];
                    const auto& b = h.vertices()[i + 1];
                    if (pt.s < a.s || pt.s > b.s) continue;
                    Rat t = Rat(pt.s - a.s) / Rat(b.s - a.s);
                    GroupVec on_line = a.u + (b.u - a.u) * t;
                    ok = ok && lex_cmp(on_line, *pt.u) != std::strong_ordering::greater;
                }
            }
        }
        check(ok, "lower hull dominates cloud");
    }

    // golden factorizations
    {
        struct Case {
            const char* poly;
            unsigned long p;
            std::vector<std::pair<long, long>> ef;
        };
        const Case cases[] = {
            {"x^2+x+1", 2, {{1, 2}}},
            {"x^2+1", 2, {{2, 1}}},
            {"x^2-2", 2, {{2, 1}}},
            {"x^4+1", 2, {{4, 1}}},
            {"x^4+1", 5, {{1, 2}, {1, 2}}},
        };
        bool ok = true;
        for (const auto& cs : cases) {
            OMTree t = om_factor(parse_poly(cs.poly), Prime(cs.p));
            ok = ok && certify(t) && t.leaves.size() == cs.ef.size();
            if (!ok) break;
            std::vector<std::pair<long, long>> got;
            for (const auto& lf : t.leaves) got.push_back({lf.e.get_si(), lf.fdeg});
            std::sort(got.begin(), got.end());
            auto want = cs.ef;
            std::sort(want.begin(), want.end());
            ok = ok && got == want;
        }
        check(ok, "factorizer golden cases");
    }

    // residual multiplicativity spot check at a depth-one chain
    {
        Chain c = Chain::gauss(Prime(2)).augment(parse_poly("x^2+x+1"), GroupVec::scalar(1, 1));
        bool ok = true;
        for (int trial = 0; trial < 25 && ok; ++trial) {
            auto rnd_poly = [&](int maxdeg) {
                std::vector<Rat> cf;
                int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(maxdeg));
                for (int i = 0; i <= d; ++i) cf.push_back(Rat(static_cast<long>(rng() % 19) - 9));
                return Poly(std::move(cf));
            };
            Poly g = rnd_poly(6), h = rnd_poly(6);
            if (g.is_zero() || h.is_zero()) continue;
            ResidualResult rg = residual(c, g), rh = residual(c, h), rgh = residual(c, g * h);
            ok = ok && rgh.s == rg.s + rh.s && rgh.u == rg.u + rh.u &&
                 rgh.poly == c.tower().pmul(rg.poly, rh.poly);
        }
        check(ok, "residual multiplicativity");
    }

    out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"inductive valuations, Newton polygons and OM factorization over Q_p"};
    app.require_subcommand(1);

    unsigned long prime_flag = 0;
    std::string chain_spec = "gauss";
    std::string format = "json";
    std::uint64_t seed = 0;
    int max_depth = 32;
    std::string poly_text;

    auto add_common = [&](CLI::App* sub, bool with_poly) {
        sub->add_option("-p,--prime", prime_flag, "residue characteristic");
        sub->add_option("--chain", chain_spec, "chain file or 'gauss'")->capture_default_str();
        sub->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        sub->add_option("--seed", seed, "PRNG seed for residual factor splitting");
        if (with_poly) sub->add_option("poly", poly_text, "polynomial over Q in x")->required();
    };

    CLI::App* sc_factor = app.add_subcommand("factor", "OM factorization over Q_p");
    add_common(sc_factor, true);
    sc_factor->add_option("--max-depth", max_depth, "maximum branch depth")->capture_default_str();

    CLI::App* sc_newton = app.add_subcommand("newton", "Newton polygon of a phi-expansion");
    add_common(sc_newton, true);

    CLI::App* sc_residual = app.add_subcommand("residual", "residual polynomial R(f)");
    add_common(sc_residual, true);

    CLI::App* sc_chain = app.add_subcommand("chain", "load, validate and re-emit a chain");
    add_common(sc_chain, false);
    sc_chain->add_option("poly", poly_text, "optional polynomial: report mu(poly)");

    CLI::App* sc_selftest = app.add_subcommand("selftest", "run the embedded invariant suite");
    sc_selftest->add_option("--seed", seed, "PRNG seed");

    std::vector<std::string> argv(args);
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (sc_factor->parsed()) {
            if (prime_flag == 0) throw math_error("factor requires -p/--prime");
            Poly f = parse_poly(poly_text);
            OMTree t = om_factor(f, Prime(prime_flag), max_depth, seed);
            if (format == "json") {
                out << tree_to_json(t).dump() << "\n";
            } else {
                out << "f = " << poly_str(f) << "  (p = " << prime_flag << ")\n";
                for (const auto& lf : t.leaves) {
                    out << "factor: e=" << lf.e.get_str() << " f=" << lf.fdeg << " depth=" << lf.depth
                        << " phi=" << poly_str(lf.phi_approx) << (lf.exact ? " (exact)" : "") << "\n";
                }
                out << (certify(t) ? "certified: sum e*f = deg f\n" : "NOT certified\n");
            }
            return 0;
        }
        if (sc_newton->parsed()) {
            Chain c = load_chain(chain_spec, prime_flag);
            Poly f = parse_poly(poly_text);
            Polygon n = c.newton(f);
            if (format == "json") out << polygon_to_json(n).dump() << "\n";
            else out << render_polygon(n);
            return 0;
        }
        if (sc_residual->parsed()) {
            Chain c = load_chain(chain_spec, prime_flag);
            Poly f = parse_poly(poly_text);
            ResidualResult rr = residual(c, f);
            if (format == "json") {
                out << residual_to_json(c, rr).dump() << "\n";
            } else {
                out << "s=" << rr.s.get_str() << " s'=" << rr.sprime.get_str() << " u=(";
                for (int i = 0; i < rr.u.dim(); ++i) out << (i ? "," : "") << rat_str(rr.u[i]);
                out << ") R=" << c.tower().poly_str(rr.poly) << "\n";
            }
            return 0;
        }
        if (sc_chain->parsed()) {
            Chain c = load_chain(chain_spec, prime_flag);
            ordered_json j = chain_to_json(c);
            if (!poly_text.empty()) {
                auto v = c.mu(parse_poly(poly_text));
                if (v) {
                    ordered_json m = ordered_json::array();
                    for (int i = 0; i < v->dim(); ++i) m.push_back(rat_str((*v)[i]));
                    j["mu"] = std::move(m);
                } else {
                    j["mu"] = "inf";
                }
            }
            if (format == "json") {
                out << j.dump() << "\n";
            } else {
                for (int i = 0; i <= c.depth(); ++i)
                    out << "level " << i << ": phi=" << poly_str(c.level(i).phi)
                        << " gamma=" << rat_str(c.level(i).gamma[0]) << " e=" << c.level(i).e().get_str()
                        << (c.level(i).f ? " f=" + std::to_string(*c.level(i).f) : "") << "\n";
                if (j.contains("mu")) out << "mu = " << j["mu"].dump() << "\n";
            }
            return 0;
        }
        if (sc_selftest->parsed()) return selftest(out, seed) ? 0 : 2;
    } catch (const math_error& e) {
        ordered_json j;
        j["error"] = e.what();
        out << j.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 1;
}

} // namespace om
