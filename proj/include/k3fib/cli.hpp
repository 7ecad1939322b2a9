#pragma once

#include "json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace k3fib::cli {

// exit codes
constexpr int ok_code = 0;
constexpr int check_failed = 1;
constexpr int usage_error = 2;

inline const char* config_env = "K3FIB_CONFIG";

struct UsageError : Error {
    explicit UsageError(const std::string& m) : Error(ErrorKind::invalid_argument, m) {}
};

// key=value lines, '#' comments
inline void apply_config(std::istream& in, num::NumericalConfig& cfg)
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            s.erase(0, s.find_first_not_of(ws));
            s.erase(s.find_last_not_of(ws) + 1);
            return s;
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        std::istringstream vs(val);
        vs.imbue(std::locale::classic());
        bool good = false;
        auto read_pos = [&](auto& field) {
            std::decay_t<decltype(field)> v{};
            good = static_cast<bool>(vs >> v) && vs.eof() && v > 0;
            if (good) field = v;
        };
        if (key == "residual_tolerance") read_pos(cfg.residual_tol);
        else if (key == "rank_tolerance") read_pos(cfg.rank_tol);
        else if (key == "fd_step") read_pos(cfg.fd_step);
        else if (key == "samples") read_pos(cfg.samples);
        else if (key == "seed") read_pos(cfg.seed);
        else throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (!good) throw UsageError("config line " + std::to_string(lineno) + ": bad value for " + key);
    }
}

inline void load_config_file(const std::string& path, num::NumericalConfig& cfg)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    apply_config(in, cfg);
}

inline Triple parse_triple(const std::vector<int>& v)
{
    if (v.size() != 3) throw UsageError("expected three integers p q r");
    for (int x : v)
        if (x < 2) throw UsageError("exponents must be >= 2");
    return Triple(v[0], v[1], v[2]);
}

inline io::json fibration_report(const num::FibrationParams& P, const num::NumericalConfig& cfg, bool& ok)
{
    using io::json;
    json j;
    j["params"] = {{"pqr", json::array({P.p, P.q, P.r})}, {"a", P.a}, {"theta", P.theta}, {"t", P.t},
                   {"M", P.M()}, {"m", P.m()}, {"samples", cfg.samples}, {"seed", cfg.seed},
                   {"precision_review", P.precision_review()}};

    auto crit = num::critical_points(P, cfg);
    json cps = json::array();
    int verified = 0;
    for (auto& c : crit) {
        verified += c.ok();
        cps.push_back({{"point", io::to_json(c.point)}, {"axis", c.axis}, {"residual", c.residual},
                       {"rank_ratio", c.rank_ratio}, {"ok", c.ok()}});
    }
    const int expected = P.p + P.q + P.r;
    j["critical_points"] = {{"expected", expected}, {"verified", verified}, {"points", cps}};
    bool crit_ok = verified == expected && static_cast<int>(crit.size()) == expected;

    json hs = json::array();
    bool hess_ok = true;
    for (auto& c : crit) {
        auto h = num::hessian_fd_check(P, c.point, cfg);
        hess_ok = hess_ok && h.ok;
        hs.push_back({{"axis", h.axis}, {"lambda", h.lambda}, {"relative_error", h.rel_error},
                      {"entry_error", h.entry_error}, {"gradient_ratio", h.grad_ratio}, {"ok", h.ok}});
    }
    j["hessian"] = hs;

    auto sa = num::symplectic_inequality_audit(P, cfg);
    j["symplectic"] = {{"samples", sa.samples}, {"in_transition", sa.in_transition}, {"min_margin", sa.min_margin},
                       {"min_coordinate_ratio", sa.min_coordinate_ratio}, {"violations", sa.violations.size()},
                       {"ok", sa.ok()}};

    bool lag_ok = true;
    if (P.t == 1) {
        auto lag = num::lagrangian_defect(P, num::torus_samples(P, 100, cfg.seed + 1, cfg));
        lag_ok = lag.samples > 0 && lag.max_defect < 1e-6;
        j["lagrangian"] = {{"samples", lag.samples}, {"max_defect", lag.max_defect}, {"mean_defect", lag.mean_defect},
                           {"ok", lag_ok}};
    } else {
        j["lagrangian"] = nullptr;
    }

    bool dom_ok = true;
    if (P.a > P.domain_bound()) {
        auto dy = num::domain_y_audit(P, 200, cfg.seed + 2, cfg);
        dom_ok = dy.ok();
        j["domain_y"] = {{"max_critical_value", dy.max_critical_value}, {"bound", dy.bound_a_2_over_M},
                         {"boundary_samples", dy.boundary_samples}, {"max_a_xyz", dy.max_xyz_times_a},
                         {"max_edge_distance", dy.max_edge_distance}, {"ok", dom_ok}};
    } else {
        j["domain_y"] = nullptr;
    }

    auto ms = num::milnor_sphere_audit(P, 100, cfg.seed + 3, cfg);
    j["milnor_sphere"] = {{"samples", ms.samples}, {"min_independence", ms.min_independence}, {"ok", ms.ok()}};

    ok = crit_ok && hess_ok && sa.ok() && lag_ok && dom_ok && ms.ok();
    j["ok"] = ok;
    return j;
}

// only the (2,3,7) pair glues to a unimodular lattice, and that one is 2E8+3H
inline bool k3_verdict_ok(const DualPair& pair, const GluedLattice& g)
{
    const bool e12 = pair.first == Triple(2, 3, 7) && pair.second == Triple(2, 3, 7);
    if (!e12) return !g.unimodular;
    return g.unimodular && g.sig.pos == 3 && g.sig.neg == 19 && g.sig.zero == 0 && g.par == Parity::even &&
           g.iso_2e8_3h.value_or(false);
}

inline io::json table_rows(bool& all_ok)
{
    using io::json;
    json rows = json::array();
    all_ok = true;
    for (auto& pair : strange_duality_table()) {
        auto rep = verify_duality(pair.first);
        auto glued = glued_lattice(pair);
        const int count = critical_count(pair);
        const bool dual_ok = rep.dual == pair.second.sorted();
        const bool row_ok = rep.ok() && dual_ok && count == 24 && glued.boundary_gluing && glued.boundary_gluing->verify() &&
                            k3_verdict_ok(pair, glued);
        all_ok = all_ok && row_ok;
        rows.push_back({{"labels", json::array({pair.label_first, pair.label_second})},
                        {"triple", io::to_json(pair.first)},
                        {"table_dual", io::to_json(pair.second)},
                        {"computed_dual", io::to_json(rep.dual)},
                        {"cycle", io::to_json(rep.cycle_d)},
                        {"dual_cycle", io::to_json(rep.cycle_c)},
                        {"alpha_v", rep.alpha_c.str()},
                        {"conjugate_to_inverse", glued.boundary_gluing.has_value()},
                        {"certificate", io::to_json(glued.boundary_gluing)},
                        {"critical_count", count},
                        {"glued_signature", io::to_json(glued.sig)},
                        {"glued_det", io::to_json(glued.det)},
                        {"ok", row_ok}});
    }
    return rows;
}

// argv without the program name
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"k3fib: cusp dualities and Lagrangian torus fibrations"};
    app.require_subcommand(1);
    bool as_json = false;
    std::optional<unsigned long long> seed;
    std::optional<int> samples;
    std::string tol_file;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--samples", samples, "sample count");
    app.add_option("--tolerance-file", tol_file, "key=value tolerance file");

    std::vector<int> dual_pqr, mono_pqr, lat_pqr, k3_pair, fib_pqr{2, 3, 7};
    std::string inose_case, generator = "T";
    double fib_t = 1, fib_theta = 0;
    std::optional<double> fib_a;

    auto* dual = app.add_subcommand("dual", "dual triple, cycles and alpha_V");
    dual->add_option("pqr", dual_pqr)->expected(3)->required();
    auto* mono = app.add_subcommand("monodromy", "link monodromy A_{p,q,r}");
    mono->add_option("pqr", mono_pqr)->expected(3)->required();
    auto* lat = app.add_subcommand("lattice", "Milnor lattice invariants");
    lat->add_option("pqr", lat_pqr)->expected(3)->required();
    lat->add_option("--generator", generator, "T, S or Sprime")->check(CLI::IsMember({"T", "S", "Sprime"}));
    auto* k3 = app.add_subcommand("k3", "glued K3 lattice of a dual pair");
    k3->add_option("--pair", k3_pair, "p,q,r of either member")->delimiter(',')->expected(3)->required();
    auto* inose = app.add_subcommand("inose", "boundary of an Inose disc");
    inose->add_option("--case", inose_case, "c1,c2,c3,c4")->required();
    auto* fib = app.add_subcommand("verify-fibration", "numerical checks of the torus fibration");
    fib->add_option("--pqr", fib_pqr)->delimiter(',')->expected(3);
    fib->add_option("--t", fib_t)->check(CLI::Range(0.0, 1.0));
    fib->add_option("--theta", fib_theta);
    fib->add_option("--a", fib_a, "override the minimal admissible a");
    auto* table = app.add_subcommand("table", "the strange duality table, recomputed");
    for (auto* s : {dual, mono, lat, k3, inose, fib, table}) s->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(std::move(rev));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok_code : usage_error;
    }

    auto emit = [&](const io::json& j) { out << j.dump(2) << "\n"; };

    try {
        num::NumericalConfig cfg;
        if (tol_file.empty())
            if (const char* env = std::getenv(config_env); env && *env) tol_file = env;
        if (!tol_file.empty()) load_config_file(tol_file, cfg);
        if (seed) cfg.seed = *seed;
        if (samples) {
            if (*samples <= 0) throw UsageError("--samples must be positive");
            cfg.samples = *samples;
        }

        if (dual->parsed()) {
            Triple t = parse_triple(dual_pqr);
            if (!t.cusp()) throw UsageError("not a cusp triple: 1/p+1/q+1/r must be < 1");
            auto rep = verify_duality(t);
            if (as_json) {
                emit(io::to_json(rep));
            } else {
                out << "triple      " << rep.triple.str() << "\n"
                    << "dual        " << rep.dual.str() << "\n"
                    << "cycle       " << rep.cycle_d.str() << "  dual cycle " << rep.cycle_c.str() << "\n"
                    << "omega       " << rep.omega_c.str() << "\n"
                    << "alpha_V     " << rep.alpha_c.str() << (rep.alpha_equal ? "" : "  (differs from dual: " + rep.alpha_d.str() + ")") << "\n"
                    << "A           " << rep.monodromy.str() << "\n"
                    << "A'          " << rep.dual_monodromy.str() << "\n"
                    << "action      " << rep.action_c.str() << "\n"
                    << "A ~ A'^-1   " << (rep.monodromy_vs_dual_inverse ? "yes, P = " + rep.monodromy_vs_dual_inverse->conjugator.str() : "no") << "\n"
                    << (rep.ok() ? "OK" : "FAILED") << "\n";
            }
            return rep.ok() ? ok_code : check_failed;
        }

        if (mono->parsed()) {
            Triple t = parse_triple(mono_pqr);
            SL2 a = monodromy_matrix(t);
            ConjClass cls = classify(a);
            io::json j = {{"triple", io::to_json(t)}, {"matrix", io::to_json(a)}, {"trace", io::to_json(a.trace())},
                          {"class", to_string(cls)}};
            if (cls == ConjClass::hyperbolic) j["rl_word"] = rl_word(a).str();
            if (as_json) emit(j);
            else
                out << "A" << t.str() << " = " << a.str() << "\ntrace " << a.trace().str() << ", " << to_string(cls)
                    << (j.contains("rl_word") ? ", " + j["rl_word"].get<std::string>() : std::string()) << "\n";
            return ok_code;
        }

        if (lat->parsed()) {
            Triple t = parse_triple(lat_pqr);
            GramLattice l;
            if (generator == "T") {
                l = t_lattice(t.p, t.q, t.r);
            } else {
                if (!is_cusp_or_parabolic(t.p, t.q, t.r)) throw UsageError("the Milnor lattice needs 1/p+1/q+1/r <= 1");
                l = t_tilde_lattice(t.p, t.q, t.r, generator == "S" ? Generator::S : Generator::Sprime);
            }
            Int det = discriminant(l);
            auto sig = signature(l);
            auto snf = smith_normal_form(l);
            bool law = true;
            if (generator == "T") {
                Int expect = Int(t.q * t.r + t.r * t.p + t.p * t.q - t.p * t.q * t.r);
                if ((t.p + t.q + t.r) % 2 == 1) expect = -expect;
                law = det == expect;
            }
            io::json factors = io::json::array();
            for (auto& f : snf.factors) factors.push_back(io::to_json(f));
            io::json rad = io::json::array();
            for (auto& v : radical(l)) {
                io::json vv = io::json::array();
                for (auto& x : v) vv.push_back(io::to_json(x));
                rad.push_back(vv);
            }
            io::json j = {{"triple", io::to_json(t)}, {"generator", generator}, {"lattice", io::to_json(l)},
                          {"rank", l.rank()}, {"det", io::to_json(det)}, {"signature", io::to_json(sig)},
                          {"parity", to_string(parity(l))}, {"smith_factors", factors}, {"radical", rad},
                          {"discriminant_law", law}};
            if (as_json) {
                emit(j);
            } else {
                out << "rank " << l.rank() << ", det " << det.str() << ", signature (" << sig.pos << "," << sig.zero << ","
                    << sig.neg << "), " << to_string(parity(l)) << "\nSmith factors " << factors.dump() << "\nradical "
                    << rad.dump() << "\n";
            }
            return law ? ok_code : check_failed;
        }

        if (k3->parsed()) {
            Triple t = parse_triple(k3_pair);
            auto pair = find_pair(t);
            if (!pair) throw UsageError(t.str() + " is not in the strange duality table");
            auto g = glued_lattice(*pair);
            const int count = critical_count(*pair);
            bool good = k3_verdict_ok(*pair, g) && g.boundary_gluing && g.boundary_gluing->verify() && count == 24;
            io::json j = io::to_json(g);
            j["pair"] = {io::to_json(pair->first), io::to_json(pair->second)};
            j["labels"] = {pair->label_first, pair->label_second};
            j["critical_count"] = count;
            j["ok"] = good;
            if (as_json) {
                emit(j);
            } else {
                out << pair->label_first << " " << pair->first.str() << " + " << pair->label_second << " " << pair->second.str()
                    << "\nrank " << g.lattice.rank() << ", det " << g.det.str() << ", signature (" << g.sig.pos << ","
                    << g.sig.neg << "), " << to_string(g.par) << ", 2E8+3H: "
                    << (g.iso_2e8_3h ? (*g.iso_2e8_3h ? "yes" : "no") : "n/a") << "\ncritical points " << count << "\n"
                    << (good ? "OK" : "FAILED") << "\n";
            }
            return good ? ok_code : check_failed;
        }

        if (inose->parsed()) {
            std::vector<int> c;
            std::stringstream ss(inose_case);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    std::size_t used = 0;
                    c.push_back(std::stoi(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::exception&) {
                    throw UsageError("bad --case entry '" + tok + "'");
                }
            }
            if (c.size() != 4) throw UsageError("--case needs four comma-separated counts");
            auto cls = classify_inose_boundary(InoseCase(c[0], c[1], c[2], c[3]));
            if (as_json) emit(io::to_json(cls));
            else
                out << "monodromy " << cls.monodromy.str() << ", trace " << cls.monodromy.trace().str() << "\nboundary "
                    << (cls.boundary ? io::boundary_name(*cls.boundary) : std::string("none")) << "\n";
            return cls.boundary ? ok_code : check_failed;
        }

        if (fib->parsed()) {
            if (fib_pqr.size() != 3) throw UsageError("--pqr needs p,q,r");
            auto P = num::FibrationParams::minimal(fib_pqr[0], fib_pqr[1], fib_pqr[2], fib_t, fib_theta);
            if (fib_a) P.a = *fib_a;
            if (!(P.a > P.tube_bound()))
                throw Error(ErrorKind::precondition, "a must exceed max{12M, m^2(m+3)}");
            bool good = false;
            auto j = fibration_report(P, cfg, good);
            if (as_json) {
                emit(j);
            } else {
                out << "a = " << std::setprecision(10) << P.a << ", t = " << P.t << "\n"
                    << "critical points " << j["critical_points"]["verified"] << "/" << j["critical_points"]["expected"] << "\n"
                    << "symplectic audit " << (j["symplectic"]["ok"].get<bool>() ? "pass" : "FAIL") << " on "
                    << j["symplectic"]["samples"] << " samples\n";
                if (!j["lagrangian"].is_null()) out << "lagrangian defect " << j["lagrangian"]["max_defect"] << "\n";
                out << (good ? "OK" : "FAILED") << "\n";
            }
            return good ? ok_code : check_failed;
        }

        if (table->parsed()) {
            bool good = false;
            auto rows = table_rows(good);
            if (as_json) {
                emit({{"rows", rows}, {"ok", good}});
            } else {
                out << std::left << std::setw(12) << "pair" << std::setw(18) << "triples" << std::setw(18) << "cycles"
                    << std::setw(20) << "alpha_V" << std::setw(9) << "A~A'^-1" << std::setw(5) << "24" << "det\n";
                for (auto& r : rows) {
                    auto tr = [](const io::json& t) { return "(" + std::to_string(t[0].get<int>()) + "," + std::to_string(t[1].get<int>()) + "," + std::to_string(t[2].get<int>()) + ")"; };
                    auto cy = [](const io::json& c) {
                        std::string s;
                        for (auto& x : c) s += (s.empty() ? "" : ",") + std::to_string(x.get<int>());
                        return "(" + s + ")";
                    };
                    out << std::setw(12) << (r["labels"][0].get<std::string>() + "/" + r["labels"][1].get<std::string>())
                        << std::setw(18) << (tr(r["triple"]) + tr(r["computed_dual"])) << std::setw(18)
                        << (cy(r["cycle"]) + " " + cy(r["dual_cycle"])) << std::setw(20) << r["alpha_v"].get<std::string>()
                        << std::setw(9) << (r["conjugate_to_inverse"].get<bool>() ? "yes" : "no") << std::setw(5)
                        << r["critical_count"].get<int>() << r["glued_det"].dump() << "\n";
                }
                out << (good ? "OK" : "FAILED") << "\n";
            }
            return good ? ok_code : check_failed;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::internal || e.kind() == ErrorKind::convergence) return check_failed;
        return usage_error;
    }
    return usage_error;
}

} // namespace k3fib::cli
