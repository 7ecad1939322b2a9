// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include <k3fib/cuspdual.hpp>
#include <k3fib/k3glue.hpp>
#include <k3fib/milnorfiber.hpp>
#include <k3fib/numcheck.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace k3fib;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int failures = 0;

void report(int n, const std::string& name, const std::function<bool(std::string&)>& body)
{
    std::string detail;
    bool ok = false;
    auto t0 = Clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double ms = ms_since(t0);
    if (!ok) ++failures;
    std::printf("%s %2d: %-28s %s [%.1f ms]\n", ok ? "PASS" : "FAIL", n, name.c_str(), detail.c_str(), ms);
    std::fflush(stdout);
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

} // namespace

int main()
{
    report(1, "monodromy exactness", [](std::string& d) {
        auto t0 = Clock::now();
        SL2 a = monodromy_matrix(2, 3, 7);
        double ms = ms_since(t0);
        d = a.str() + fmt(", %.4f ms", ms);
        return a == SL2(5, -11, 1, -2) && ms < 1.0;
    });

    report(2, "boundary gluing sweep", [](std::string& d) {
        auto t0 = Clock::now();
        int good = 0;
        for (auto& p : strange_duality_table()) {
            auto c = is_conjugate_to_inverse(monodromy_matrix(p.first), monodromy_matrix(p.second));
            if (c && c->verify() && c->conjugator * c->source * c->conjugator.inverse() == c->target) ++good;
        }
        double ms = ms_since(t0);
        d = std::to_string(good) + "/10 certified" + fmt(", %.2f ms", ms);
        return good == 10 && ms < 1000;
    });

    report(3, "24 critical points", [](std::string& d) {
        int good = 0;
        for (auto& p : strange_duality_table()) good += critical_count(p) == 24;
        d = std::to_string(good) + "/10";
        return good == 10;
    });

    report(4, "discriminant law", [](std::string& d) {
        int checked = 0, bad = 0;
        for (int p = 2; p <= 12; ++p)
            for (int q = p; q <= 12; ++q)
                for (int r = q; r <= 12; ++r) {
                    Int v = Int(q * r + r * p + p * q - p * q * r);
                    if ((p + q + r - 2) % 2) v = -v;
                    ++checked;
                    bad += discriminant(t_lattice(p, q, r)) != v;
                }
        int unimodular = 0;
        bool only237 = true;
        for (int p = 2; p <= 20; ++p)
            for (int q = p; q <= 20; ++q)
                for (int r = q; r <= 20; ++r)
                    if (is_cusp(p, q, r) && abs(discriminant(t_lattice(p, q, r))) == 1) {
                        ++unimodular;
                        only237 = only237 && p == 2 && q == 3 && r == 7;
                    }
        d = std::to_string(checked) + " triples, " + std::to_string(bad) + " mismatches, " + std::to_string(unimodular) +
            " unimodular cusp triples up to 20";
        return bad == 0 && unimodular == 1 && only237;
    });

    report(5, "lattice identification", [](std::string& d) {
        auto h = hyperbolic_plane();
        auto e8 = e_lattice(8);
        bool a = unimodular_indefinite_isomorphic(t_lattice(2, 3, 7), direct_sum(e8, h));
        bool b = unimodular_indefinite_isomorphic(direct_sum({t_lattice(2, 3, 7), t_lattice(2, 3, 7), h}),
                                                  direct_sum({e8, e8, h, h, h}));
        auto g = glued_lattice(*find_pair(Triple(2, 3, 7)));
        bool c = g.iso_2e8_3h && *g.iso_2e8_3h;
        d = std::string("T ~ E8+H ") + (a ? "yes" : "no") + ", glued ~ 2E8+3H " + (b && c ? "yes" : "no");
        return a && b && c;
    });

    report(6, "duality example", [](std::string& d) {
        bool c1 = triple_to_cycle(2, 3, 8) == CycleData({4});
        bool c2 = cf_value(CycleData({4})) == QuadIrrational(2, 1, 1, 3);
        bool c3 = cf_value(CycleData({3, 2})) == QuadIrrational(3, 1, 2, 3);
        bool c4 = alpha_v(CycleData({3, 2})) == QuadIrrational(2, 1, 1, 3);
        bool c5 = dual_triple(Triple(2, 3, 8)) == Triple(2, 4, 5);
        d = "alpha_V = " + alpha_v(CycleData({3, 2})).str() + ", dual " + dual_triple(Triple(2, 3, 8)).str();
        return c1 && c2 && c3 && c4 && c5;
    });

    report(7, "module action", [](std::string& d) {
        SL2 m = module_action_matrix(CycleData({3, 2}));
        auto cert = is_conjugate(m, monodromy_matrix(2, 3, 8));
        d = m.str() + (cert ? ", P = " + cert->conjugator.str() : ", no conjugator");
        return cert && cert->verify();
    });

    report(8, "monodromy isometry", [](std::string& d) {
        int n = 0, bad = 0;
        for (int p = 2; p <= 10; ++p)
            for (int q = p; q <= 10; ++q)
                for (int r = q; r <= 10; ++r) {
                    if (!is_cusp(p, q, r)) continue;
                    ++n;
                    IntMatrix mu = monodromy_action(p, q, r);
                    auto s = surface_system(p, q, r, Generator::Sprime);
                    const IntMatrix& g = s.lattice.gram;
                    auto t2 = s.unit(s.t2_index);
                    std::vector<Int> img(mu.rows());
                    for (std::size_t i = 0; i < mu.rows(); ++i)
                        for (std::size_t j = 0; j < mu.cols(); ++j) img[i] += mu(i, j) * t2[j];
                    if (!(mu.transpose() * g * mu == g) || img != t2) ++bad;
                }
        d = std::to_string(n) + " cusp triples, " + std::to_string(bad) + " failures";
        return bad == 0 && n > 0;
    });

    report(9, "Inose classification", [](std::string& d) {
        auto t0 = Clock::now();
        const int traces[] = {3, 7, 4, 4};
        bool ok = true;
        std::string found;
        auto cases = inose_reference_cases();
        for (std::size_t i = 0; i < cases.size(); ++i) {
            auto c = classify_inose_boundary(cases[i].first);
            ok = ok && c.boundary && *c.boundary == cases[i].second && c.monodromy.trace() == traces[i] && c.certificate &&
                 c.certificate->verify();
            found += (found.empty() ? "" : " ") + (c.boundary ? c.boundary->str() : std::string("none"));
        }
        double ms = ms_since(t0);
        d = found + fmt(", %.2f ms", ms);
        return ok && ms < 100;
    });

    report(10, "torus relation", [](std::string& d) {
        SL2 ba = dehn_twist(class_beta()) * dehn_twist(class_alpha());
        bool ok = true;
        for (int n = 1; n <= 4; ++n) ok = ok && ba.pow(6 * n).is_identity();
        d = "n = 1..4";
        return ok;
    });

    report(11, "numerical fibration", [](std::string& d) {
        auto t0 = Clock::now();
        auto P = num::FibrationParams::minimal(2, 3, 7, 1.0, 0.0);
        num::NumericalConfig cfg;
        cfg.samples = 1000;
        auto cps = num::critical_points(P, cfg);
        int verified = 0;
        double worst_res = 0, worst_rank = 0;
        for (auto& c : cps) {
            verified += c.residual < 1e-9 && c.rank_ratio < 1e-6;
            worst_res = std::max(worst_res, c.residual);
            worst_rank = std::max(worst_rank, c.rank_ratio);
        }
        int hess = 0;
        bool lambda_ok = true;
        for (auto& c : cps) {
            auto h = num::hessian_fd_check(P, c.point, cfg);
            hess += h.ok && h.rel_error < 1e-3;
            if (h.axis == 0) lambda_ok = lambda_ok && std::abs(h.lambda - std::sqrt(P.a)) < 1e-9 * std::sqrt(P.a);
        }
        auto sym = num::symplectic_inequality_audit(P, cfg);
        auto lag = num::lagrangian_defect(P, num::torus_samples(P, 100, cfg.seed, cfg));
        double ms = ms_since(t0);
        d = "a = " + std::to_string(static_cast<long long>(P.a)) + ", " + std::to_string(verified) + "/" +
            std::to_string(cps.size()) + fmt(" critical (residual %.1e", worst_res) +
            fmt(", rank %.1e), hessian ", worst_rank) + std::to_string(hess) + "/12, symplectic " +
            std::to_string(sym.samples) + (sym.ok() ? " ok" : " FAIL") + fmt(", defect %.1e", lag.max_defect);
        return cps.size() == 12 && verified == 12 && hess == 12 && lambda_ok && sym.ok() && sym.samples == 1000 &&
               lag.samples > 0 && lag.max_defect < 1e-6 && ms < 30000;
    });

    report(12, "negative controls", [](std::string& d) {
        auto P = num::FibrationParams::minimal(2, 3, 7);
        int rejected = 0, total = 0;
        for (auto& [pt, axis] : num::critical_points_closed_form(P)) {
            num::C3Point decoy = pt;
            decoy[axis] *= 1.0 + 1e-3;
            decoy[(axis + 1) % 3] += 1e-3 * pt.norm();
            ++total;
            rejected += !num::verify_critical_point(P, decoy).ok();
        }
        auto P0 = P;
        P0.t = 0;
        auto d0 = num::lagrangian_defect(P0, num::axis_samples(P0, 1, 100, 5));
        auto d1 = num::lagrangian_defect(P, num::axis_samples(P, 1, 100, 5));
        bool holo = d0.samples > 0 && d0.max_defect > 1e-12 && d0.max_defect > 1e3 * d1.max_defect;
        Int tr = inose_monodromy(InoseCase(0, 2, 0, 2), HomologyClass(1, 1)).trace();
        d = std::to_string(rejected) + "/" + std::to_string(total) + " decoys rejected" + fmt(", t=0 defect %.1e", d0.max_defect) +
            fmt(" vs %.1e", d1.max_defect) + ", gamma=(1,1) trace " + tr.str();
        return rejected == total && holo && tr != 7;
    });

    std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "ALL CRITERIA PASS");
    return failures ? 1 : 0;
}
