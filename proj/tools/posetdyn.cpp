#include "posetdyn/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace posetdyn;

namespace {

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json ppart_cmd(const std::string& mode, const std::string& spec, int ell, std::optional<int> excess)
{
    Poset P = load_poset(spec);
    if (excess) {
        auto p = setvalued_counts(P, ell, *excess);
        return {{"poly", poly_json(p)}, {"count", to_string(p[*excess])}, {"statistic", "excess"}};
    }
    IdealLattice L(P);
    IntPolynomial p = mode == "gf" ? ddeg_generating_function(L, ell) : size_generating_function(L, ell);
    return {{"poly", poly_json(p)}, {"count", to_string(p.sum_of_coeffs())}, {"statistic", mode == "gf" ? "ddeg" : "size"}};
}

json cde_cmd(const std::string& spec, const std::string& mode)
{
    Poset P = load_poset(spec);
    IdealLattice L(P);
    json out = {{"poset", spec}, {"mode", mode}, {"edge_density", to_string(edge_density(L))}};
    if (mode == "cde") {
        out["maxchain_expectation"] = to_string(expected_ddeg(L, maxchain_distribution(L)));
        out["holds"] = is_cde(L);
    } else if (mode == "mcde") {
        json per = json::array();
        for (int ell = 1; ell <= P.size() + 2; ++ell) per.push_back(to_string(mchain_expected_ddeg(L, ell)));
        out["mchain_expectations"] = per;
        out["holds"] = is_mcde(L);
    } else if (mode == "tcde") {
        Verdict v = check_tcde(P);
        out["holds"] = v.holds;
        out.update(v.values);
    } else {
        throw std::invalid_argument("mode must be cde, mcde or tcde");
    }
    return out;
}

json row_cmd(const std::string& spec, const std::string& level, const std::string& stats)
{
    Poset P = load_poset(spec);
    int ell = parse_level(level);
    bool toggles = stats.find("toggle") != std::string::npos;
    OrbitPartition part;
    std::vector<long long> dd;
    std::function<int(std::uint32_t, int)> tog;
    std::function<json(std::uint32_t)> show;
    std::optional<CombinatorialSystem> cs;
    std::optional<PPSystem> ps;
    if (ell == 0) {
        cs.emplace(P);
        part = cs->orbits();
        dd = cs->ddeg;
        tog = [&](std::uint32_t x, int p) { return cs->toggleability(x, p); };
        show = [&](std::uint32_t x) {
            json j = json::array();
            for_each_bit(cs->lattice[x], [&](int p) { j.push_back(P.label(p)); });
            return j;
        };
    } else {
        ps.emplace(P, ell);
        part = ps->orbits();
        dd = ps->ddeg;
        tog = [&](std::uint32_t x, int p) { return ps->toggleability(x, p); };
        show = [&](std::uint32_t x) {
            json j = json::object();
            for (int p = 0; p < P.size(); ++p) j[P.label(p)] = ps->space[x].values[p];
            return j;
        };
    }
    json orbits = json::array();
    for (auto& o : part.orbits) {
        long long sum = 0;
        std::vector<long long> ms;
        for (auto x : o) {
            sum += dd[x];
            ms.push_back(dd[x]);
        }
        std::sort(ms.begin(), ms.end());
        json r = {{"length", o.size()},
                  {"ddeg_sum", sum},
                  {"ddeg_average", to_string(Rational(sum, static_cast<long long>(o.size())))},
                  {"ddeg_multiset", ms},
                  {"representative", show(o.front())}};
        if (toggles) {
            json t = json::object();
            for (int p = 0; p < P.size(); ++p) {
                long long s = 0;
                for (auto x : o) s += tog(x, p);
                t[P.label(p)] = s;
            }
            r["toggle_sums"] = t;
        }
        orbits.push_back(r);
    }
    return {{"poset", spec}, {"level", level}, {"order", to_string(part.order())}, {"orbits", orbits}};
}

json csp_cmd(const std::string& spec, const std::string& level, const std::string& poly)
{
    if (poly != "auto") throw std::invalid_argument("only --poly auto is supported");
    int ell = parse_level(level);
    Verdict v = check_csp(parse_spec(spec), ell);
    json out = v.values;
    out["poset"] = spec;
    out["holds"] = v.holds;
    return out;
}

json birow_cmd(const std::string& mode, const std::string& spec, const std::string& alpha, const std::string& omega,
               int trials, std::uint64_t seed, std::optional<std::size_t> cap)
{
    Poset P = load_poset(spec);
    BirationalParams bp{parse_rational(alpha), parse_rational(omega)};
    if (bp.alpha <= 0 || bp.omega <= 0) throw std::invalid_argument("alpha and omega must be positive");
    std::size_t c = cap ? *cap : [&] {
        try {
            return 4 * static_cast<std::size_t>(coxeter_number(parse_spec(spec))) + 4;
        } catch (const std::exception&) {
            return 4 * static_cast<std::size_t>(P.size() + 1) + 4;
        }
    }();
    json out = {{"poset", spec}, {"alpha", to_string(bp.alpha)}, {"omega", to_string(bp.omega)},
                {"trials", trials}, {"seed", seed},               {"cap", c}};
    if (mode == "order") {
        auto rep = detect_order(P, trials, c, seed, bp);
        out["period"] = rep.order ? json(*rep.order) : json(nullptr);
        out["diagnosis"] = rep.diagnosis;
        json t = json::array();
        for (auto& o : rep.trials)
            t.push_back({{"labeling", labeling_json(o.seed)},
                         {"period", o.period ? json(*o.period) : json(nullptr)},
                         {"bits", o.bit_growth}});
        out["runs"] = t;
        return out;
    }
    if (mode != "homomesy") throw std::invalid_argument("mode must be order or homomesy");
    IdealLattice L(P);
    auto cert = tcde_solve(L);
    if (!cert) throw std::invalid_argument("no toggle certificate: J(P) is not tCDE");
    auto rep = birational_homomesy_check(P, *cert, trials, c, seed, bp);
    out["period"] = rep.order.order ? json(*rep.order.order) : json(nullptr);
    out["delta"] = to_string(cert->delta);
    out["exponent"] = homomesy_exponent(P, cert->delta);
    json prods = json::array();
    for (auto& p : rep.orbit_products) prods.push_back(to_string(p));
    out["orbit_products"] = prods;
    out["holds"] = rep.ok;
    if (!rep.ok) out["failure"] = rep.failure;
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"poset dynamics toolkit"};
    app.require_subcommand(1);

    std::string spec, level = "comb", mode, stats = "ddeg", poly = "auto", alpha = "1", omega = "1";
    int height = 1, trials = 3, jobs = 1;
    std::optional<int> excess;
    std::optional<std::size_t> cap;
    std::uint64_t seed = 1;

    auto* pp = app.add_subcommand("ppart", "count or generate P-partitions");
    std::string pp_mode;
    pp->add_option("mode", pp_mode, "count or gf")->required()->check(CLI::IsMember({"count", "gf"}));
    pp->add_option("--poset", spec)->required();
    pp->add_option("--height", height)->required()->check(CLI::PositiveNumber);
    pp->add_option("--excess", excess);

    auto* cde = app.add_subcommand("cde", "down-degree expectation checks");
    std::string cde_action;
    cde->add_option("action", cde_action)->required()->check(CLI::IsMember({"check"}));
    cde->add_option("--poset", spec)->required();
    cde->add_option("--mode", mode)->default_val("tcde")->check(CLI::IsMember({"cde", "mcde", "tcde"}));

    auto* row = app.add_subcommand("row", "rowmotion orbits");
    std::string row_action;
    row->add_option("action", row_action)->required()->check(CLI::IsMember({"orbits"}));
    row->add_option("--poset", spec)->required();
    row->add_option("--level", level);
    row->add_option("--stats", stats);

    auto* csp = app.add_subcommand("csp", "cyclic sieving check");
    csp->add_option("--poset", spec)->required();
    csp->add_option("--level", level);
    csp->add_option("--poly", poly);

    auto* birow = app.add_subcommand("birow", "birational rowmotion");
    std::string bi_mode;
    birow->add_option("mode", bi_mode)->required()->check(CLI::IsMember({"order", "homomesy"}));
    birow->add_option("--poset", spec)->required();
    birow->add_option("--alpha", alpha);
    birow->add_option("--omega", omega);
    birow->add_option("--trials", trials)->check(CLI::PositiveNumber);
    birow->add_option("--seed", seed);
    birow->add_option("--cap", cap);

    auto* poset = app.add_subcommand("poset", "print a poset as JSON");
    poset->add_option("--poset", spec)->required();

    auto* campaign = app.add_subcommand("campaign", "verification campaigns");
    campaign->require_subcommand(1);
    auto* run = campaign->add_subcommand("run", "run a suite");
    std::string suite = "paper-desk-scale", out_path, report_path;
    bool timing = false, quiet = false;
    run->add_option("--suite", suite);
    run->add_option("--out", out_path)->required();
    run->add_option("--seed", seed);
    run->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    run->add_flag("--timing", timing, "record per-step wall time");
    run->add_flag("--quiet", quiet);
    auto* verify = campaign->add_subcommand("verify", "recheck a report");
    verify->add_option("report", report_path)->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*pp) emit(ppart_cmd(pp_mode, spec, height, excess));
        else if (*cde) emit(cde_cmd(spec, mode));
        else if (*row) emit(row_cmd(spec, level, stats));
        else if (*csp) emit(csp_cmd(spec, level, poly));
        else if (*birow) emit(birow_cmd(bi_mode, spec, alpha, omega, trials, seed, cap));
        else if (*poset) {
            Poset P = load_poset(spec);
            json j = poset_to_json(P);
            j["rank"] = P.rank();
            j["ideals"] = IdealLattice(P).size();
            emit(j);
        } else if (*run) {
            std::ofstream out(out_path);
            if (!out) throw std::runtime_error("cannot open " + out_path);
            bool ok = run_campaign(suite, seed, jobs, out, timing, quiet ? nullptr : &std::cerr);
            std::cerr << (ok ? "campaign passed" : "campaign FAILED") << "\n";
            return ok ? 0 : 1;
        } else if (*verify) {
            std::ifstream in(report_path);
            auto s = verify_report(in);
            emit({{"records", s.records}, {"consistent", s.consistent}, {"passing", s.passing},
                  {"problems", s.problems}, {"ok", s.ok()}});
            return s.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
