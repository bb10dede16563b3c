#include "s2kg/cli/verify.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>

#include "s2kg/geom/curvature.hpp"
#include "s2kg/liesym/algebra.hpp"
#include "s2kg/liesym/symmetry.hpp"
#include "s2kg/noether/export.hpp"
#include "s2kg/symcore/parse.hpp"

namespace s2kg::cli {

using sym::Expr;
using sym::ZeroVerdict;

namespace {

class Timer {
public:
    explicit Timer(Report& r) : r_(r), start_(std::chrono::steady_clock::now()) {}
    ~Timer() { r_.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    Report& r_;
    std::chrono::steady_clock::time_point start_;
};

Status zero_status(const sym::ZeroReport& z) {
    switch (z.verdict) {
        case ZeroVerdict::ProvenZero: return Status::Pass;
        case ZeroVerdict::LikelyNonzero: return Status::Fail;
        case ZeroVerdict::Undecided: return Status::Undecided;
    }
    return Status::Undecided;
}

// Pass when the expression is shown nonzero (a claim that something is NOT a symmetry).
Status nonzero_status(const sym::ZeroReport& z) {
    switch (z.verdict) {
        case ZeroVerdict::ProvenZero: return Status::Fail;
        case ZeroVerdict::LikelyNonzero: return Status::Pass;
        case ZeroVerdict::Undecided: return Status::Undecided;
    }
    return Status::Undecided;
}

std::string witness_text(const sym::ZeroReport& z) {
    if (z.verdict != ZeroVerdict::LikelyNonzero) return "";
    if (z.witness.empty()) return "constant value " + std::to_string(z.witness_value);
    std::string s = "nonzero (" + std::to_string(z.witness_value) + ") at";
    for (const auto& [atom, v] : z.witness) s += " " + atom.str() + "=" + std::to_string(v);
    return s;
}

void inputs(Report& r, const Options& o) {
    r.inputs = {{"metric", o.metric.name()}, {"f", o.f.str()}, {"seed", o.seed},
                {"source", o.source == CurrentSource::Generated ? "generated" : "printed"}};
}

std::string field_text(const lie::VectorField& v) { return v.name.empty() ? v.str() : v.name; }

}  // namespace

Report curvature_report(const geom::ChartMetric& m) {
    Report r;
    r.command = "curvature";
    Timer timer(r);
    r.inputs = {{"metric", m.name()}};
    const auto curv = geom::curvature(m);
    const std::size_t n = m.dim();
    std::string coords;
    for (std::size_t i = 0; i < n; ++i) coords += (i ? ", " : "") + m.coord_atom(i).str();
    r.lines.push_back("coordinates: (" + coords + ")");
    r.lines.push_back("convention: " + curv.convention);
    nlohmann::json gamma = nlohmann::json::array();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const Expr& e = curv.gamma[k][i][j];
                if (e.is_zero()) continue;
                const auto label = "Gamma^" + m.coord_atom(k).str() + "_" + m.coord_atom(i).str() + m.coord_atom(j).str();
                r.lines.push_back(label + " = " + e.str());
                gamma.push_back({{"k", k}, {"i", i}, {"j", j}, {"value", e.str()}});
            }
        }
    }
    nlohmann::json ricci = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const Expr& e = curv.ricci[i][j];
            if (e.is_zero()) continue;
            r.lines.push_back("R_" + m.coord_atom(i).str() + m.coord_atom(j).str() + " = " + e.str());
            ricci.push_back({{"i", i}, {"j", j}, {"value", e.str()}});
        }
    }
    r.lines.push_back("R = " + curv.scalar.str());
    r.data = {{"christoffel", gamma}, {"ricci", ricci}, {"scalar", curv.scalar.str()},
              {"convention", curv.convention}};

    bool coordinate_free = true;
    for (std::size_t i = 0; i < n; ++i) coordinate_free &= !sym::depends_on(curv.scalar, m.coord_atom(i));
    r.add({"curvature.scalar", "scalar curvature", Status::Info, curv.scalar.str(), {}, {}, {}, ""});
    r.add({"curvature.constant", "scalar curvature is free of the coordinates",
           coordinate_free ? Status::Pass : Status::Info, coordinate_free ? "constant" : "varies", {}, {}, {}, ""});
    if (m.name() == "s2xr") {
        r.checks.back().note = "published value -1 under a different normalization of R (ratio 1/2)";
    }

    // sectional samples on the coordinate planes
    const double at[3] = {0.4, 1.1, 0.7};
    sym::NumericBindings point;
    for (std::size_t i = 0; i < n; ++i) point[m.coord_atom(i)] = at[i % 3];
    nlohmann::json sect = nlohmann::json::array();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            std::vector<double> X(n, 0.0), Y(n, 0.0);
            X[a] = 1;
            Y[b] = 1;
            const std::string plane = m.coord_atom(a).str() + "-" + m.coord_atom(b).str();
            try {
                const double K = geom::sectional_curvature(m, curv, point, X, Y);
                sect.push_back({{"plane", plane}, {"value", K}});
                Check c{"curvature.sectional." + plane, "sectional curvature of the " + plane + " plane",
                        Status::Info, "", {}, K, {}, ""};
                if (m.name() == "s2xr" && plane == "t-x") {
                    c.status = std::abs(K) <= 1e-9 ? Status::Pass : Status::Fail;
                    c.tolerance = 1e-9;
                    c.note = "expected 0";
                } else if (m.name() == "s2xr" && plane == "x-y") {
                    c.status = std::abs(K + 1) <= 1e-9 ? Status::Pass : Status::Fail;
                    c.tolerance = 1e-9;
                    c.note = "expected -1";
                }
                r.add(std::move(c));
            } catch (const geom::DegeneratePlaneError& e) {
                r.add({"curvature.sectional." + plane, "sectional curvature of the " + plane + " plane", Status::Info,
                       "degenerate plane", {}, {}, {}, e.what()});
            }
        }
    }
    r.data["sectional"] = sect;
    return r;
}

Report verify_killing(const Options& o) {
    Report r;
    r.command = "verify killing";
    Timer timer(r);
    inputs(r, o);
    std::mt19937_64 rng(o.seed);
    for (const auto& X : lie::isometry_generators()) {
        const auto k = geom::killing_check(o.metric, X, rng);
        Check c{"killing." + X.name, "L_X g = 0 for " + X.name, Status::Pass, "PROVEN_ZERO", {}, {}, {}, ""};
        for (const auto& comp : k.components) {
            if (comp.zero.verdict == ZeroVerdict::ProvenZero) continue;
            c.status = zero_status(comp.zero);
            c.verdict = sym::to_string(comp.zero.verdict);
            c.residual = "(L_X g)_" + std::to_string(comp.i) + std::to_string(comp.j) + " = " + comp.value.str();
            c.note = witness_text(comp.zero);
            if (c.status == Status::Fail) break;
        }
        r.add(std::move(c));
    }
    const lie::VectorField dilation("t d_t", sym::t_(), 0, 0, 0);
    const auto k = geom::killing_check(o.metric, dilation, rng);
    Check c{"killing.witness", "t d_t is not a Killing field", Status::Fail, "PROVEN_ZERO", {}, {}, {}, ""};
    for (const auto& comp : k.components) {
        if (comp.zero.verdict != ZeroVerdict::LikelyNonzero) continue;
        c.status = Status::Pass;
        c.verdict = "LIKELY_NONZERO";
        c.residual = "(L_X g)_" + std::to_string(comp.i) + std::to_string(comp.j) + " = " + comp.value.str();
        c.note = witness_text(comp.zero);
        break;
    }
    r.add(std::move(c));
    return r;
}

Report verify_symmetry(const Options& o) {
    Report r;
    r.command = "verify symmetry";
    Timer timer(r);
    inputs(r, o);
    std::mt19937_64 rng(o.seed);
    for (const auto& X : lie::isometry_generators()) {
        const auto s = lie::symmetry_check(X, o.f, rng);
        r.add({"symmetry." + X.name, X.name + " leaves the equation invariant, f = " + o.f.str(), zero_status(s.zero),
               sym::to_string(s.zero.verdict), s.residual.str(), {}, {}, witness_text(s.zero)});
    }
    const Expr c = Expr::param("c");
    const auto lin = lie::FSpec::linear(c);
    const auto S4 = lie::preset_generator("S4");
    const auto Sinf = lie::preset_generator("Sinf");
    {
        const auto s = lie::symmetry_check(S4, lin, rng);
        r.add({"symmetry.S4.linear", "S4 is a symmetry for f = c u", zero_status(s.zero), sym::to_string(s.zero.verdict),
               s.residual.str(), {}, {}, ""});
    }
    if (!o.f.is_linear() && o.f.kind != lie::FSpec::Kind::Zero) {
        const auto s = lie::symmetry_check(S4, o.f, rng);
        r.add({"symmetry.S4.nonlinear", "S4 is not a symmetry for f = " + o.f.str(), nonzero_status(s.zero),
               sym::to_string(s.zero.verdict), s.residual.str(), {}, {}, witness_text(s.zero)});
    }
    {
        const auto raw = lie::symmetry_check(Sinf, lin, rng);
        const bool reduces = (raw.residual - lie::gauge_condition(c)).is_zero();
        r.add({"symmetry.Sinf.condition", "Sinf residual is the condition on b", reduces ? Status::Pass : Status::Fail,
               reduces ? "MATCH" : "MISMATCH", raw.residual.str(), {}, {}, ""});
        const auto s = lie::symmetry_check(Sinf, lin, rng, lie::gauge_on_shell(c));
        r.add({"symmetry.Sinf.linear", "Sinf is a symmetry for f = c u when b solves the condition",
               zero_status(s.zero), sym::to_string(s.zero.verdict), s.residual.str(), {}, {}, ""});
    }
    if (!o.f.is_linear() && o.f.kind != lie::FSpec::Kind::Zero) {
        const auto s = lie::symmetry_check(Sinf, o.f, rng, lie::gauge_on_shell(c));
        r.add({"symmetry.Sinf.nonlinear", "Sinf is not a symmetry for f = " + o.f.str(), nonzero_status(s.zero),
               sym::to_string(s.zero.verdict), s.residual.str(), {}, {}, witness_text(s.zero)});
    }
    {
        const auto s = lie::shift_reduction_check(Expr::param("k"));
        r.add({"symmetry.shift", "u = v + k t^2/2 maps f = k to f = 0", s.proven ? Status::Pass : Status::Fail,
               s.proven ? "PROVEN" : "NOT PROVEN", s.difference.str(), {}, {}, ""});
    }
    const auto sys = lie::determining_system(o.f);
    r.lines.push_back("determining system: " + std::to_string(sys.size()) + " equations for f = " + o.f.str());
    for (const auto& X : lie::isometry_generators()) {
        Check chk{"determining." + X.name, X.name + " solves the determining system", Status::Pass, "PROVEN_ZERO",
                  {}, {}, {}, ""};
        for (const auto& e : lie::evaluate_determining_system(sys, X)) {
            const auto z = sym::is_zero(e, rng);
            if (z.verdict == ZeroVerdict::ProvenZero) continue;
            chk.status = zero_status(z);
            chk.verdict = sym::to_string(z.verdict);
            chk.residual = e.str();
            break;
        }
        r.add(std::move(chk));
    }
    {
        const lie::VectorField xdx("x d_x", 0, sym::x_(), 0, 0);
        Check chk{"determining.witness", "x d_x violates the determining system", Status::Fail, "PROVEN_ZERO",
                  {}, {}, {}, ""};
        for (const auto& e : lie::evaluate_determining_system(sys, xdx)) {
            const auto z = sym::is_zero(e, rng);
            if (z.verdict != ZeroVerdict::LikelyNonzero) continue;
            chk.status = Status::Pass;
            chk.verdict = "LIKELY_NONZERO";
            chk.residual = e.str();
            chk.note = witness_text(z);
            break;
        }
        r.add(std::move(chk));
    }
    return r;
}

Report verify_noether(const Options& o) {
    Report r;
    r.command = "verify noether";
    Timer timer(r);
    inputs(r, o);
    std::mt19937_64 rng(o.seed);
    const auto L = noether::lagrangian(o.metric, o.f);
    r.lines.push_back("L = " + L.density.str());
    for (const auto& X : lie::isometry_generators()) {
        const auto v = noether::variational_check(X, L, rng);
        r.add({"variational." + X.name, X.name + " is a variational symmetry",
               v.kind == noether::VariationalKind::ExactZero ? Status::Pass : Status::Fail,
               noether::to_string(v.kind), v.residual.str(), {}, {}, ""});
    }
    const auto Lc = noether::lagrangian(o.metric, lie::FSpec::linear());
    {
        const auto v = noether::variational_check(lie::preset_generator("Sinf"), Lc, rng);
        const std::array<Expr, 3> expected{sym::parse("sin(x)*b_t*u"), sym::parse("-sin(x)*b_x*u"),
                                           sym::parse("-b_y*u/sin(x)")};
        const bool match = v.kind == noether::VariationalKind::Divergence && v.flux[0] == expected[0] &&
                           v.flux[1] == expected[1] && v.flux[2] == expected[2];
        r.add({"variational.Sinf", "Sinf is variational up to Div(sin x b_t u, -sin x b_x u, -b_y u / sin x)",
               match ? Status::Pass : Status::Fail, noether::to_string(v.kind),
               "(" + v.flux[0].str() + ", " + v.flux[1].str() + ", " + v.flux[2].str() + ")", {}, {}, ""});
    }
    {
        const auto v = noether::variational_check(lie::preset_generator("S4"), Lc, rng);
        r.add({"variational.S4", "S4 with f = c u (Lie symmetry)", Status::Info, noether::to_string(v.kind),
               v.residual.str(), {}, {}, "nonzero residual: S4 is not a variational symmetry"});
    }
    // off-shell identity D_i A^i + E(L) Q = 0 for the isometry currents
    for (const auto& X : lie::isometry_generators()) {
        for (auto sign : {noether::PotentialSign::Standard, noether::PotentialSign::LagrangianSign}) {
            const auto A = noether::current_from_isometry(o.metric, X, o.f, sign);
            const Expr id = noether::noether_consistency(A, X, L);
            const auto z = sym::is_zero(id, rng);
            const bool standard = sign == noether::PotentialSign::Standard;
            Check c{std::string("consistency.") + X.name + (standard ? "" : ".lagrangian"),
                    std::string("D_i A^i + E(L) Q = 0 off shell, ") +
                        (standard ? "current with -sqrt g xi F" : "current with +sqrt g xi F"),
                    standard ? zero_status(z) : (z.verdict == ZeroVerdict::ProvenZero ? Status::Info : zero_status(z)),
                    sym::to_string(z.verdict), id.str(), {}, {}, ""};
            if (standard && z.verdict != ZeroVerdict::ProvenZero) {
                c.note = "the potential term has the sign opposite to the Lagrangian's Noether current";
            }
            r.add(std::move(c));
        }
    }
    {
        const Expr ut = sym::u_("t");
        const Expr energy = -(ut * sym::partial(L.density, ut) - L.density);
        const auto A = noether::current_from_isometry(o.metric, lie::preset_generator("S0"), o.f);
        const Expr d = A.A[0] - energy;
        const auto z = sym::is_zero(d, rng);
        r.add({"energy.S0", "A^0 of the S0 current equals -(u_t dL/du_t - L)", zero_status(z), sym::to_string(z.verdict),
               d.str(), {}, {}, ""});
    }
    return r;
}

Report verify_currents(const Options& o) {
    Report r;
    r.command = "verify currents";
    Timer timer(r);
    inputs(r, o);
    std::mt19937_64 rng(o.seed);
    const lie::FSpec lin = lie::FSpec::linear();
    noether::DivergenceOptions gauge;
    gauge.gauge_c = lin.linear_coefficient();
    // components whose reference form is known to differ from the general formula
    auto known = [](const std::string& g, std::size_t k) { return (g == "S3" || g == "Sinf") && k == 2; };

    if (o.source == CurrentSource::Printed) {
        for (const auto& g : noether::reference_generators()) {
            const bool is_gauge = g == "Sinf";
            const auto A = noether::reference_current(g);
            const auto d = noether::divergence_check(A, is_gauge ? lin : o.f, rng, is_gauge ? gauge : noether::DivergenceOptions{});
            Check c{"divergence.reference." + g, "reference " + g + " current is conserved", zero_status(d.zero),
                    sym::to_string(d.zero.verdict), d.on_shell.str(), {}, {}, ""};
            if (!d.passes() && (g == "S3" || is_gauge)) {
                c.status = Status::Warn;
                c.note = "reference form differs from the general formula in its last component";
            }
            r.add(std::move(c));
        }
        return r;
    }

    for (const auto& g : noether::reference_generators()) {
        const bool is_gauge = g == "Sinf";
        const auto A = is_gauge ? noether::current_from_gauge(o.metric)
                                : noether::current_from_isometry(o.metric, lie::preset_generator(g), o.f);
        const auto ref = noether::reference_current(g);
        const auto Aref = is_gauge ? A : noether::current_from_isometry(o.metric, lie::preset_generator(g),
                                                                        lie::FSpec::arbitrary());
        for (const auto& cmp : noether::compare_currents(Aref, ref)) {
            Check c{"compare." + g + "." + std::to_string(cmp.k),
                    "generated " + g + " component " + std::to_string(cmp.k) + " matches the reference form",
                    cmp.equal() ? Status::Pass : Status::Fail, cmp.equal() ? "EQUAL" : "DIFFERENT", {}, {}, {}, ""};
            if (!cmp.equal()) {
                c.residual = "generated - reference = " + cmp.difference.str();
                if (known(g, cmp.k)) {
                    c.status = Status::Warn;
                    c.note = "reference form: " + cmp.reference.str() + "; generated: " + cmp.generated.str();
                }
            }
            r.add(std::move(c));
        }
        const auto d = noether::divergence_check(A, is_gauge ? lin : o.f, rng,
                                                 is_gauge ? gauge : noether::DivergenceOptions{});
        Check c{"divergence." + g, "generated " + g + " current is conserved on solutions", zero_status(d.zero),
                sym::to_string(d.zero.verdict), d.on_shell.str(), {}, {}, ""};
        if (!is_gauge && !d.passes()) {
            const auto rev = noether::divergence_check(A, o.f, rng, {lie::SourceSign::Reversed, {}});
            const auto lag = noether::divergence_check(
                noether::current_from_isometry(o.metric, lie::preset_generator(g), o.f,
                                               noether::PotentialSign::LagrangianSign),
                o.f, rng);
            c.note = "with u_tt = Delta u - f: " + sym::to_string(rev.zero.verdict) +
                     "; current with +sqrt g xi F: " + sym::to_string(lag.zero.verdict);
        }
        r.add(std::move(c));
    }
    return r;
}

Report verify_algebra(const Options& o) {
    Report r;
    r.command = "verify algebra";
    Timer timer(r);
    inputs(r, o);
    auto gens = lie::isometry_generators();
    const auto table = lie::commutator_table(gens);
    for (const auto& l : table.lines()) r.lines.push_back(l);
    r.data["table"] = table.lines();

    auto bracket_is = [&](const lie::AlgebraTable& t, std::size_t i, std::size_t j, std::vector<int> expected) {
        if (!t.rational()) return false;
        for (std::size_t k = 0; k < t.dim(); ++k) {
            if (t.rational_constant(i, j, k) != sym::Rational(expected[k])) return false;
        }
        return true;
    };
    auto add_bracket = [&](const char* id, const char* what, bool ok) {
        r.add({id, what, ok ? Status::Pass : Status::Fail, ok ? "EXACT" : "MISMATCH", {}, {}, {}, ""});
    };
    add_bracket("algebra.S1S2", "[S1,S2] = S3", bracket_is(table, 1, 2, {0, 0, 0, 1}));
    add_bracket("algebra.S1S3", "[S1,S3] = -S2", bracket_is(table, 1, 3, {0, 0, -1, 0}));
    add_bracket("algebra.S2S3", "[S2,S3] = S1", bracket_is(table, 2, 3, {0, 1, 0, 0}));
    bool central = table.rational();
    for (std::size_t j = 1; j < 4 && central; ++j) central = bracket_is(table, 0, j, {0, 0, 0, 0});
    add_bracket("algebra.S0.central", "S0 is central", central);

    const auto so3 = lie::commutator_table({gens[1], gens[2], gens[3]});
    const auto K = lie::killing_form(so3);
    std::string ks;
    for (const auto& row : K) {
        ks += "[";
        for (std::size_t k = 0; k < row.size(); ++k) ks += (k ? " " : "") + row[k].str();
        ks += "]";
    }
    r.lines.push_back("Killing form on {S1,S2,S3}: " + ks);
    const bool negdef = lie::negative_definite(K);
    r.add({"algebra.killing_form", "Killing form of {S1,S2,S3} is negative definite",
           negdef ? Status::Pass : Status::Fail, ks, {}, {}, {}, ""});

    gens.push_back(lie::preset_generator("S4"));
    const auto with4 = lie::commutator_table(gens);
    bool s4 = with4.rational();
    for (std::size_t j = 0; j < 4 && s4; ++j) s4 = bracket_is(with4, 4, j, {0, 0, 0, 0, 0});
    add_bracket("algebra.S4.central", "S4 is central in {S0..S4}", s4);

    nlohmann::json subs = nlohmann::json::array();
    for (const auto& sa : lie::listed_subalgebras()) {
        const auto rep = lie::subalgebra_check(sa.name, sa.generators);
        std::string gl;
        for (const auto& g : sa.generators) gl += (gl.empty() ? "" : ", ") + field_text(g);
        const bool ok = rep.closed && rep.rank == sa.generators.size() && rep.tag == sa.expected_tag;
        std::string note;
        for (const auto& a : rep.assumptions) note += (note.empty() ? "assuming " : "; ") + a;
        r.add({"subalgebra." + sa.algebra + "." + sa.name, sa.name + " = <" + gl + "> in the " + sa.algebra +
                                                               " list is closed, " + sa.expected_tag,
               ok ? Status::Pass : Status::Fail, rep.closed ? rep.tag : "not closed", {}, {}, {}, note});
        subs.push_back({{"list", sa.algebra}, {"name", sa.name}, {"generators", gl}, {"closed", rep.closed},
                        {"rank", rep.rank}, {"tag", rep.tag}, {"assumptions", rep.assumptions}});
    }
    r.data["subalgebras"] = subs;
    return r;
}

Report verify_all(const Options& o) {
    Report r;
    r.command = "verify all";
    inputs(r, o);
    for (auto fn : {verify_killing, verify_symmetry, verify_noether, verify_currents, verify_algebra}) r.merge(fn(o));
    return r;
}

Report simulate_report(const num::RunConfig& cfg, const std::string& csv_path) {
    Report r;
    r.command = "simulate";
    Timer timer(r);
    const auto res = num::run(cfg);
    r.inputs = {{"name", cfg.name}};
    r.data = num::to_json(res, false);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw num::ConfigError("cannot write '" + csv_path + "'");
        num::write_csv(out, res);
    }
    r.lines.push_back("steps " + std::to_string(res.steps) + ", dt " + std::to_string(res.dt));
    if (res.max_error) {
        r.add({"simulate.max_error", "max |u - exact| at t_end", Status::Info, "", {}, *res.max_error, {}, ""});
    }
    for (const auto& m : res.monitors) {
        Check c{"simulate.drift." + m.name, "relative drift of the " + m.name + " integral after the wall flux",
                Status::Info, "", {}, m.relative_drift(), {}, ""};
        if (cfg.name == "eigenfunction" && m.name == "S0") {
            c.tolerance = 1e-3;
            c.status = m.relative_drift() < 1e-3 ? Status::Pass : Status::Fail;
        }
        if (cfg.name == "constant") {
            const double change = std::abs(m.integral.back() - m.integral.front());
            c.what = m.name + " integral stays constant";
            c.value = change;
            c.tolerance = 1e-12;
            c.status = change < 1e-12 ? Status::Pass : Status::Fail;
        }
        r.add(std::move(c));
    }
    if (cfg.name == "manufactured") {
        const auto st = num::convergence_study(cfg, {32, 64, 128});
        r.data["convergence"] = num::to_json(st);
        for (std::size_t k = 0; k < st.n.size(); ++k) {
            r.lines.push_back("n = " + std::to_string(st.n[k]) + "  max error " + std::to_string(st.error[k]) +
                              (k ? "  order " + std::to_string(st.order[k - 1]) : ""));
        }
        for (std::size_t k = 0; k < st.order.size(); ++k) {
            const double p = st.order[k];
            r.add({"simulate.order." + std::to_string(st.n[k + 1]), "observed order, n = " + std::to_string(st.n[k]) +
                                                                       " to " + std::to_string(st.n[k + 1]),
                   p >= 1.8 && p <= 2.2 ? Status::Pass : Status::Fail, "", {}, p, 0.2, "accepted range [1.8, 2.2]"});
        }
    }
    return r;
}

nlohmann::json export_currents(const Options& o) {
    std::mt19937_64 rng(o.seed);
    nlohmann::json out{{"tool", "s2kg"}, {"version", kToolVersion}, {"schema_version", kSchemaVersion},
                       {"f", o.f.str()}, {"currents", nlohmann::json::array()}};
    const lie::FSpec lin = lie::FSpec::linear();
    for (const auto& g : noether::reference_generators()) {
        const bool is_gauge = g == "Sinf";
        noether::ConservedCurrent A;
        if (o.source == CurrentSource::Printed) A = noether::reference_current(g);
        else if (is_gauge) A = noether::current_from_gauge(o.metric);
        else A = noether::current_from_isometry(o.metric, lie::preset_generator(g), o.f);
        noether::DivergenceOptions opts;
        if (is_gauge) opts.gauge_c = lin.linear_coefficient();
        const auto d = noether::divergence_check(A, is_gauge ? lin : o.f, rng, opts);
        auto j = noether::to_json(A);
        j["divergence"] = {{"verdict", sym::to_string(d.zero.verdict)}, {"on_shell", d.on_shell.str()}};
        out["currents"].push_back(std::move(j));
    }
    return out;
}

}  // namespace s2kg::cli
