#include "hydroham/run.hpp"

#include <chrono>
#include <functional>

namespace hydroham {

namespace {

std::string indices_str(const std::vector<int>& idx) {
    std::string s = "[";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(idx[i]);
    }
    return s + "]";
}

void add_ratfn_residual(CheckReport& c, std::vector<int> idx, const RationalFn& v) {
    if (v.is_zero())
        return;
    c.pass = false;
    c.residuals.push_back({std::move(idx), to_string(v), ""});
}

void add_diffpoly_residual(CheckReport& c, std::vector<int> idx, const DiffPoly& v) {
    if (v.is_zero())
        return;
    c.pass = false;
    c.residuals.push_back({std::move(idx), to_string(v), diffpoly_to_json(v).dump()});
}

void add_tensor_residuals(CheckReport& c, const Tensor& t) {
    const int n = t.nvars();
    const int r = t.rank();
    std::vector<int> idx(r, 0);
    for (std::size_t flat = 0; flat < t.components().size(); ++flat) {
        std::size_t rem = flat;
        for (int k = r - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(rem % n) + 1;
            rem /= n;
        }
        add_ratfn_residual(c, idx, t.components()[flat]);
    }
}

// Optional manifest keys "oddFrame" (a frame matrix T) and
// "coordinateMap"/"inverseMap" (polynomial maps) transform a structure
// before the checks run.
OddHydroDerivation apply_transforms(OddHydroDerivation D, const Json& m, int n) {
    if (m.contains("oddFrame"))
        D = odd_change_of_variables(D, parse_matrix(m.at("oddFrame"), n, "oddFrame"));
    if (m.contains("coordinateMap")) {
        std::vector<Poly> phi = parse_poly_map(m.at("coordinateMap"), n, "coordinateMap");
        std::vector<Poly> inv;
        if (m.contains("inverseMap"))
            inv = parse_poly_map(m.at("inverseMap"), n, "inverseMap");
        D = coordinate_transform(D, phi, inv);
    }
    return D;
}

HydroFlow apply_flow_transforms(HydroFlow X, const Json& m, int n) {
    if (m.contains("coordinateMap")) {
        std::vector<Poly> phi = parse_poly_map(m.at("coordinateMap"), n, "coordinateMap");
        std::vector<Poly> inv;
        if (m.contains("inverseMap"))
            inv = parse_poly_map(m.at("inverseMap"), n, "inverseMap");
        X = transform_flow(X, phi, inv);
    }
    return X;
}

void check_ghs_into(Report& rep, const OddHydroDerivation& D, const std::string& prefix) {
    GhsResult r = is_ghs(D);
    CheckReport& w = rep.add_check(prefix + "bracket residual on v");
    CheckReport& z = rep.add_check(prefix + "bracket residual on theta");
    for (int a = 0; a < D.n; ++a) {
        add_diffpoly_residual(w, {a + 1}, r.W[a]);
        add_diffpoly_residual(z, {a + 1}, r.Z[a]);
    }
}

Report cmd_check_ghs(const Json& m, int n, const RunOptions&) {
    Report rep;
    OddHydroDerivation D = apply_transforms(
        parse_structure(require_key(m, "structure", "manifest"), n, "structure"), m, n);
    check_ghs_into(rep, D, "");
    try {
        GeometricData data = data_from_derivation(D);
        CheckReport& t = rep.add_check("transported connection torsionless");
        add_tensor_residuals(t, torsion(data.nabla));
        CheckReport& f = rep.add_check("transported connection flat");
        add_tensor_residuals(f, curvature(data.nabla));
        bool geometric = torsion(data.nabla).is_zero() && curvature(data.nabla).is_zero();
        CheckReport& agree = rep.add_check("bracket and geometric checkers agree");
        agree.pass = geometric == is_ghs(D).ok;
        rep.outputs.push_back({"nabla.christoffels", [&] {
            Arr3 a = make_arr3(n);
            for (int c = 0; c < n; ++c)
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        a[c][x][y] = data.nabla.at(c, x, y);
            return arr3_to_json(a).dump();
        }()});
    } catch (const InconsistentVQ& e) {
        CheckReport& c = rep.add_check("V,Q consistency (defining identities)");
        c.pass = false;
        rep.error = e.what();
    }
    return rep;
}

Report cmd_check_gbhs(const Json& m, int n, const RunOptions&) {
    Report rep;
    OddHydroDerivation D0 =
        parse_structure(require_key(m, "structure0", "manifest"), n, "structure0");
    OddHydroDerivation D1 =
        parse_structure(require_key(m, "structure1", "manifest"), n, "structure1");
    check_ghs_into(rep, D0, "structure0: ");
    check_ghs_into(rep, D1, "structure1: ");
    Derivation mixed = graded_commutator(to_derivation(D0), to_derivation(D1));
    CheckReport& mc = rep.add_check("mixed bracket [tau0, tau1] = 0");
    for (int a = 0; a < n; ++a) {
        add_diffpoly_residual(mc, {a + 1}, mixed.a(a));
        add_diffpoly_residual(mc, {a + 1}, mixed.b(a));
    }
    try {
        BiGeometricData b = bi_data(D0, D1);
        PropertyReport pr = check_by_properties(b);
        rep.add_check("d_nabla(L) = d_nablaStar(L)").pass = pr.ahe;
        CheckReport& nj = rep.add_check("Nijenhuis torsion of L vanishes");
        add_tensor_residuals(nj, pr.nijenhuis_residual);
        CheckReport& gm = rep.add_check("Gauss-Manin flatness condition");
        add_tensor_residuals(gm, pr.gm_residual);
        rep.outputs.push_back({"L", matrix_to_json(b.L.as_matrix()).dump()});
    } catch (const InconsistentVQ& e) {
        CheckReport& c = rep.add_check("V,Q consistency (defining identities)");
        c.pass = false;
        rep.error = std::string("InconsistentVQ: ") + e.what();
    }
    return rep;
}

Report cmd_data(const Json& m, int n, const RunOptions&) {
    Report rep;
    OddHydroDerivation D = apply_transforms(
        parse_structure(require_key(m, "structure", "manifest"), n, "structure"), m, n);
    GeometricData data = data_from_derivation(D);
    rep.outputs.push_back({"g", matrix_to_json(data.gsharp).dump()});
    Arr3 a = make_arr3(n);
    for (int c = 0; c < n; ++c)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                a[c][x][y] = data.nabla.at(c, x, y);
    rep.outputs.push_back({"connection.christoffels", arr3_to_json(a).dump()});
    return rep;
}

Report cmd_from_data(const Json& m, int n, const RunOptions&) {
    Report rep;
    GeometricData data;
    data.gsharp = parse_matrix(require_key(m, "g", "manifest"), n, "g");
    data.nabla = parse_connection(require_key(m, "connection", "manifest"), n, "connection");
    OddHydroDerivation D = derivation_from_data(data);
    rep.outputs.push_back({"gamma", arr3_to_json(D.gamma).dump()});
    rep.outputs.push_back({"V", arr3_to_json(D.V).dump()});
    Json q = Json::array();
    for (const Arr3& slice : D.Q)
        q.push_back(arr3_to_json(slice));
    rep.outputs.push_back({"Q", q.dump()});
    check_ghs_into(rep, D, "");
    return rep;
}

Report cmd_check_flow(const Json& m, int n, const RunOptions&) {
    Report rep;
    OddHydroDerivation D = apply_transforms(
        parse_structure(require_key(m, "structure", "manifest"), n, "structure"), m, n);
    HydroFlow X = apply_flow_transforms(
        parse_flow(require_key(m, "flow", "manifest"), n, "flow"), m, n);
    FlowExtension ext = extend_flow(X, D);
    CheckReport& c = rep.add_check("d_nabla(X) = 0");
    add_tensor_residuals(c, ext.residual);
    if (ext.compatible) {
        rep.outputs.push_back({"Y", matrix_to_json(ext.Y).dump()});
        rep.outputs.push_back({"M", arr3_to_json(ext.M).dump()});
    }
    return rep;
}

Report cmd_hamiltonian_form(const Json& m, int n, const RunOptions&) {
    Report rep;
    OddHydroDerivation D = apply_transforms(
        parse_structure(require_key(m, "structure", "manifest"), n, "structure"), m, n);
    HydroFlow X = apply_flow_transforms(
        parse_flow(require_key(m, "flow", "manifest"), n, "flow"), m, n);
    OneForm H = hamiltonian_one_form(X, D);
    for (int b = 0; b < n; ++b)
        rep.outputs.push_back(
            {"H[" + std::to_string(b + 1) + "]", to_string(H.f[b].jet_free_part())});
    return rep;
}

Report cmd_check_flatf(const Json& m, int n, const RunOptions&) {
    Report rep;
    FlatFData d;
    d.c = parse_tensor12(require_key(m, "structureConstants", "manifest"), n, "structureConstants");
    d.e = parse_vector(require_key(m, "unit", "manifest"), n, "unit");
    FlatFReport r = flat_f_check(d);
    rep.add_check("product commutative").pass = r.commutative;
    rep.add_check("unit field is a two-sided unit").pass = r.unit;
    rep.add_check("unit field covariantly constant").pass = r.unit_flat;
    rep.add_check("nabla - lambda o flat and torsionless").pass = r.family_flat_torsionless;
    rep.add_check("product associative").pass = r.associative;
    CheckReport& hm = rep.add_check("Hertling-Manin condition");
    HertlingManinResult h = hertling_manin_check(d.c);
    hm.pass = h.ok;
    for (const auto& [idx, val] : h.residuals) {
        std::vector<int> shifted;
        for (int i : idx)
            shifted.push_back(i + 1);
        hm.residuals.push_back({shifted, to_string(val), ""});
    }
    return rep;
}

BiFlatData parse_biflat(const Json& m, int n) {
    BiFlatData b;
    b.c = parse_tensor12(require_key(m, "structureConstants", "manifest"), n, "structureConstants");
    b.e = parse_vector(require_key(m, "unit", "manifest"), n, "unit");
    b.E = parse_vector(require_key(m, "euler", "manifest"), n, "euler");
    b.nabla = m.contains("nabla") ? parse_connection(m.at("nabla"), n, "nabla") : Connection(n);
    b.nablaStar = parse_connection(require_key(m, "nablaStar", "manifest"), n, "nablaStar");
    return b;
}

void biflat_into(Report& rep, const BiFlatData& b) {
    BiFlatReport r = biflat_check(b);
    rep.add_check("dual connection torsionless").pass = r.star_torsionless;
    rep.add_check("dual connection flat").pass = r.star_flat;
    CheckReport& eu = rep.add_check("dual connection annihilates the Euler field");
    add_tensor_residuals(eu, d_nabla(b.nablaStar, Tensor::vector_field(b.E)));
    CheckReport& lie = rep.add_check("Lie_E o = o");
    add_tensor_residuals(lie, lie_derivative_product(Tensor::vector_field(b.E), b.c) - b.c);
    rep.add_check("(d_nabla - d_nablaStar)(X o) = 0").pass = r.compatible_connections;
}

Report cmd_check_biflat(const Json& m, int n, const RunOptions&) {
    Report rep;
    biflat_into(rep, parse_biflat(m, n));
    return rep;
}

Report cmd_hierarchy(const Json& m, int n, const RunOptions&) {
    Report rep;
    FlatFData d;
    d.c = parse_tensor12(require_key(m, "structureConstants", "manifest"), n, "structureConstants");
    d.e = parse_vector(require_key(m, "unit", "manifest"), n, "unit");
    int pmax = require_key(m, "pmax", "manifest").get<int>();
    if (pmax < -1 || pmax > 8)
        throw ManifestError("pmax: expected a level between -1 and 8");
    std::vector<HierarchyFlow> flows = principal_flows(d, pmax);
    for (const HierarchyFlow& f : flows) {
        Json comps = Json::array();
        for (const RationalFn& x : f.X)
            comps.push_back(to_string(x));
        rep.outputs.push_back({"X(" + std::to_string(f.alpha + 1) + "," +
                                   std::to_string(f.level) + ")",
                               comps.dump()});
    }
    CheckReport& comm = rep.add_check("hierarchy flows commute pairwise");
    for (std::size_t i = 0; i < flows.size(); ++i)
        for (std::size_t j = i + 1; j < flows.size(); ++j)
            if (!flows_commute(flows[i], flows[j], d.c))
                comm.pass = false;
    return rep;
}

Report cmd_gm_flatness(const Json& m, int n, const RunOptions& opts) {
    Report rep;
    Tensor L = parse_tensor11(require_key(m, "L", "manifest"), n, "L");
    Connection C = parse_connection(require_key(m, "connection", "manifest"), n, "connection");
    Connection Cs = parse_connection(require_key(m, "nablaStar", "manifest"), n, "nablaStar");
    GmFlatness g = gm_flatness_condition(L, C, Cs);
    CheckReport& c = rep.add_check("Gauss-Manin flatness condition");
    add_tensor_residuals(c, g.residual);
    CheckReport& ahe = rep.add_check("d_nabla(L) = d_nablaStar(L)");
    add_tensor_residuals(ahe, d_nabla(C, L) - d_nabla(Cs, L));
    for (const Rational& z : opts.sample_points) {
        CheckReport& cz = rep.add_check("curvature of the Gauss-Manin connection at z = " + z.str());
        add_tensor_residuals(cz, curvature(gm_christoffels_at(L, C, Cs, z)));
    }
    return rep;
}

Report cmd_nijenhuis(const Json& m, int n, const RunOptions&) {
    Report rep;
    Tensor L = parse_tensor11(require_key(m, "L", "manifest"), n, "L");
    CheckReport& c = rep.add_check("Nijenhuis torsion vanishes");
    add_tensor_residuals(c, nijenhuis(L));
    return rep;
}

Report cmd_hertling_manin(const Json& m, int n, const RunOptions&) {
    Report rep;
    Tensor c = parse_tensor12(require_key(m, "structureConstants", "manifest"), n,
                              "structureConstants");
    HertlingManinResult h = hertling_manin_check(c);
    CheckReport& hm = rep.add_check("Hertling-Manin condition");
    hm.pass = h.ok;
    for (const auto& [idx, val] : h.residuals) {
        std::vector<int> shifted;
        for (int i : idx)
            shifted.push_back(i + 1);
        hm.residuals.push_back({shifted, to_string(val), ""});
    }
    return rep;
}

Report cmd_canonical_semisimple(const Json& m, int n, const RunOptions& opts) {
    Report rep;
    auto A = parse_canonical_a(require_key(m, "canonicalA", "manifest"), n, "canonicalA");
    SemisimpleCanonical out = semisimple_canonical(A, n);
    rep.add_check("canonical PDE system").pass = true;
    biflat_into(rep, out.biflat);
    PropertyReport pr = check_by_properties(out.geometry);
    rep.add_check("d_nabla(L) = d_nablaStar(L)").pass = pr.ahe;
    CheckReport& nj = rep.add_check("Nijenhuis torsion of L vanishes");
    add_tensor_residuals(nj, pr.nijenhuis_residual);
    CheckReport& gm = rep.add_check("Gauss-Manin flatness condition");
    add_tensor_residuals(gm, pr.gm_residual);
    for (const Rational& z : opts.sample_points) {
        CheckReport& cz = rep.add_check("curvature of the Gauss-Manin connection at z = " + z.str());
        add_tensor_residuals(
            cz, curvature(gm_christoffels_at(out.geometry.L, out.geometry.nabla,
                                             out.geometry.nablaStar, z)));
    }
    Arr3 b = make_arr3(n);
    for (int c = 0; c < n; ++c)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                b[c][x][y] = out.biflat.nablaStar.at(c, x, y);
    rep.outputs.push_back({"nablaStar.christoffels", arr3_to_json(b).dump()});
    return rep;
}

Report cmd_frobenius_pencil(const Json& m, int n, const RunOptions&) {
    Report rep;
    Mat eta = parse_matrix(require_key(m, "eta", "manifest"), n, "eta");
    Tensor c = parse_tensor12(require_key(m, "structureConstants", "manifest"), n,
                              "structureConstants");
    std::vector<RationalFn> E = parse_vector(require_key(m, "euler", "manifest"), n, "euler");
    Rational nu = m.contains("nu") ? parse_rational_at(m.at("nu"), "nu") : Rational(0);
    BiGeometricData b = frobenius_pencil(eta, c, E, nu);
    PropertyReport pr = check_by_properties(b);
    rep.add_check("d_nabla(L) = d_nablaStar(L)").pass = pr.ahe;
    CheckReport& nj = rep.add_check("Nijenhuis torsion of L vanishes");
    add_tensor_residuals(nj, pr.nijenhuis_residual);
    CheckReport& gm = rep.add_check("Gauss-Manin flatness condition");
    add_tensor_residuals(gm, pr.gm_residual);
    auto [d0, d1] = pencil_from_bi_data(b, mat_identity(n, n));
    rep.add_check("reconstructed pencil is generalised bi-Hamiltonian").pass = is_gbhs(d0, d1);
    bool euler_flat = d_nabla(b.nablaStar, Tensor::vector_field(E)).is_zero();
    rep.outputs.push_back({"nablaStarEulerFlat", euler_flat ? "true" : "false"});
    rep.outputs.push_back({"L", matrix_to_json(b.L.as_matrix()).dump()});
    Arr3 bs = make_arr3(n);
    for (int cc = 0; cc < n; ++cc)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                bs[cc][x][y] = b.nablaStar.at(cc, x, y);
    rep.outputs.push_back({"nablaStar.christoffels", arr3_to_json(bs).dump()});
    return rep;
}

Report cmd_bracket(const Json& m, int n, const RunOptions&) {
    Report rep;
    Derivation X = parse_derivation(require_key(m, "X", "manifest"), n, "X");
    Derivation Y = parse_derivation(require_key(m, "Y", "manifest"), n, "Y");
    Derivation c = graded_commutator(X, Y);
    CheckReport& z = rep.add_check("[X, Y] = 0");
    for (int a = 0; a < n; ++a) {
        add_diffpoly_residual(z, {a + 1}, c.a(a));
        add_diffpoly_residual(z, {a + 1}, c.b(a));
    }
    rep.outputs.push_back({"parity", std::to_string(c.parity())});
    return rep;
}

Report cmd_schouten(const Json& m, int n, const RunOptions&) {
    Report rep;
    LocalFunctional F(parse_diffpoly(require_key(m, "F", "manifest"), n, "F"));
    LocalFunctional G(parse_diffpoly(require_key(m, "G", "manifest"), n, "G"));
    LocalFunctional B = schouten(F, G);
    CheckReport& z = rep.add_check("[F, G] = 0 as a local functional");
    if (!functional_is_zero(B)) {
        z.pass = false;
        z.residuals.push_back({{}, to_string(B.density()), diffpoly_to_json(B.density()).dump()});
    }
    rep.outputs.push_back({"density", to_string(B.density())});
    rep.outputs.push_back({"density.serialized", diffpoly_to_json(B.density()).dump()});
    return rep;
}

Report cmd_one_form_bracket(const Json& m, int n, const RunOptions&) {
    Report rep;
    OddHydroDerivation D = parse_structure(require_key(m, "structure", "manifest"), n, "structure");
    OneForm w = parse_one_form(require_key(m, "omega", "manifest"), n, "omega");
    OneForm z = parse_one_form(require_key(m, "zeta", "manifest"), n, "zeta");
    OneForm r = one_form_bracket(w, z, to_derivation(D));
    for (int a = 0; a < n; ++a) {
        rep.outputs.push_back({"bracket[" + std::to_string(a + 1) + "]", to_string(r.f[a])});
        rep.outputs.push_back({"bracket[" + std::to_string(a + 1) + "].serialized",
                               diffpoly_to_json(r.f[a]).dump()});
    }
    return rep;
}

using Handler = std::function<Report(const Json&, int, const RunOptions&)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> table = {
        {"check-ghs", cmd_check_ghs},
        {"check-gbhs", cmd_check_gbhs},
        {"data", cmd_data},
        {"from-data", cmd_from_data},
        {"check-flow", cmd_check_flow},
        {"hamiltonian-form", cmd_hamiltonian_form},
        {"check-flatf", cmd_check_flatf},
        {"check-biflat", cmd_check_biflat},
        {"hierarchy", cmd_hierarchy},
        {"gm-flatness", cmd_gm_flatness},
        {"nijenhuis", cmd_nijenhuis},
        {"hertling-manin", cmd_hertling_manin},
        {"canonical-semisimple", cmd_canonical_semisimple},
        {"frobenius-pencil", cmd_frobenius_pencil},
        {"bracket", cmd_bracket},
        {"schouten", cmd_schouten},
        {"one-form-bracket", cmd_one_form_bracket},
    };
    return table;
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, h] : handlers())
            v.push_back(name);
        return v;
    }();
    return names;
}

Report run_command(const std::string& command, const Json& manifest, const RunOptions& opts) {
    const Handler* handler = nullptr;
    for (const auto& [name, h] : handlers())
        if (name == command)
            handler = &h;
    if (!handler)
        throw ManifestError("unknown command \"" + command + "\"");
    ManifestHeader header = parse_header(manifest);
    set_max_jet_order(opts.max_jet_order);
    auto start = std::chrono::steady_clock::now();
    Report rep;
    try {
        rep = (*handler)(manifest, header.dimension, opts);
    } catch (const ManifestError&) {
        throw;
    } catch (const Error& e) {
        rep.error = std::string(e.kind()) + ": " + e.what();
    }
    rep.command = command;
    rep.finalize();
    auto end = std::chrono::steady_clock::now();
    rep.wallMillis =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
    return rep;
}

std::string report_to_json(const Report& r) {
    Json j;
    j["command"] = r.command;
    j["verdict"] = r.pass ? "pass" : "fail";
    Json checks = Json::array();
    for (const CheckReport& c : r.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        Json res = Json::array();
        for (const ResidualEntry& e : c.residuals) {
            Json ej;
            ej["indices"] = e.indices;
            ej["expr"] = e.expr;
            if (!e.serialized.empty())
                ej["serialized"] = Json::parse(e.serialized);
            res.push_back(ej);
        }
        cj["residuals"] = res;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    if (!r.outputs.empty()) {
        Json out = Json::object();
        for (const auto& [k, v] : r.outputs)
            out[k] = v;
        j["outputs"] = out;
    }
    if (!r.error.empty())
        j["error"] = r.error;
    j["wallMillis"] = r.wallMillis;
    return j.dump(2);
}

std::string report_to_text(const Report& r) {
    std::string s = r.command + ": " + (r.pass ? "PASS" : "FAIL") + "\n";
    for (const CheckReport& c : r.checks) {
        s += std::string("  [") + (c.pass ? "ok" : "FAIL") + "] " + c.name + "\n";
        for (const ResidualEntry& e : c.residuals)
            s += "        residual " + indices_str(e.indices) + " = " + e.expr + "\n";
    }
    for (const auto& [k, v] : r.outputs)
        s += "  " + k + " = " + v + "\n";
    if (!r.error.empty())
        s += "  error: " + r.error + "\n";
    s += "  wall: " + std::to_string(r.wallMillis) + " ms\n";
    return s;
}

} // namespace hydroham
