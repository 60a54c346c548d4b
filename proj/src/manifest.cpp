#include "hydroham/manifest.hpp"

namespace hydroham {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ManifestError(path + ": " + what);
}

void expect_array(const Json& j, std::size_t len, const std::string& path) {
    if (!j.is_array() || j.size() != len)
        fail(path, "expected an array of length " + std::to_string(len));
}

} // namespace

ManifestHeader parse_header(const Json& j) {
    ManifestHeader h;
    const Json& dim = require_key(j, "dimension", "manifest");
    if (!dim.is_number_integer() || dim.get<int>() < 1 || dim.get<int>() > 16)
        fail("dimension", "expected an integer between 1 and 16");
    h.dimension = dim.get<int>();
    if (j.contains("coordinates")) {
        const Json& coords = j.at("coordinates");
        expect_array(coords, static_cast<std::size_t>(h.dimension), "coordinates");
        for (const Json& c : coords) {
            if (!c.is_string())
                fail("coordinates", "expected coordinate names");
            h.coordinates.push_back(c.get<std::string>());
        }
    }
    return h;
}

const Json& require_key(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        fail(path, "missing key \"" + key + "\"");
    return j.at(key);
}

RationalFn parse_expr_at(const Json& j, int n, const std::string& path) {
    if (!j.is_string())
        fail(path, "expected an expression string");
    try {
        return parse_expr(j.get<std::string>(), n);
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

Rational parse_rational_at(const Json& j, const std::string& path) {
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    RationalFn f = parse_expr_at(j, 1, path);
    if (!f.is_constant())
        fail(path, "expected a rational constant");
    return f.constant_value();
}

std::vector<RationalFn> parse_vector(const Json& j, int n, const std::string& path) {
    expect_array(j, static_cast<std::size_t>(n), path);
    std::vector<RationalFn> v;
    for (int i = 0; i < n; ++i)
        v.push_back(parse_expr_at(j.at(i), n, path + "[" + std::to_string(i) + "]"));
    return v;
}

Mat parse_matrix(const Json& j, int n, const std::string& path) {
    expect_array(j, static_cast<std::size_t>(n), path);
    Mat m;
    for (int i = 0; i < n; ++i)
        m.push_back(parse_vector(j.at(i), n, path + "[" + std::to_string(i) + "]"));
    return m;
}

Arr3 parse_arr3(const Json& j, int n, const std::string& path) {
    expect_array(j, static_cast<std::size_t>(n), path);
    Arr3 a;
    for (int i = 0; i < n; ++i)
        a.push_back(parse_matrix(j.at(i), n, path + "[" + std::to_string(i) + "]"));
    return a;
}

Arr4 parse_arr4(const Json& j, int n, const std::string& path) {
    expect_array(j, static_cast<std::size_t>(n), path);
    Arr4 a;
    for (int i = 0; i < n; ++i)
        a.push_back(parse_arr3(j.at(i), n, path + "[" + std::to_string(i) + "]"));
    return a;
}

Poly parse_poly_at(const Json& j, int n, const std::string& path) {
    RationalFn f = parse_expr_at(j, n, path);
    if (!f.is_polynomial())
        fail(path, "expected a polynomial expression");
    return f.num().scaled(Rational(1) / f.den().constant_value());
}

std::vector<Poly> parse_poly_map(const Json& j, int n, const std::string& path) {
    expect_array(j, static_cast<std::size_t>(n), path);
    std::vector<Poly> v;
    for (int i = 0; i < n; ++i)
        v.push_back(parse_poly_at(j.at(i), n, path + "[" + std::to_string(i) + "]"));
    return v;
}

Connection parse_connection(const Json& j, int n, const std::string& path) {
    const Json& ch = require_key(j, "christoffels", path);
    Arr3 a = parse_arr3(ch, n, path + ".christoffels");
    Connection c(n);
    for (int g = 0; g < n; ++g)
        for (int al = 0; al < n; ++al)
            for (int be = 0; be < n; ++be)
                c.at(g, al, be) = a[g][al][be];
    return c;
}

Tensor parse_tensor12(const Json& j, int n, const std::string& path) {
    Arr3 a = parse_arr3(j, n, path);
    Tensor t(n, 1, 2);
    for (int i = 0; i < n; ++i)
        for (int b = 0; b < n; ++b)
            for (int g = 0; g < n; ++g)
                t.at({i, b, g}) = a[i][b][g];
    return t;
}

Tensor parse_tensor11(const Json& j, int n, const std::string& path) {
    return Tensor::from_matrix(parse_matrix(j, n, path));
}

OddHydroDerivation parse_structure(const Json& j, int n, const std::string& path) {
    OddHydroDerivation d = OddHydroDerivation::zero(n);
    d.g = parse_matrix(require_key(j, "g", path), n, path + ".g");
    if (j.contains("gamma"))
        d.gamma = parse_arr3(j.at("gamma"), n, path + ".gamma");
    bool rebuild_v = !j.contains("V");
    bool rebuild_q = !j.contains("Q");
    if (!rebuild_v)
        d.V = parse_arr3(j.at("V"), n, path + ".V");
    if (!rebuild_q)
        d.Q = parse_arr4(j.at("Q"), n, path + ".Q");
    if (rebuild_v || rebuild_q) {
        Mat low;
        try {
            low = lower_metric(d.g);
        } catch (const Error& e) {
            fail(path + ".g", e.what());
        }
        if (rebuild_v) {
            for (int m = 0; m < n; ++m)
                for (int l = 0; l < n; ++l)
                    for (int b = 0; b < n; ++b) {
                        RationalFn v(n);
                        for (int a = 0; a < n; ++a)
                            for (int c = 0; c < n; ++c)
                                v += low[a][b] * d.gamma[a][l][c] * d.g[c][m];
                        d.V[m][l][b] = v;
                    }
        }
        if (rebuild_q) {
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m)
                    for (int b = 0; b < n; ++b)
                        for (int dd = 0; dd < n; ++dd) {
                            RationalFn v(n);
                            for (int a = 0; a < n; ++a)
                                for (int c = 0; c < n; ++c)
                                    v += low[a][b] * (d.gamma[a][l][c] * d.gamma[c][m][dd] -
                                                      d.gamma[a][m][c] * d.gamma[c][l][dd]);
                            d.Q[l][m][b][dd] = v.scaled(Rational(1, 2));
                        }
        }
    }
    for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (d.Q[m][l][b][c] != -d.Q[l][m][b][c])
                        fail(path + ".Q", "Q must be antisymmetric in its upper pair");
    return d;
}

HydroFlow parse_flow(const Json& j, int n, const std::string& path) {
    HydroFlow f;
    f.X = parse_matrix(require_key(j, "X", path), n, path + ".X");
    return f;
}

DiffPoly parse_diffpoly(const Json& j, int n, const std::string& path) {
    if (!j.is_array())
        fail(path, "expected an array of terms");
    DiffPoly out(n);
    int ti = 0;
    for (const Json& term : j) {
        std::string tpath = path + "[" + std::to_string(ti++) + "]";
        RationalFn coeff = parse_expr_at(require_key(term, "coeff", tpath), n, tpath + ".coeff");
        DiffPoly piece(coeff);
        if (term.contains("even")) {
            for (const Json& e : term.at("even")) {
                expect_array(e, 3, tpath + ".even[]");
                int alpha = e.at(0).get<int>();
                int s = e.at(1).get<int>();
                int k = e.at(2).get<int>();
                if (alpha < 1 || alpha > n || s < 0 || k < 1)
                    fail(tpath + ".even[]", "bad jet index [alpha,s,exp]");
                for (int r = 0; r < k; ++r)
                    piece = piece * DiffPoly::even_jet(n, alpha - 1, s);
            }
        }
        if (term.contains("odd")) {
            for (const Json& o : term.at("odd")) {
                expect_array(o, 2, tpath + ".odd[]");
                int alpha = o.at(0).get<int>();
                int s = o.at(1).get<int>();
                if (alpha < 1 || alpha > n || s < 0)
                    fail(tpath + ".odd[]", "bad odd index [alpha,s]");
                piece = piece * DiffPoly::odd_jet(n, alpha - 1, s);
            }
        }
        out += piece;
    }
    return out;
}

Json diffpoly_to_json(const DiffPoly& p) {
    Json arr = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json term;
        term["coeff"] = to_string(c);
        Json even = Json::array();
        for (const auto& [jet, k] : m.even)
            even.push_back({jet.alpha + 1, jet.s, k});
        Json odd = Json::array();
        for (const OddVar& o : m.odd)
            odd.push_back({o.alpha + 1, o.s});
        if (!even.empty())
            term["even"] = even;
        if (!odd.empty())
            term["odd"] = odd;
        arr.push_back(term);
    }
    return arr;
}

OneForm parse_one_form(const Json& j, int n, const std::string& path) {
    expect_array(j, static_cast<std::size_t>(n), path);
    OneForm w;
    for (int a = 0; a < n; ++a)
        w.f.push_back(parse_diffpoly(j.at(a), n, path + "[" + std::to_string(a) + "]"));
    return w;
}

Derivation parse_derivation(const Json& j, int n, const std::string& path) {
    int parity = require_key(j, "parity", path).get<int>();
    const Json& aj = require_key(j, "a", path);
    const Json& bj = require_key(j, "b", path);
    expect_array(aj, static_cast<std::size_t>(n), path + ".a");
    expect_array(bj, static_cast<std::size_t>(n), path + ".b");
    std::vector<DiffPoly> a, b;
    for (int i = 0; i < n; ++i) {
        a.push_back(parse_diffpoly(aj.at(i), n, path + ".a[" + std::to_string(i) + "]"));
        b.push_back(parse_diffpoly(bj.at(i), n, path + ".b[" + std::to_string(i) + "]"));
    }
    try {
        return Derivation(n, parity, std::move(a), std::move(b));
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

std::map<std::pair<int, int>, RationalFn> parse_canonical_a(const Json& j, int n,
                                                            const std::string& path) {
    if (!j.is_object())
        fail(path, "expected an object keyed by \"i,j\"");
    std::map<std::pair<int, int>, RationalFn> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        auto comma = key.find(',');
        if (comma == std::string::npos)
            fail(path, "key \"" + key + "\" is not of the form \"i,j\"");
        int i = 0, jj = 0;
        try {
            i = std::stoi(key.substr(0, comma));
            jj = std::stoi(key.substr(comma + 1));
        } catch (...) {
            fail(path, "key \"" + key + "\" is not of the form \"i,j\"");
        }
        if (i < 1 || i > n || jj < 1 || jj > n || i == jj)
            fail(path, "indices out of range in key \"" + key + "\"");
        out[{i - 1, jj - 1}] = parse_expr_at(it.value(), n, path + "." + key);
    }
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
            if (i != jj && !out.count({i, jj}))
                fail(path, "missing entry \"" + std::to_string(i + 1) + "," +
                               std::to_string(jj + 1) + "\"");
    return out;
}

Json matrix_to_json(const Mat& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const RationalFn& v : row)
            r.push_back(to_string(v));
        out.push_back(r);
    }
    return out;
}

Json arr3_to_json(const Arr3& a) {
    Json out = Json::array();
    for (const auto& m : a)
        out.push_back(matrix_to_json(m));
    return out;
}

} // namespace hydroham
