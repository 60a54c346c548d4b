#ifndef HYDROHAM_MANIFEST_HPP
#define HYDROHAM_MANIFEST_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hydroham/brackets.hpp"
#include "hydroham/fman.hpp"
#include "hydroham/hydro.hpp"

namespace hydroham {

using Json = nlohmann::json;

/// Parsed manifest header: dimension and optional coordinate names.
struct ManifestHeader {
    int dimension = 0;
    std::vector<std::string> coordinates;
};

ManifestHeader parse_header(const Json& j);

const Json& require_key(const Json& j, const std::string& key, const std::string& path);

RationalFn parse_expr_at(const Json& j, int n, const std::string& path);
Rational parse_rational_at(const Json& j, const std::string& path);
std::vector<RationalFn> parse_vector(const Json& j, int n, const std::string& path);
Mat parse_matrix(const Json& j, int n, const std::string& path);
Arr3 parse_arr3(const Json& j, int n, const std::string& path);
Arr4 parse_arr4(const Json& j, int n, const std::string& path);
Poly parse_poly_at(const Json& j, int n, const std::string& path);
std::vector<Poly> parse_poly_map(const Json& j, int n, const std::string& path);

Connection parse_connection(const Json& j, int n, const std::string& path);
Tensor parse_tensor12(const Json& j, int n, const std::string& path); // c[a][b][g]
Tensor parse_tensor11(const Json& j, int n, const std::string& path);

/// {"g":..., "gamma":?, "V":?, "Q":?}; V and Q are reconstructed from their
/// defining identities when absent.
OddHydroDerivation parse_structure(const Json& j, int n, const std::string& path);

HydroFlow parse_flow(const Json& j, int n, const std::string& path);

/// [{"coeff": expr, "even": [[a,s,k]...], "odd": [[a,s]...]}, ...] with
/// 1-based variable indices and canonical odd order.
DiffPoly parse_diffpoly(const Json& j, int n, const std::string& path);
Json diffpoly_to_json(const DiffPoly& p);

OneForm parse_one_form(const Json& j, int n, const std::string& path);
Derivation parse_derivation(const Json& j, int n, const std::string& path);

std::map<std::pair<int, int>, RationalFn> parse_canonical_a(const Json& j, int n,
                                                            const std::string& path);

Json matrix_to_json(const Mat& m);
Json arr3_to_json(const Arr3& a);

} // namespace hydroham

#endif
