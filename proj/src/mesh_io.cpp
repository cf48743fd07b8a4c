#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dectk/errors.hpp"
#include "dectk/mesh.hpp"

namespace dectk {

namespace {

GeometricComplex parse_json(std::istream& in)
{
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("mesh JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("mesh JSON: top level must be an object");
    }
    for (const char* key : {"dimension", "vertices", "simplices"}) {
        if (!doc.contains(key)) {
            throw ParseError(std::string("mesh JSON: missing key \"") + key + "\"");
        }
    }
    if (!doc["dimension"].is_number_integer()) {
        throw ParseError("mesh JSON: \"dimension\" must be an integer");
    }
    const int n = doc["dimension"].get<int>();
    const auto& jv = doc["vertices"];
    const auto& js = doc["simplices"];
    if (!jv.is_array() || !js.is_array()) {
        throw ParseError("mesh JSON: \"vertices\" and \"simplices\" must be arrays");
    }
    const std::size_t d = jv.empty() ? 0 : jv.front().size();
    Eigen::MatrixXd verts(static_cast<Eigen::Index>(jv.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < jv.size(); ++i) {
        const auto& row = jv[i];
        if (!row.is_array() || row.size() != d) {
            throw ParseError("mesh JSON: vertex " + std::to_string(i) + " must have " + std::to_string(d)
                             + " coordinates");
        }
        for (std::size_t j = 0; j < d; ++j) {
            if (!row[j].is_number()) {
                throw ParseError("mesh JSON: vertex " + std::to_string(i) + " has a non-numeric coordinate");
            }
            verts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].get<double>();
        }
    }
    std::vector<Simplex> tops;
    tops.reserve(js.size());
    for (std::size_t i = 0; i < js.size(); ++i) {
        const auto& row = js[i];
        if (!row.is_array()) {
            throw ParseError("mesh JSON: simplex " + std::to_string(i) + " must be an array");
        }
        Simplex s;
        for (const auto& v : row) {
            if (!v.is_number_integer()) {
                throw ParseError("mesh JSON: simplex " + std::to_string(i) + " has a non-integer index");
            }
            s.push_back(v.get<Index>());
        }
        tops.push_back(std::move(s));
    }
    return {n, std::move(verts), std::move(tops)};
}

GeometricComplex parse_text(std::istream& in)
{
    long long n = 0, d = 0, m0 = 0, mn = 0;
    if (!(in >> n >> d >> m0 >> mn) || n < 0 || d < 0 || m0 < 0 || mn < 0) {
        throw ParseError("mesh text: header must be \"n d m0 mn\" with non-negative integers");
    }
    Eigen::MatrixXd verts(m0, d);
    for (long long i = 0; i < m0; ++i) {
        for (long long j = 0; j < d; ++j) {
            if (!(in >> verts(i, j))) {
                throw ParseError("mesh text: truncated coordinates at vertex " + std::to_string(i));
            }
        }
    }
    std::vector<Simplex> tops(static_cast<std::size_t>(mn), Simplex(static_cast<std::size_t>(n + 1)));
    for (long long i = 0; i < mn; ++i) {
        for (auto& v : tops[i]) {
            if (!(in >> v)) {
                throw ParseError("mesh text: truncated simplex " + std::to_string(i));
            }
        }
    }
    return {static_cast<int>(n), std::move(verts), std::move(tops)};
}

} // namespace

GeometricComplex load_mesh(std::istream& in, MeshFormat format)
{
    return format == MeshFormat::Json ? parse_json(in) : parse_text(in);
}

GeometricComplex load_mesh_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open mesh file " + path.string());
    }
    const MeshFormat fmt = path.extension() == ".json" ? MeshFormat::Json : MeshFormat::Text;
    try {
        return load_mesh(in, fmt);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_mesh(std::ostream& out, const GeometricComplex& gc, MeshFormat format)
{
    const auto& v = gc.vertices();
    if (format == MeshFormat::Json) {
        nlohmann::json doc;
        doc["dimension"] = gc.complex_dim();
        doc["vertices"] = nlohmann::json::array();
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index j = 0; j < v.cols(); ++j) {
                row.push_back(v(i, j));
            }
            doc["vertices"].push_back(std::move(row));
        }
        doc["simplices"] = gc.top_simplices();
        out << doc.dump() << '\n';
        return;
    }
    out << gc.complex_dim() << ' ' << gc.embed_dim() << ' ' << gc.vertex_count() << ' ' << gc.top_count()
        << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        for (Eigen::Index j = 0; j < v.cols(); ++j) {
            out << (j ? " " : "") << v(i, j);
        }
        out << '\n';
    }
    for (const auto& s : gc.top_simplices()) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            out << (j ? " " : "") << s[j];
        }
        out << '\n';
    }
}

} // namespace dectk
