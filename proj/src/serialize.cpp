#include "dectk/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "dectk/errors.hpp"

namespace dectk {

namespace {

nlohmann::json cochain_object(const Cochain& c, const AbstractComplex& ac)
{
    nlohmann::json j;
    j["degree"] = c.degree;
    j["fingerprint"] = fingerprint_hex(ac.fingerprint());
    j["values"] = std::vector<double>(c.values.data(), c.values.data() + c.values.size());
    return j;
}

Cochain from_object(const nlohmann::json& j, const AbstractComplex& ac)
{
    if (!j.is_object() || !j.contains("degree") || !j.contains("values")) {
        throw ParseError("cochain JSON needs \"degree\" and \"values\"");
    }
    Cochain c;
    try {
        c.degree = j.at("degree").get<int>();
        const auto values = j.at("values").get<std::vector<double>>();
        c.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed cochain: ") + e.what());
    }
    if (j.contains("fingerprint")) {
        const auto fp = j.at("fingerprint").get<std::string>();
        if (fp != fingerprint_hex(ac.fingerprint())) {
            throw ValidationError("cochain fingerprint " + fp + " does not match the complex ("
                                  + fingerprint_hex(ac.fingerprint()) + ")");
        }
    }
    if (c.degree < 0 || c.degree > ac.dim()) {
        throw ValidationError("cochain degree " + std::to_string(c.degree) + " outside the complex");
    }
    if (static_cast<std::size_t>(c.values.size()) != ac.count(c.degree)) {
        throw ValidationError("cochain has " + std::to_string(c.values.size()) + " values but the complex has "
                              + std::to_string(ac.count(c.degree)) + " " + std::to_string(c.degree)
                              + "-simplices");
    }
    return c;
}

nlohmann::json parse_text(const std::string& text)
{
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

void write_coo(std::ostream& out, const IntSparseMatrix& m)
{
    out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    for (const auto& e : m.entries()) {
        out << e.row << ' ' << e.col << ' ' << e.value << '\n';
    }
}

void write_coo(std::ostream& out, const Eigen::SparseMatrix<double>& m)
{
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
    out << std::setprecision(17);
    for (int c = 0; c < m.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it) {
            out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
        }
    }
}

Eigen::SparseMatrix<double> read_coo(std::istream& in)
{
    long rows = 0, cols = 0, nnz = 0;
    if (!(in >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
        throw ParseError("coordinate list needs a \"rows cols nnz\" header");
    }
    std::vector<Eigen::Triplet<double>> trips;
    for (long k = 0; k < nnz; ++k) {
        long r = 0, c = 0;
        double v = 0.0;
        if (!(in >> r >> c >> v)) {
            throw ParseError("coordinate list ends after " + std::to_string(k) + " of " + std::to_string(nnz)
                             + " entries");
        }
        if (r < 0 || r >= rows || c < 0 || c >= cols) {
            throw ParseError("entry " + std::to_string(k) + " is outside the matrix");
        }
        trips.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
    }
    Eigen::SparseMatrix<double> m(rows, cols);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

std::string fingerprint_hex(std::uint64_t fp)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fp));
    return buf;
}

std::string cochain_json(const Cochain& c, const AbstractComplex& ac)
{
    return cochain_object(c, ac).dump(2);
}

std::string cochain_basis_json(const std::vector<Cochain>& basis, const AbstractComplex& ac)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : basis) {
        arr.push_back(cochain_object(c, ac));
    }
    return arr.dump(2);
}

Cochain parse_cochain(const std::string& text, const AbstractComplex& ac)
{
    return from_object(parse_text(text), ac);
}

std::vector<Cochain> parse_cochain_basis(const std::string& text, const AbstractComplex& ac)
{
    const auto j = parse_text(text);
    std::vector<Cochain> out;
    if (j.is_array()) {
        for (const auto& item : j) {
            out.push_back(from_object(item, ac));
        }
    } else {
        out.push_back(from_object(j, ac));
    }
    return out;
}

Cochain load_cochain_file(const std::filesystem::path& path, const AbstractComplex& ac)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open cochain file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_cochain(buf.str(), ac);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

} // namespace dectk
