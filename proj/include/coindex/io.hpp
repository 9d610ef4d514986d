#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coindex/joint_stats.hpp"
#include "coindex/mfields.hpp"
#include "coindex/mfunction.hpp"
#include "coindex/set_indices.hpp"
#include "coindex/sliding_squares.hpp"

namespace coindex {

/// Raised when an input file cannot be read or does not match its
/// format. The message always starts with the file path.
class data_error : public std::runtime_error {
public:
    data_error(const std::filesystem::path& path, const std::string& message)
        : std::runtime_error(path.string() + ": " + message) {}
};

namespace detail {

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error(path, "cannot open for reading");
    return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error(path, "cannot open for writing");
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && std::isfinite(out);
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

/// Reads a CSV of fixed-width numeric rows. A first line whose fields do
/// not all parse as numbers is treated as a header and skipped. Blank
/// lines are ignored.
inline std::vector<std::vector<double>> load_numeric_csv(
    const std::filesystem::path& path, std::size_t expect_cols) {
    std::ifstream in = open_input(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view sv = trim(line);
        if (sv.empty()) continue;
        const auto fields = split_csv_line(sv);
        std::vector<double> row(fields.size());
        bool all_numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i)
            all_numeric = all_numeric && parse_double(fields[i], row[i]);
        if (!all_numeric) {
            if (first_content_line) {
                first_content_line = false;
                continue;  // header
            }
            throw data_error(path, "line " + std::to_string(line_no) +
                                       ": expected numeric fields");
        }
        first_content_line = false;
        if (expect_cols != 0 && row.size() != expect_cols)
            throw data_error(path, "line " + std::to_string(line_no) + ": expected " +
                                       std::to_string(expect_cols) + " columns, got " +
                                       std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// JSON collections

/// A discrete collection loaded from JSON; exactly one of the three
/// containers is active, per kind.
struct Collection {
    enum class Kind { Set, Multiset, Weighted };
    Kind kind = Kind::Set;
    Set set;
    Multiset multiset;
    WeightedSet weighted;
};

/// Loads a collection from a JSON object with a "kind" discriminator:
///   {"kind": "set",      "elements": ["a", "b", ...]}
///   {"kind": "multiset", "multiplicities": {"a": 3, ...}}
///   {"kind": "weighted", "weights": {"a": 2.0, ...}}
/// Multiplicities must be >= 0 (zero entries are dropped), weights > 0.
inline Collection load_collection(const std::filesystem::path& path) {
    std::ifstream in = detail::open_input(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw data_error(path, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        throw data_error(path, "expected an object with a \"kind\" string");
    const std::string kind = doc["kind"].get<std::string>();
    Collection out;
    try {
        if (kind == "set") {
            out.kind = Collection::Kind::Set;
            if (!doc.contains("elements") || !doc["elements"].is_array())
                throw data_error(path, "kind \"set\" needs an \"elements\" array");
            for (const auto& e : doc["elements"]) {
                if (!e.is_string())
                    throw data_error(path, "set elements must be strings");
                out.set.insert(e.get<std::string>());
            }
        } else if (kind == "multiset") {
            out.kind = Collection::Kind::Multiset;
            if (!doc.contains("multiplicities") || !doc["multiplicities"].is_object())
                throw data_error(path,
                                 "kind \"multiset\" needs a \"multiplicities\" object");
            for (const auto& [key, value] : doc["multiplicities"].items()) {
                if (!value.is_number())
                    throw data_error(path, "multiplicities must be numbers");
                out.multiset.set_count(key, value.get<double>());
            }
        } else if (kind == "weighted") {
            out.kind = Collection::Kind::Weighted;
            if (!doc.contains("weights") || !doc["weights"].is_object())
                throw data_error(path, "kind \"weighted\" needs a \"weights\" object");
            for (const auto& [key, value] : doc["weights"].items()) {
                if (!value.is_number())
                    throw data_error(path, "weights must be numbers");
                out.weighted.set_weight(key, value.get<double>());
            }
        } else {
            throw data_error(path, "unknown kind \"" + kind + "\"");
        }
    } catch (const std::invalid_argument& e) {
        throw data_error(path, e.what());
    }
    return out;
}

inline Set load_set(const std::filesystem::path& path) {
    Collection c = load_collection(path);
    if (c.kind != Collection::Kind::Set)
        throw data_error(path, "expected kind \"set\"");
    return std::move(c.set);
}

inline Multiset load_multiset(const std::filesystem::path& path) {
    Collection c = load_collection(path);
    if (c.kind != Collection::Kind::Multiset)
        throw data_error(path, "expected kind \"multiset\"");
    return std::move(c.multiset);
}

inline WeightedSet load_weighted_set(const std::filesystem::path& path) {
    Collection c = load_collection(path);
    if (c.kind != Collection::Kind::Weighted)
        throw data_error(path, "expected kind \"weighted\"");
    return std::move(c.weighted);
}

/// Loads an expression environment: a JSON object mapping set names to
/// arrays of element strings. Names must be valid expression identifiers
/// ([A-Za-z_][A-Za-z0-9_]*).
inline std::map<std::string, Set> load_set_env(const std::filesystem::path& path) {
    std::ifstream in = detail::open_input(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw data_error(path, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw data_error(path, "expected an object mapping names to element arrays");
    auto valid_name = [](const std::string& name) {
        if (name.empty()) return false;
        auto head = static_cast<unsigned char>(name[0]);
        if (!std::isalpha(head) && name[0] != '_') return false;
        for (char c : name.substr(1))
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
        return true;
    };
    std::map<std::string, Set> env;
    for (const auto& [name, value] : doc.items()) {
        if (!valid_name(name))
            throw data_error(path, "invalid set name \"" + name + "\"");
        if (!value.is_array())
            throw data_error(path, "set \"" + name + "\" must be an array of strings");
        Set s;
        for (const auto& e : value) {
            if (!e.is_string())
                throw data_error(path, "set \"" + name + "\" must contain only strings");
            s.insert(e.get<std::string>());
        }
        env.emplace(name, std::move(s));
    }
    return env;
}

// ---------------------------------------------------------------------------
// CSV formats

/// Loads a matrix as headerless CSV: one row per line, non-negative
/// finite entries, all rows the same length.
inline NonNegativeMatrix load_matrix_csv(const std::filesystem::path& path) {
    const auto rows = detail::load_numeric_csv(path, 0);
    if (rows.empty()) throw data_error(path, "matrix has no rows");
    try {
        return NonNegativeMatrix::from_rows(rows);
    } catch (const std::invalid_argument& e) {
        throw data_error(path, e.what());
    }
}

/// Loads a sampled function from `x,value` rows (header optional). The x
/// column must increase in uniform steps; spacing deviations beyond 1e-9
/// relative are rejected.
inline MFunction load_mfunction_csv(const std::filesystem::path& path) {
    const auto rows = detail::load_numeric_csv(path, 2);
    if (rows.size() < 2) throw data_error(path, "need at least 2 samples");
    MFunction f;
    f.x0 = rows[0][0];
    f.dx = rows[1][0] - rows[0][0];
    if (!(f.dx > 0.0)) throw data_error(path, "x column must be strictly increasing");
    f.samples.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        f.samples[i] = rows[i][1];
        if (i > 0) {
            const double step = rows[i][0] - rows[i - 1][0];
            if (std::fabs(step - f.dx) > 1e-9 * std::fabs(f.dx))
                throw data_error(path, "x column is not uniformly spaced (row " +
                                           std::to_string(i + 1) + ")");
        }
    }
    return f;
}

/// Loads 2-d points from `x,y` rows (header optional).
inline std::vector<std::array<double, 2>> load_points_csv(
    const std::filesystem::path& path) {
    const auto rows = detail::load_numeric_csv(path, 2);
    if (rows.empty()) throw data_error(path, "no points");
    std::vector<std::array<double, 2>> points(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) points[i] = {rows[i][0], rows[i][1]};
    return points;
}

/// Loads paired samples from two-column `x,y` rows (header optional).
inline std::pair<std::vector<double>, std::vector<double>> load_paired_csv(
    const std::filesystem::path& path) {
    const auto rows = detail::load_numeric_csv(path, 2);
    std::pair<std::vector<double>, std::vector<double>> out;
    out.first.resize(rows.size());
    out.second.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.first[i] = rows[i][0];
        out.second[i] = rows[i][1];
    }
    return out;
}

inline void write_mfunction_csv(const MFunction& f, std::ostream& os) {
    os << "x,value\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        os << detail::format_double(f.x_at(i)) << ','
           << detail::format_double(f.samples[i]) << '\n';
}

inline void write_mfunction_csv(const MFunction& f, const std::filesystem::path& path) {
    std::ofstream os = detail::open_output(path);
    write_mfunction_csv(f, os);
}

/// Writes an index field as `x,r,value` rows, row-major over ratios: all
/// offsets of the first ratio, then the next ratio, and so on.
inline void write_index_field_csv(const IndexField& field, std::ostream& os) {
    os << "x,r,value\n";
    for (std::size_t ri = 0; ri < field.ratios.size(); ++ri)
        for (std::size_t xi = 0; xi < field.offsets.size(); ++xi)
            os << detail::format_double(field.offsets[xi]) << ','
               << detail::format_double(field.ratios[ri]) << ','
               << detail::format_double(field.values[ri * field.offsets.size() + xi])
               << '\n';
}

inline void write_index_field_csv(const IndexField& field,
                                  const std::filesystem::path& path) {
    std::ofstream os = detail::open_output(path);
    write_index_field_csv(field, os);
}

/// Writes constant-ratio profiles as `b,x,value` rows, one block per b.
inline void write_slices_csv(const std::vector<IndexSlice>& slices, std::ostream& os) {
    os << "b,x,value\n";
    for (const IndexSlice& s : slices)
        for (std::size_t i = 0; i < s.offsets.size(); ++i)
            os << detail::format_double(s.small_side) << ','
               << detail::format_double(s.offsets[i]) << ','
               << detail::format_double(s.values[i]) << '\n';
}

inline void write_slices_csv(const std::vector<IndexSlice>& slices,
                             const std::filesystem::path& path) {
    std::ofstream os = detail::open_output(path);
    write_slices_csv(slices, os);
}

/// Writes scatter pairs as `mA,mB,region` rows; region is U, D or I.
inline void write_scatter_csv(const std::vector<ScatterPoint>& points,
                              std::ostream& os) {
    os << "mA,mB,region\n";
    for (const ScatterPoint& p : points)
        os << detail::format_double(p.a) << ',' << detail::format_double(p.b) << ','
           << p.region << '\n';
}

inline void write_scatter_csv(const std::vector<ScatterPoint>& points,
                              const std::filesystem::path& path) {
    std::ofstream os = detail::open_output(path);
    write_scatter_csv(points, os);
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "rho,pearson,jaccard_correlation\n";
    for (const SweepRow& r : rows)
        os << detail::format_double(r.rho) << ',' << detail::format_double(r.pearson)
           << ',' << detail::format_double(r.jaccard_correlation) << '\n';
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows,
                            const std::filesystem::path& path) {
    std::ofstream os = detail::open_output(path);
    write_sweep_csv(rows, os);
}

// ---------------------------------------------------------------------------
// PGM images

/// Loads a plain-text (P2) PGM image. Gray levels are rescaled to [0, 1]
/// by the header's maximum value; pixel spacing is 1.
inline MField2D load_pgm(const std::filesystem::path& path) {
    std::ifstream in = detail::open_input(path);
    std::string token;
    auto next_token = [&](const char* what) {
        while (in >> token) {
            if (token[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return;
        }
        throw data_error(path, std::string("unexpected end of file reading ") + what);
    };
    next_token("magic number");
    if (token != "P2") throw data_error(path, "expected plain PGM (magic P2)");
    auto next_int = [&](const char* what) {
        next_token(what);
        long v = 0;
        const auto* first = token.data();
        const auto* last = token.data() + token.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || v < 0)
            throw data_error(path, std::string("invalid ") + what + " \"" + token + "\"");
        return v;
    };
    const long width = next_int("width");
    const long height = next_int("height");
    const long maxval = next_int("maximum gray value");
    if (width <= 0 || height <= 0) throw data_error(path, "empty image");
    if (maxval <= 0) throw data_error(path, "maximum gray value must be > 0");
    MField2D img;
    img.width = static_cast<std::size_t>(width);
    img.height = static_cast<std::size_t>(height);
    img.samples.resize(img.width * img.height);
    for (double& s : img.samples) {
        const long v = next_int("pixel");
        if (v > maxval) throw data_error(path, "pixel exceeds maximum gray value");
        s = static_cast<double>(v) / static_cast<double>(maxval);
    }
    return img;
}

/// Writes a plain-text (P2) PGM image with 255 gray levels. Samples are
/// clamped to [0, 1] before quantization.
inline void write_pgm(const MField2D& img, const std::filesystem::path& path) {
    std::ofstream os = detail::open_output(path);
    os << "P2\n" << img.width << ' ' << img.height << "\n255\n";
    for (std::size_t y = 0; y < img.height; ++y) {
        for (std::size_t x = 0; x < img.width; ++x) {
            const double v = std::clamp(img.at(x, y), 0.0, 1.0);
            os << static_cast<int>(std::lround(v * 255.0));
            os << (x + 1 == img.width ? '\n' : ' ');
        }
    }
}

}  // namespace coindex
