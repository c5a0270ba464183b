#include "superplane/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "superplane/error.hpp"

namespace superplane::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    if (sep == ' ') {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            if (i >= line.size()) break;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            out.push_back(line.substr(i, j - i));
            i = j;
        }
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_real(std::string_view s, int line, std::string_view what) {
    double v = 0.0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("invalid " + std::string(what) + " '" + std::string(s) + "'", line);
    }
    return v;
}

long parse_integer(std::string_view s, int line, std::string_view what) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("invalid " + std::string(what) + " '" + std::string(s) + "'", line);
    }
    return v;
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string serialize_poly(const MultiPoly& p) {
    std::ostringstream os;
    os << "poly nvars=" << p.nvars() << '\n';
    for (const auto& [e, c] : p.terms()) {
        os << format_real(c);
        for (unsigned x : e) os << ' ' << x;
        os << '\n';
    }
    return os.str();
}

std::string serialize_unipoly(const UniPoly& p) {
    std::string out = "unipoly:";
    for (double c : p.coeffs()) out += ' ' + format_real(c);
    return out + '\n';
}

UniPoly parse_unipoly(std::string_view text) {
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int lineno = static_cast<int>(i) + 1;
        const auto line = trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        constexpr std::string_view key = "unipoly:";
        if (line.substr(0, key.size()) != key) throw ParseError("expected 'unipoly: c0 c1 ...'", lineno);
        std::vector<double> coeffs;
        for (auto f : split(line.substr(key.size()), ' ')) coeffs.push_back(parse_real(f, lineno, "coefficient"));
        if (coeffs.empty()) throw ParseError("unipoly needs at least one coefficient", lineno);
        return UniPoly(std::move(coeffs));
    }
    throw ParseError("missing 'unipoly:' line");
}

MultiPoly parse_poly(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t i = 0;
    int lineno = 0;
    std::size_t nvars = 0;
    for (; i < lines.size(); ++i) {
        lineno = static_cast<int>(i) + 1;
        const auto line = trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split(line, ' ');
        constexpr std::string_view key = "nvars=";
        if (fields.size() != 2 || fields[0] != "poly" || fields[1].substr(0, key.size()) != key) {
            throw ParseError("expected header 'poly nvars=<d>'", lineno);
        }
        const long d = parse_integer(fields[1].substr(key.size()), lineno, "variable count");
        if (d < 1) throw ParseError("variable count must be positive", lineno);
        nvars = static_cast<std::size_t>(d);
        ++i;
        break;
    }
    if (nvars == 0) throw ParseError("missing 'poly nvars=<d>' header");

    MultiPoly p(nvars);
    for (; i < lines.size(); ++i) {
        lineno = static_cast<int>(i) + 1;
        const auto line = trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split(line, ' ');
        if (fields.size() != nvars + 1) {
            throw ParseError("expected a coefficient and " + std::to_string(nvars) + " exponents, got " +
                                 std::to_string(fields.size()) + " fields",
                             lineno);
        }
        const double c = parse_real(fields[0], lineno, "coefficient");
        Exponents e(nvars);
        for (std::size_t j = 0; j < nvars; ++j) {
            const long x = parse_integer(fields[j + 1], lineno, "exponent");
            if (x < 0) throw ParseError("exponents must be non-negative", lineno);
            e[j] = static_cast<unsigned>(x);
        }
        p.add_term(e, c);
    }
    return p;
}

std::string serialize_network(const NetworkSpec& net) {
    // Written by hand so that every real carries 17 significant digits.
    std::ostringstream os;
    os << "{\n  \"input_dim\": " << net.input_dim() << ",\n  \"layers\": [\n";
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
        const auto& layer = net.layers()[l];
        os << "    {\n      \"weights\": [\n";
        for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
            os << "        [";
            for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
                os << (c ? ", " : "") << format_real(layer.weights(r, c));
            }
            os << ']' << (r + 1 < layer.weights.rows() ? "," : "") << '\n';
        }
        os << "      ],\n      \"activation\": ";
        const auto& act = layer.activation;
        switch (act.kind()) {
            case Activation::Kind::Identity: os << "{\"kind\": \"identity\"}"; break;
            case Activation::Kind::Power: os << "{\"kind\": \"power\", \"k\": " << act.exponent() << '}'; break;
            case Activation::Kind::Poly: {
                os << "{\"kind\": \"poly\", \"coeffs\": [";
                const auto& c = act.as_unipoly().coeffs();
                for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << format_real(c[i]);
                os << "]}";
                break;
            }
        }
        os << "\n    }" << (l + 1 < net.layers().size() ? "," : "") << '\n';
    }
    os << "  ]\n}\n";
    return os.str();
}

NetworkSpec parse_network(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("network JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("network JSON: top level must be an object");
    if (!doc.contains("input_dim") || !doc["input_dim"].is_number_integer() || doc["input_dim"].get<long>() < 1) {
        throw ParseError("network JSON: 'input_dim' must be a positive integer");
    }
    if (!doc.contains("layers") || !doc["layers"].is_array()) {
        throw ParseError("network JSON: 'layers' must be an array");
    }

    std::vector<LayerSpec> layers;
    const auto& jl = doc["layers"];
    for (std::size_t l = 0; l < jl.size(); ++l) {
        const std::string where = "layer " + std::to_string(l) + ": ";
        const auto& item = jl[l];
        if (!item.is_object() || !item.contains("weights") || !item["weights"].is_array()) {
            throw StructuralError(where + "missing 'weights' array");
        }
        const auto& rows = item["weights"];
        if (rows.empty()) throw StructuralError(where + "needs at least one output node");
        const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
        Eigen::MatrixXd w(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!rows[r].is_array() || rows[r].size() != cols) {
                throw StructuralError(where + "weights row " + std::to_string(r) + " has the wrong length");
            }
            for (std::size_t c = 0; c < cols; ++c) {
                if (!rows[r][c].is_number()) throw StructuralError(where + "weights must be numbers");
                w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
            }
        }

        Activation act = Activation::identity();
        if (item.contains("activation")) {
            const auto& ja = item["activation"];
            const std::string kind = ja.is_object() && ja.contains("kind") && ja["kind"].is_string()
                                         ? ja["kind"].get<std::string>()
                                         : std::string{};
            if (kind == "identity") {
                act = Activation::identity();
            } else if (kind == "power") {
                if (!ja.contains("k") || !ja["k"].is_number_integer() || ja["k"].get<long>() < 1) {
                    throw StructuralError(where + "power activation needs a positive integer 'k'");
                }
                act = Activation::power(ja["k"].get<unsigned>());
            } else if (kind == "poly") {
                if (!ja.contains("coeffs") || !ja["coeffs"].is_array() || ja["coeffs"].empty()) {
                    throw StructuralError(where + "poly activation needs a non-empty 'coeffs' array");
                }
                std::vector<double> coeffs;
                for (const auto& c : ja["coeffs"]) {
                    if (!c.is_number()) throw StructuralError(where + "poly coefficients must be numbers");
                    coeffs.push_back(c.get<double>());
                }
                act = Activation::poly(UniPoly(std::move(coeffs)));
            } else {
                throw StructuralError(where + "activation kind must be identity, power or poly");
            }
        }
        layers.push_back({std::move(w), std::move(act)});
    }
    return NetworkSpec(doc["input_dim"].get<std::size_t>(), std::move(layers));
}

std::string serialize_dataset(const Dataset& ds) {
    std::ostringstream os;
    for (std::size_t j = 0; j < ds.features(); ++j) os << 'f' << (j + 1) << ',';
    os << "y\n";
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        for (std::size_t j = 0; j < ds.features(); ++j) {
            os << format_real(ds.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) << ',';
        }
        os << format_real(ds.y[i]) << '\n';
    }
    return os.str();
}

Dataset parse_dataset(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t i = 0;
    std::size_t d = 0;
    for (; i < lines.size(); ++i) {
        const auto line = trim(lines[i]);
        if (line.empty()) continue;
        const auto header = split(line, ',');
        const int lineno = static_cast<int>(i) + 1;
        if (header.size() < 2 || header.back() != "y") {
            throw ParseError("dataset header must be f1,...,fd,y", lineno);
        }
        d = header.size() - 1;
        for (std::size_t j = 0; j < d; ++j) {
            if (header[j] != "f" + std::to_string(j + 1)) {
                throw ParseError("dataset header column " + std::to_string(j + 1) + " must be f" + std::to_string(j + 1),
                                 lineno);
            }
        }
        ++i;
        break;
    }
    if (d == 0) throw ParseError("dataset is missing its header");

    std::vector<std::vector<double>> rows;
    std::vector<double> y;
    for (; i < lines.size(); ++i) {
        const auto line = trim(lines[i]);
        if (line.empty()) continue;
        const int lineno = static_cast<int>(i) + 1;
        const auto fields = split(line, ',');
        if (fields.size() != d + 1) {
            throw ParseError("expected " + std::to_string(d + 1) + " fields, got " + std::to_string(fields.size()), lineno);
        }
        std::vector<double> row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = parse_real(fields[j], lineno, "feature f" + std::to_string(j + 1));
        rows.push_back(std::move(row));
        y.push_back(parse_real(fields[d], lineno, "target y"));
    }
    if (rows.empty()) throw ParseError("dataset has no examples");

    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t j = 0; j < d; ++j) X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = rows[r][j];
    }
    return Dataset(std::move(X), std::move(y));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    out << contents;
}

namespace {

template <class F>
auto with_path(const std::filesystem::path& path, F&& parse) {
    try {
        return parse(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const StructuralError& e) {
        throw StructuralError(path.string() + ": " + e.what());
    }
}

}  // namespace

MultiPoly load_poly(const std::filesystem::path& path) {
    return with_path(path, [](const std::string& t) { return parse_poly(t); });
}

NetworkSpec load_network(const std::filesystem::path& path) {
    return with_path(path, [](const std::string& t) { return parse_network(t); });
}

Dataset load_dataset(const std::filesystem::path& path) {
    return with_path(path, [](const std::string& t) { return parse_dataset(t); });
}

}  // namespace superplane::io
