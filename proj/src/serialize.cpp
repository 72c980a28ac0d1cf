#include "siegeltheta/serialize.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace siegeltheta {

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return Complex(j[0].get<double>(), j[1].get<double>());
    }
    throw std::invalid_argument("expected a number or [re, im], got " + j.dump());
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("expected a non-empty nested array for a matrix");
    }
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
            throw std::invalid_argument("ragged matrix rows in JSON input");
        }
        for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    return m;
}

Json to_json(const SiegelPoint& p) {
    return Json{{"genus", p.genus()}, {"entries", matrix_to_json(p.entries())}};
}

Json to_json(const ProjectivePoint& p) {
    Json coords = Json::array();
    for (int i = 0; i < p.coords.size(); ++i) coords.push_back(complex_to_json(p.coords(i)));
    return Json{{"labels", p.labels}, {"coords", std::move(coords)}};
}

Json to_json(const MixingMatrix& m) {
    return Json{{"n", m.n},
                {"row_labels", m.row_labels},
                {"col_labels", m.col_labels},
                {"entries", matrix_to_json(m.entries)}};
}

Json to_json(const HermitianForm& h) {
    Json labels = Json::array();
    for (const auto& [i, j] : sym_labels(h.genus)) {
        labels.push_back(Json::array({i + 1, j + 1}));
    }
    return Json{{"genus", h.genus},
                {"labels", std::move(labels)},
                {"entries", matrix_to_json(h.entries)}};
}

Json to_json(const NondescentReport& r) {
    return Json{{"genus", r.genus},
                {"first_slice_norm", r.first_slice_norm},
                {"last_slice_norm", r.last_slice_norm},
                {"first_slice_form", r.first_slice_form},
                {"last_slice_form", r.last_slice_form},
                {"first_threshold", r.first_threshold},
                {"last_floor", r.last_floor},
                {"swap_residual", r.swap_residual},
                {"swap_exact", r.swap_exact},
                {"differ", r.differ}};
}

SiegelPoint siegel_from_json(const Json& j, double tol) {
    if (j.is_object()) {
        if (!j.contains("entries")) {
            throw std::invalid_argument("Siegel point object must contain \"entries\"");
        }
        return SiegelPoint(matrix_from_json(j.at("entries")), tol);
    }
    return SiegelPoint(matrix_from_json(j), tol);
}

namespace {

// a+bi / a-bi / bi / a, with scientific notation allowed in either part.
Complex parse_complex_literal(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    // locate a +/- separating the two parts (not leading, not an exponent sign)
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
        }
    }
    const auto parse_part = [](const std::string& part, bool imag) -> double {
        std::string body = part;
        if (imag) {
            if (body.empty() || body.back() != 'i') {
                throw std::invalid_argument("imaginary part must end in 'i'");
            }
            body.pop_back();
            if (body.empty() || body == "+") return 1.0;
            if (body == "-") return -1.0;
        }
        std::size_t used = 0;
        const double v = std::stod(body, &used);
        if (used != body.size()) throw std::invalid_argument("bad numeric literal: " + part);
        return v;
    };

    if (split == std::string::npos) {
        if (s.back() == 'i') return Complex(0.0, parse_part(s, true));
        return Complex(parse_part(s, false), 0.0);
    }
    const std::string head = s.substr(0, split);
    const std::string tail = s.substr(split);
    if (tail.back() == 'i') return Complex(parse_part(head, false), parse_part(tail, true));
    if (head.back() == 'i') return Complex(parse_part(tail, false), parse_part(head, true));
    throw std::invalid_argument("complex literal has no imaginary marker: " + raw);
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

Complex parse_complex_arg(const std::string& text) {
    std::string s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw std::invalid_argument("empty complex argument");
    if (s.front() == '[') {
        Json j;
        try {
            j = Json::parse(s);
        } catch (const Json::exception& e) {
            throw std::invalid_argument(std::string("bad JSON complex: ") + e.what());
        }
        return complex_from_json(j);
    }
    return parse_complex_literal(s);
}

Eigen::MatrixXcd parse_matrix_arg(const std::string& text) {
    std::string s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw std::invalid_argument("empty matrix argument");

    if (s.front() == '[' || s.front() == '{') {
        Json j;
        try {
            j = Json::parse(s);
        } catch (const Json::exception& e) {
            throw std::invalid_argument(std::string("bad JSON matrix: ") + e.what());
        }
        if (j.is_object()) {
            if (!j.contains("entries")) {
                throw std::invalid_argument("matrix object must contain \"entries\"");
            }
            return matrix_from_json(j.at("entries"));
        }
        return matrix_from_json(j);
    }

    if (s.rfind("diag(", 0) == 0 && s.back() == ')') {
        const auto parts = split_top_level(s.substr(5, s.size() - 6), ',');
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(parts.size(), parts.size());
        for (std::size_t k = 0; k < parts.size(); ++k) {
            m(static_cast<int>(k), static_cast<int>(k)) = parse_complex_literal(parts[k]);
        }
        return m;
    }

    // single complex literal, else a file path
    try {
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = parse_complex_literal(s);
        return m;
    } catch (const std::exception&) {
    }
    std::ifstream in(s);
    if (!in) throw std::invalid_argument("cannot read matrix file: " + s);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("bad JSON in file ") + s + ": " + e.what());
    }
    if (j.is_object()) {
        if (!j.contains("entries")) {
            throw std::invalid_argument("matrix object must contain \"entries\"");
        }
        return matrix_from_json(j.at("entries"));
    }
    return matrix_from_json(j);
}

Eigen::VectorXcd parse_vector_arg(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("bad JSON vector: ") + e.what());
    }
    if (!j.is_array()) throw std::invalid_argument("vector must be a JSON array");
    Eigen::VectorXcd v(static_cast<int>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        v(static_cast<int>(k)) = complex_from_json(j[k]);
    }
    return v;
}

Characteristic parse_characteristic(const std::string& text) {
    const auto bar = text.find('|');
    if (bar == std::string::npos) {
        throw std::invalid_argument("characteristic must be \"eps|eps'\", got: " + text);
    }
    const auto parse_half = [](const std::string& part) -> Eigen::VectorXi {
        if (part.find(',') != std::string::npos) {
            const auto items = split_top_level(part, ',');
            Eigen::VectorXi v(static_cast<int>(items.size()));
            for (std::size_t k = 0; k < items.size(); ++k) {
                std::size_t used = 0;
                v(static_cast<int>(k)) = std::stoi(items[k], &used);
                if (used != items[k].size()) {
                    throw std::invalid_argument("bad characteristic entry: " + items[k]);
                }
            }
            return v;
        }
        Eigen::VectorXi v(static_cast<int>(part.size()));
        for (std::size_t k = 0; k < part.size(); ++k) {
            if (!std::isdigit(static_cast<unsigned char>(part[k]))) {
                throw std::invalid_argument("bad characteristic digit: " + part);
            }
            v(static_cast<int>(k)) = part[k] - '0';
        }
        if (v.size() == 0) throw std::invalid_argument("empty characteristic half");
        return v;
    };
    Eigen::VectorXi e = parse_half(text.substr(0, bar));
    Eigen::VectorXi ep = parse_half(text.substr(bar + 1));
    if (e.size() != ep.size()) {
        throw std::invalid_argument("characteristic halves have different lengths");
    }
    return Characteristic(std::move(e), std::move(ep));
}

}  // namespace siegeltheta
