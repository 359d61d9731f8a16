#include "radbound/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "radbound/error.hpp"

namespace radbound {

using nlohmann::json;

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

double as_real(const json& v, const char* what) {
    if (!v.is_number()) {
        throw FormatError(std::string(what) + " must be a number");
    }
    return v.get<double>();
}

std::vector<double> as_real_array(const json& v, const char* what) {
    if (!v.is_array()) {
        throw FormatError(std::string(what) + " must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        out.push_back(as_real(x, what));
    }
    return out;
}

const json& require(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw FormatError(std::string("missing key \"") + key + "\"");
    }
    return doc.at(key);
}

Matrix matrix_from_rows(const json& rows, std::size_t index) {
    const std::string what = "layer " + std::to_string(index + 1);
    if (!rows.is_array() || rows.empty()) {
        throw FormatError(what + " must be a non-empty array of rows");
    }
    const std::size_t cols = rows.front().is_array() ? rows.front().size() : 0;
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto row = as_real_array(rows[r], what.c_str());
        if (row.size() != cols) {
            throw FormatError(what + " has ragged rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
        }
    }
    return m;
}

void append_row(std::string& out, const double* data, Eigen::Index count, Eigen::Index stride) {
    out += '[';
    for (Eigen::Index c = 0; c < count; ++c) {
        if (c) out += ", ";
        out += format_double(data[c * stride]);
    }
    out += ']';
}

}  // namespace

NetworkSpec network_from_json(const json& doc) {
    const json& layers = require(doc, "layers");
    if (!layers.is_array()) {
        throw FormatError("\"layers\" must be an array of matrices");
    }
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        mats.push_back(matrix_from_rows(layers[i], i));
    }
    return NetworkSpec(std::move(mats));
}

InputSet inputs_from_json(const json& doc) {
    const double radius = as_real(require(doc, "B"), "B");
    const json& pts = require(doc, "points");
    if (!pts.is_array()) {
        throw FormatError("\"points\" must be an array of vectors");
    }
    std::vector<std::vector<double>> points;
    for (const auto& p : pts) {
        points.push_back(as_real_array(p, "point"));
    }
    return InputSet(points, radius);
}

NormBudget budget_from_json(const json& doc) {
    return NormBudget(as_real_array(require(doc, "M_F"), "M_F"), as_real_array(require(doc, "M_op"), "M_op"),
                      as_real(require(doc, "B"), "B"));
}

json to_json(const NormBudget& budget) {
    return json{{"B", budget.radius()}, {"M_F", budget.frobenius_caps()}, {"M_op", budget.operator_caps()}};
}

json to_json(const Subsequence& seq) {
    return json(seq.breakpoints());
}

json to_json(const BoundReport& report) {
    json out{{"method", std::string(to_string(report.method))},
             {"value", report.value},
             {"n", report.n},
             {"B", report.radius}};
    out["subsequence"] = report.subsequence ? to_json(*report.subsequence) : json(nullptr);
    return out;
}

std::string network_to_text(const NetworkSpec& net) {
    std::string out = "{\"layers\": [";
    for (std::size_t m = 0; m < net.depth(); ++m) {
        const Matrix& w = net.layer(m);
        out += m ? ",\n  [" : "\n  [";
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            if (r) out += ", ";
            append_row(out, w.data() + r, w.cols(), w.rows());
        }
        out += ']';
    }
    out += "\n]}\n";
    return out;
}

std::string inputs_to_text(const InputSet& inputs) {
    std::string out = "{\"B\": " + format_double(inputs.radius()) + ", \"points\": [";
    const Matrix& pts = inputs.points();
    for (Eigen::Index i = 0; i < pts.cols(); ++i) {
        out += i ? ",\n  " : "\n  ";
        append_row(out, pts.data() + i * pts.rows(), pts.rows(), 1);
    }
    out += "\n]}\n";
    return out;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw FormatError("failed writing " + path.string());
    }
}

NetworkSpec load_network(const std::filesystem::path& path) {
    return network_from_json(read_json_file(path));
}

InputSet load_inputs(const std::filesystem::path& path) {
    return inputs_from_json(read_json_file(path));
}

NormBudget load_budget(const std::filesystem::path& path) {
    return budget_from_json(read_json_file(path));
}

}  // namespace radbound
