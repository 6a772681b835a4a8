#pragma once

#include "cohomology.hpp"
#include "superfield.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace brstwb {

// Malformed input document; what() carries line and column when known.
class DocumentError : public Error {
public:
    using Error::Error;
};

struct Bounds {
    unsigned degree = 2;
    int target_rdeg = 4;
    std::size_t p = 0;
};

struct SystemDocument {
    InvolutiveSystem system;
    bool structure_given = false;
    std::optional<SuPoly> P;
    std::optional<WeakHamiltonianStructure> weak;  // set when witnesses are supplied
    std::optional<GeneratingPair> superfield;
    Bounds bounds;
    std::vector<std::string> notes;
};

namespace detail {

struct SourceText {
    std::string text;

    std::pair<std::size_t, std::size_t> line_col(std::size_t offset) const {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

    // Offset of a string value, searched after its key; npos when not found.
    std::size_t locate(const std::string& key, const std::string& value) const {
        std::string quoted = nlohmann::json(value).dump();
        std::size_t from = text.find("\"" + key + "\"");
        if (from == std::string::npos) from = 0;
        std::size_t at = text.find(quoted, from);
        if (at == std::string::npos) at = text.find(quoted);
        return at == std::string::npos ? at : at + 1;
    }

    std::string where(const std::string& key, const std::string& value, std::size_t inner) const {
        std::size_t at = locate(key, value);
        if (at == std::string::npos) return key;
        auto [l, c] = line_col(at + inner);
        return "line " + std::to_string(l) + ", column " + std::to_string(c);
    }
};

class DocumentReader {
public:
    explicit DocumentReader(SourceText src) : src_(std::move(src)) {
        try {
            root_ = nlohmann::json::parse(src_.text);
        } catch (const nlohmann::json::parse_error& e) {
            auto [l, c] = src_.line_col(e.byte == 0 ? 0 : e.byte - 1);
            throw DocumentError("JSON syntax error at line " + std::to_string(l) + ", column " + std::to_string(c));
        }
        if (!root_.is_object()) throw DocumentError("document must be a JSON object");
    }

    SystemDocument read() {
        SystemDocument doc;
        std::vector<std::string> coords;
        if (!root_.contains("coordinates")) throw DocumentError("missing 'coordinates'");
        for (const auto& c : root_.at("coordinates")) {
            if (!c.is_string()) throw DocumentError("coordinate names must be strings");
            coords.push_back(c.get<std::string>());
        }
        frame_ = make_frame(coords);
        SuPoly V = root_.contains("V") ? poly("V", root_.at("V")) : frame_->zero();
        auto R = poly_list("R");
        auto T = poly_list("T");
        std::size_t m = R.size();
        std::size_t l = T.size();
        InvolutiveSystem s = make_system(frame_, V, R, T);
        const char* keys[] = {"A", "B", "C", "D", "E", "F"};
        bool any = false;
        for (const char* k : keys) any = any || root_.contains(k);
        doc.structure_given = any;
        if (any) {
            if (root_.contains("A")) s.A = tensor("A", m, l, l);
            if (root_.contains("B")) s.B = tensor("B", m, m, m);
            if (root_.contains("C")) s.C = tensor("C", l, m, m);
            if (root_.contains("D")) s.D = matrix("D", root_.at("D"), l, l);
            if (root_.contains("E")) s.E = matrix("E", root_.at("E"), m, m);
            if (root_.contains("F")) s.F = matrix("F", root_.at("F"), l, m);
        }
        if (root_.contains("sigma_points")) {
            for (const auto& pt : root_.at("sigma_points")) {
                std::vector<Rational> row;
                for (const auto& v : pt) row.push_back(number("sigma_points", v));
                s.sigma_points.push_back(std::move(row));
            }
        }
        if (root_.contains("bounds")) {
            const auto& b = root_.at("bounds");
            if (b.contains("degree")) doc.bounds.degree = b.at("degree").get<unsigned>();
            if (b.contains("target_rdeg")) doc.bounds.target_rdeg = b.at("target_rdeg").get<int>();
            if (b.contains("p")) doc.bounds.p = b.at("p").get<std::size_t>();
        }
        if (!doc.structure_given) {
            auto found = discover_structure(s, doc.bounds.degree);
            if (found.system) {
                s = std::move(*found.system);
                doc.notes.push_back("structure functions discovered within degree " +
                                    std::to_string(doc.bounds.degree));
            } else {
                doc.notes.push_back("structure functions not found within bound for " + found.unresolved);
            }
        }
        validate_system(s);
        if (root_.contains("P")) {
            doc.P = poly("P", root_.at("P"));
            if (root_.contains("witnesses")) doc.weak = witnesses(s, *doc.P);
        }
        if (root_.contains("superfield")) {
            const auto& sf = root_.at("superfield");
            auto anti = std::make_shared<const AntiRoster>(coords, m, l);
            auto text = [&](const char* key) { return sf.contains(key) ? sf.at(key).get<std::string>() : "0"; };
            doc.superfield = GeneratingPair{anti, anti_poly(*anti, "S", text("S")), anti_poly(*anti, "Gamma", text("Gamma"))};
        }
        doc.system = std::move(s);
        return doc;
    }

private:
    SuPoly anti_poly(const AntiRoster& anti, const std::string& key, const std::string& text) const {
        try {
            return anti.parse(text);
        } catch (const ParseError& e) {
            throw DocumentError(std::string(e.what()) + " in '" + key + "' (" + src_.where(key, text, e.position()) + ")");
        }
    }

    SuPoly poly(const std::string& key, const nlohmann::json& v) const {
        if (v.is_number_integer()) return frame_->constant(Rational(v.get<long>()));
        if (!v.is_string()) throw DocumentError("'" + key + "' entries must be polynomial strings");
        const std::string text = v.get<std::string>();
        try {
            return frame_->parse(text);
        } catch (const ParseError& e) {
            throw DocumentError(std::string(e.what()) + " in '" + key + "' (" + src_.where(key, text, e.position()) + ")");
        }
    }

    Rational number(const std::string& key, const nlohmann::json& v) const {
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_string()) {
            try {
                return parse_rational(v.get<std::string>());
            } catch (const std::exception&) {
            }
        }
        throw DocumentError("'" + key + "' entries must be integers or rational strings");
    }

    std::vector<SuPoly> poly_list(const std::string& key) const {
        std::vector<SuPoly> out;
        if (!root_.contains(key)) return out;
        const auto& arr = root_.at(key);
        if (!arr.is_array()) throw DocumentError("'" + key + "' must be an array");
        for (const auto& v : arr) out.push_back(poly(key, v));
        return out;
    }

    std::vector<SuPoly> vector(const std::string& key, const nlohmann::json& v, std::size_t n) const {
        if (!v.is_array() || v.size() != n) {
            throw DocumentError("'" + key + "' must be an array of " + std::to_string(n) + " entries");
        }
        std::vector<SuPoly> out;
        for (const auto& x : v) out.push_back(poly(key, x));
        return out;
    }

    PolyMatrix matrix(const std::string& key, const nlohmann::json& v, std::size_t r, std::size_t c) const {
        if (!v.is_array() || v.size() != r) {
            throw DocumentError("'" + key + "' must have " + std::to_string(r) + " rows");
        }
        PolyMatrix out;
        for (const auto& row : v) out.push_back(vector(key, row, c));
        return out;
    }

    PolyTensor3 tensor(const std::string& key, std::size_t a, std::size_t b, std::size_t c) const {
        const auto& v = root_.at(key);
        if (!v.is_array() || v.size() != a) {
            throw DocumentError("'" + key + "' must have " + std::to_string(a) + " blocks");
        }
        PolyTensor3 out;
        for (const auto& blk : v) out.push_back(matrix(key, blk, b, c));
        return out;
    }

    WeakHamiltonianStructure witnesses(const InvolutiveSystem& s, const SuPoly& P) const {
        auto w = make_weak_structure(s, P);
        const auto& wj = root_.at("witnesses");
        std::size_t m = s.m();
        std::size_t l = s.l();
        if (wj.contains("Y")) w.Y = matrix("Y", wj.at("Y"), l, m);
        if (wj.contains("G")) w.G = matrix("G", wj.at("G"), l, l);
        if (wj.contains("W")) w.W = matrix("W", wj.at("W"), m, m);
        if (wj.contains("M")) w.M = matrix("M", wj.at("M"), m, l);
        if (wj.contains("Z")) w.Z = vector("Z", wj.at("Z"), m);
        if (wj.contains("N")) w.N = vector("N", wj.at("N"), l);
        if (wj.contains("U")) w.U = vector("U", wj.at("U"), m);
        if (wj.contains("S")) w.S = vector("S", wj.at("S"), l);
        return w;
    }

    SourceText src_;
    nlohmann::json root_;
    FramePtr frame_;
};

} // namespace detail

inline int max_jet_order_from_env() {
    const char* v = std::getenv("WORKBENCH_MAX_JET_ORDER");
    if (!v || !*v) return kDefaultMaxJetOrder;
    try {
        std::size_t used = 0;
        int k = std::stoi(v, &used);
        if (used == std::string(v).size() && k >= 1 && k <= kMaxSupportedJetOrder) return k;
    } catch (const std::exception&) {
    }
    throw DocumentError(std::string("WORKBENCH_MAX_JET_ORDER must be an integer in 1..") +
                        std::to_string(kMaxSupportedJetOrder));
}

inline SystemDocument parse_document(const std::string& text) {
    return detail::DocumentReader({text}).read();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DocumentError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Charge files: phase-space shape plus the integrand in the expression grammar.
inline std::string write_charge_file(const BRSTCharge& q) {
    const auto& ps = *q.space;
    nlohmann::json j;
    j["coordinates"] = ps.system().frame->coordinates();
    j["m"] = ps.m();
    j["l"] = ps.l();
    j["max_jet_order"] = ps.roster()->max_jet_order();
    j["integrand"] = format_canonical(q.integrand());
    return j.dump(2) + "\n";
}

inline BRSTCharge read_charge_file(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DocumentError(std::string("charge file: ") + e.what());
    }
    auto frame = make_frame(j.at("coordinates").get<std::vector<std::string>>());
    std::size_t m = j.at("m").get<std::size_t>();
    std::size_t l = j.at("l").get<std::size_t>();
    auto sys = make_system(frame, frame->zero(), std::vector<SuPoly>(m, frame->zero()),
                           std::vector<SuPoly>(l, frame->zero()));
    auto ps = make_phase_space(std::move(sys), j.value("max_jet_order", kDefaultMaxJetOrder));
    return {ps, {ps->parse(j.at("integrand").get<std::string>())}, 0};
}

} // namespace brstwb
