#pragma once

// Import/export. Forms and presentations travel as JSON objects tagged
// "schema": "kf/1"; matrices travel as sparse triplet text. Scalar
// literals go through the field's parse/str pair, so a file written over
// the rationals can be reread over F_p (the literal "a/b" divides mod p).

#include "dense.hpp"
#include "presentation.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace kf {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "kf/1";

inline Json json_parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        fail("ParseError", e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("ParseError", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("ParseError", "cannot write " + path);
    out << text;
}

inline void require_schema(const Json& j) {
    if (!j.is_object() || !j.contains("schema") || j.at("schema") != kSchemaTag)
        fail("ParseError", "expected a JSON object tagged \"schema\": \"kf/1\"");
}

// "form" when the object carries entries, "presentation" when it carries
// relation groups.
inline std::string json_payload_kind(const Json& j) {
    require_schema(j);
    if (j.contains("entries")) return "form";
    if (j.contains("relations")) return "presentation";
    fail("ParseError", "object carries neither \"entries\" nor \"relations\"");
}

inline std::string json_field_tag(const Json& j) {
    require_schema(j);
    if (!j.contains("field") || !j.at("field").is_string())
        fail("ParseError", "missing \"field\" tag");
    return j.at("field").get<std::string>();
}

// {"schema": "kf/1", "g", "m", "field", "entries": [[l_1..l_m, "c"], ...]}
// with 1-based indices and entries sorted by word.
template <class F>
Json form_to_json(const F& field, const Form<typename F::Elem>& f) {
    Json entries = Json::array();
    for (const auto& [idx, c] : f.w) {
        Json e = Json::array();
        for (uint32_t d : word_decode(idx, f.g, f.m)) e.push_back(d);
        e.push_back(field.str(c));
        entries.push_back(std::move(e));
    }
    Json j;
    j["schema"] = kSchemaTag;
    j["g"] = f.g;
    j["m"] = f.m;
    j["field"] = field.name();
    j["entries"] = std::move(entries);
    return j;
}

template <class F>
Form<typename F::Elem> form_from_json(const F& field, const Json& j) {
    using K = typename F::Elem;
    require_schema(j);
    try {
        uint32_t g = j.at("g").get<uint32_t>();
        uint32_t m = j.at("m").get<uint32_t>();
        std::vector<std::pair<std::vector<uint32_t>, K>> entries;
        for (const auto& e : j.at("entries")) {
            if (!e.is_array() || e.size() != size_t(m) + 1)
                fail("ParseError", "form entry needs m indices and one scalar literal");
            std::vector<uint32_t> word;
            word.reserve(m);
            for (uint32_t k = 0; k < m; ++k) word.push_back(e.at(k).get<uint32_t>());
            entries.emplace_back(std::move(word), field.parse(e.at(m).get<std::string>()));
        }
        return make_form(field, g, m, entries);
    } catch (const Json::exception& e) {
        fail("ParseError", e.what());
    }
}

// {"schema": "kf/1", "g", "field", "relations": [{"degree": N, "vectors":
// [...]}, ...]} where each vector is a list of terms [i_1..i_N, "c"].
template <class F>
Json presentation_to_json(const F& field, const MultiPresentation<typename F::Elem>& P) {
    Json groups = Json::array();
    for (const auto& [N, R] : P.groups) {
        Json vectors = Json::array();
        for (const auto& row : R.basis) {
            Json vec = Json::array();
            for (const auto& [idx, c] : row) {
                Json term = Json::array();
                for (uint32_t d : word_decode(idx, P.g, N)) term.push_back(d);
                term.push_back(field.str(c));
                vec.push_back(std::move(term));
            }
            vectors.push_back(std::move(vec));
        }
        groups.push_back(Json{{"degree", N}, {"vectors", std::move(vectors)}});
    }
    Json j;
    j["schema"] = kSchemaTag;
    j["g"] = P.g;
    j["field"] = field.name();
    j["relations"] = std::move(groups);
    return j;
}

template <class F>
Json presentation_to_json(const F& field, const Presentation<typename F::Elem>& P) {
    return presentation_to_json(field, to_multi(field, P));
}

template <class F>
MultiPresentation<typename F::Elem> presentation_from_json(const F& field, const Json& j) {
    using K = typename F::Elem;
    require_schema(j);
    try {
        uint32_t g = j.at("g").get<uint32_t>();
        std::vector<std::pair<uint32_t, std::vector<SVec<K>>>> groups;
        for (const auto& grp : j.at("relations")) {
            uint32_t N = grp.at("degree").get<uint32_t>();
            std::vector<SVec<K>> rows;
            for (const auto& vec : grp.at("vectors")) {
                SVec<K> row;
                for (const auto& term : vec) {
                    if (!term.is_array() || term.size() != size_t(N) + 1)
                        fail("ParseError", "relation term needs N indices and one scalar literal");
                    std::vector<uint32_t> word;
                    word.reserve(N);
                    for (uint32_t k = 0; k < N; ++k) word.push_back(term.at(k).get<uint32_t>());
                    row.emplace_back(uint32_t(word_encode(word, g)),
                                     field.parse(term.at(N).get<std::string>()));
                }
                svec_normalize(row);
                rows.push_back(std::move(row));
            }
            groups.emplace_back(N, std::move(rows));
        }
        return make_multi_presentation(field, g, groups);
    } catch (const Json::exception& e) {
        fail("ParseError", e.what());
    }
}

// Sparse triplet text: a "rows cols" header, then one "row col literal"
// line per nonzero entry, 1-based, '#' starts a comment.
template <class F>
std::string matrix_to_triplets(const F& field, const Mat<typename F::Elem>& M) {
    std::ostringstream out;
    size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    out << rows << ' ' << cols << '\n';
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            if (!(M[i][j] == field.zero()))
                out << i + 1 << ' ' << j + 1 << ' ' << field.str(M[i][j]) << '\n';
    return out.str();
}

template <class F>
Mat<typename F::Elem> matrix_from_triplets(const F& field, const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        for (std::string tok; ls >> tok;) tokens.push_back(std::move(tok));
    }
    auto to_count = [](const std::string& tok) -> uint64_t {
        uint64_t v = 0;
        if (tok.empty() || tok.size() > 9) fail("ParseError", "bad count '" + tok + "'");
        for (char ch : tok) {
            if (ch < '0' || ch > '9') fail("ParseError", "bad count '" + tok + "'");
            v = v * 10 + uint64_t(ch - '0');
        }
        return v;
    };
    if (tokens.size() < 2) fail("ParseError", "triplet text needs a rows/cols header");
    if ((tokens.size() - 2) % 3 != 0)
        fail("ParseError", "triplet entries come as row col literal");
    uint64_t rows = to_count(tokens[0]), cols = to_count(tokens[1]);
    if (rows == 0 || cols == 0 || rows * cols > (uint64_t(1) << 26))
        fail("ParseError", "matrix shape out of range");
    Mat<typename F::Elem> M(size_t(rows),
                            std::vector<typename F::Elem>(size_t(cols), field.zero()));
    std::set<std::pair<uint64_t, uint64_t>> seen;
    for (size_t k = 2; k + 2 < tokens.size(); k += 3) {
        uint64_t r = to_count(tokens[k]), c = to_count(tokens[k + 1]);
        if (r < 1 || r > rows || c < 1 || c > cols)
            fail("ParseError", "triplet index out of range");
        if (!seen.emplace(r, c).second) fail("ParseError", "duplicate triplet entry");
        M[size_t(r - 1)][size_t(c - 1)] = field.parse(tokens[k + 2]);
    }
    return M;
}

} // namespace kf
