#include "cubecert/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cubecert {

using nlohmann::ordered_json;

std::string complex_to_json(const SimplicialComplex& K) {
    ordered_json j;
    j["vertices"] = K.labels();  // ids are label-sorted, so this is sorted
    ordered_json faces = ordered_json::array();
    for (const auto& f : K.maximal_faces()) faces.push_back(K.face_labels(f));
    j["maximal_faces"] = std::move(faces);
    if (K.has_parts()) {
        ordered_json parts = ordered_json::object();
        for (Vertex v = 0; v < K.vertex_count(); ++v) parts[K.label(v)] = K.part(v);
        j["parts"] = std::move(parts);
    }
    return j.dump(2) + "\n";
}

SimplicialComplex complex_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("complex JSON parse failure: ") + e.what());
    }
    try {
        if (!j.is_object() || !j.contains("maximal_faces"))
            throw InputError("complex JSON must be an object with 'maximal_faces'");
        std::vector<std::vector<std::string>> faces =
            j.at("maximal_faces").get<std::vector<std::vector<std::string>>>();
        std::vector<std::string> vertices;
        if (j.contains("vertices"))
            vertices = j.at("vertices").get<std::vector<std::string>>();
        std::map<std::string, int> parts;
        if (j.contains("parts"))
            parts = j.at("parts").get<std::map<std::string, int>>();
        return build_complex(faces, parts, vertices);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(std::string("complex JSON structure error: ") + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file '" + path + "'");
    out << content;
}

SimplicialComplex complex_from_file(const std::string& path) {
    return complex_from_json(read_text_file(path));
}

}  // namespace cubecert
