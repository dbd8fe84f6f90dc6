#pragma once

#include <string>

#include "cubecert/simplicial.hpp"

namespace cubecert {

// Canonical complex serialization:
//   {"vertices":[...], "maximal_faces":[[...],...], "parts":{...}}
// with vertices sorted, each face's labels sorted, the face list sorted
// lexicographically and "parts" omitted when absent.  Reading then writing
// canonical text reproduces it byte for byte.
std::string complex_to_json(const SimplicialComplex& K);

// Parse a complex; "vertices" and "parts" are optional.  InputError on
// malformed JSON or non-canonical structural problems (duplicate vertex in
// a face, unknown part keys, ...).
SimplicialComplex complex_from_json(const std::string& text);

SimplicialComplex complex_from_file(const std::string& path);

std::string read_text_file(const std::string& path);   // InputError if unreadable
void write_text_file(const std::string& path, const std::string& content);

}  // namespace cubecert
