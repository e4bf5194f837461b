#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cubecat/diagram.hpp"

namespace cubecat {

struct CorpusEntry {
  std::string name;  // file stem, or "inline"
  LinkDiagram diagram;
};

/// Parses the text of a `.pd` file: `#` starts a comment line, an
/// `orient: strict|numbering` line selects how crossings are oriented, and the
/// remaining lines are concatenated into one PD code.
LinkDiagram parse_pd_file_text(const std::string& text, OrientMode fallback = OrientMode::Strict);
OrientMode parse_orient_mode(const std::string& s);

CorpusEntry load_pd_file(const std::filesystem::path& path, OrientMode fallback = OrientMode::Strict);
/// A directory yields its `.pd` files sorted by file name; a file yields itself.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path, OrientMode fallback = OrientMode::Strict);

}  // namespace cubecat
