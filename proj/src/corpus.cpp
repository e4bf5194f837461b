#include "cubecat/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cubecat {

OrientMode parse_orient_mode(const std::string& s) {
  if (s == "strict") return OrientMode::Strict;
  if (s == "numbering") return OrientMode::Numbering;
  throw ParseError("unknown orientation mode '" + s + "' (expected strict or numbering)");
}

LinkDiagram parse_pd_file_text(const std::string& text, OrientMode fallback) {
  std::istringstream in(text);
  std::string line, code;
  OrientMode mode = fallback;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    if (line.rfind("orient:", 0) == 0) {
      std::string value = line.substr(7);
      value.erase(0, value.find_first_not_of(" \t"));
      value.erase(value.find_last_not_of(" \t\r") + 1);
      mode = parse_orient_mode(value);
      continue;
    }
    if (!code.empty()) code += ';';
    code += line;
  }
  return parse_pd(code, mode);
}

CorpusEntry load_pd_file(const std::filesystem::path& path, OrientMode fallback) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return {path.stem().string(), parse_pd_file_text(buf.str(), fallback)};
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path, OrientMode fallback) {
  if (!std::filesystem::is_directory(path)) return {load_pd_file(path, fallback)};
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path))
    if (entry.is_regular_file() && entry.path().extension() == ".pd") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) out.push_back(load_pd_file(f, fallback));
  return out;
}

}  // namespace cubecat
