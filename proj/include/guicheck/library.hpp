#pragma once

// Specification library: the built-in specs plus any user-supplied library
// directories of .gspec files.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "guicheck/errors.hpp"
#include "guicheck/spec_ast.hpp"
#include "guicheck/spec_parse.hpp"
#include "guicheck/stdlib_data.hpp"

namespace guicheck {

class Library {
 public:
  struct Entry {
    Spec spec;
    std::string origin;  // "builtin" or the source file path
  };

  const Spec* find(std::string_view name) const {
    auto it = entries_.find(std::string(name));
    return it == entries_.end() ? nullptr : &it->second.spec;
  }

  const Entry* entry(std::string_view name) const {
    auto it = entries_.find(std::string(name));
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [name, entry] : entries_) out.push_back(name);
    return out;
  }

  std::size_t size() const { return entries_.size(); }

  // Inserts, enforcing the collision rules: user specs may never collide with
  // each other, and may shadow a built-in only when `allow_override` is set.
  void add(Spec spec, std::string origin, bool allow_override = false) {
    auto it = entries_.find(spec.name);
    if (it != entries_.end()) {
      if (it->second.origin == "builtin" && origin != "builtin") {
        if (!allow_override)
          throw LoadError(LoadError::Kind::BuiltinOverride,
                          "'" + spec.name + "' from " + origin +
                              " shadows a built-in spec (pass the override flag to allow)");
      } else {
        throw LoadError(LoadError::Kind::DuplicateName,
                        "'" + spec.name + "' defined in both " + it->second.origin + " and " +
                            origin);
      }
    }
    std::string key = spec.name;
    entries_.insert_or_assign(std::move(key), Entry{std::move(spec), std::move(origin)});
  }

 private:
  std::map<std::string, Entry> entries_;
};

inline Library builtin_library() {
  Library lib;
  for (std::string_view source : stdlib_sources::all()) {
    SpecDoc doc = parse_specs(source);
    for (Spec& spec : doc.specs) lib.add(std::move(spec), "builtin");
  }
  return lib;
}

// Loads every .gspec file found directly inside each directory (non-recursive)
// on top of the built-in library.
inline Library load_library(const std::vector<std::filesystem::path>& dirs,
                            bool allow_builtin_override = false) {
  Library lib = builtin_library();
  for (const std::filesystem::path& dir : dirs) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
      throw LoadError(LoadError::Kind::Io, "library directory not readable: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".gspec")
        files.push_back(entry.path());
    }
    if (ec) throw LoadError(LoadError::Kind::Io, "cannot list " + dir.string());
    std::sort(files.begin(), files.end());
    for (const std::filesystem::path& file : files) {
      std::ifstream in(file);
      if (!in) throw LoadError(LoadError::Kind::Io, "cannot read " + file.string());
      std::ostringstream buffer;
      buffer << in.rdbuf();
      SpecDoc doc;
      try {
        doc = parse_specs(buffer.str());
      } catch (const ParseError& e) {
        throw LoadError(LoadError::Kind::Parse, file.string() + ":" + e.what());
      }
      for (Spec& spec : doc.specs)
        lib.add(std::move(spec), file.string(), allow_builtin_override);
    }
  }
  return lib;
}

}  // namespace guicheck
