#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "shapetree/core.hpp"

namespace shapetree {

// Fixed 12-significant-digit formatting for data files, so identical runs
// produce byte-identical output.
inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Write via a sibling temp file and rename, so readers never observe a
// half-written file.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw Error("write failed on " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace shapetree
