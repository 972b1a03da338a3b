#pragma once

#include <cstdio>
#include <string>

namespace gradnet {

/// 12-significant-digit decimal rendering shared by the trace and netlist
/// writers.
inline std::string fmt_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace gradnet
