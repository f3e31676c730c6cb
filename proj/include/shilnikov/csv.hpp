#ifndef SHILNIKOV_CSV_HPP
#define SHILNIKOV_CSV_HPP

#include <cstdio>
#include <string>

namespace shilnikov {

/// Number formatting used for every CSV/report value: 12 significant digits.
inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace shilnikov

#endif
