#pragma once

#include <string>

namespace edgerent {

/// printf "%.12g"; non-finite values print as nan/inf/-inf.
std::string format_g12(double value);

}  // namespace edgerent
