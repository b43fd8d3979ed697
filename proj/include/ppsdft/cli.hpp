#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ppsdft/core.hpp"

namespace ppsdft {

enum class Method { raw, ps, hann, flattop, symmetrize };

inline constexpr Method kAllMethods[] = {Method::raw, Method::ps, Method::hann, Method::flattop,
                                         Method::symmetrize};

Method parse_method(std::string_view name);
std::string_view to_string(Method method) noexcept;

/// Spectrum of `u` under the given method. With pre_subtract_mean the image
/// mean is removed first.
Spectrum2D method_spectrum(const Image2D& u, Method method, bool pre_subtract_mean = false);

/// Runs the command line. Exit codes: 0 success, 1 processing error, 2 usage error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace ppsdft
