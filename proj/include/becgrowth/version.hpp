#ifndef BECGROWTH_VERSION_HPP
#define BECGROWTH_VERSION_HPP

namespace becgrowth {

inline constexpr const char* version_string = "0.1.0";

}  // namespace becgrowth

#endif  // BECGROWTH_VERSION_HPP
