#ifndef SSHQT_CSVIO_HPP
#define SSHQT_CSVIO_HPP

#include <string>

namespace sshqt {

/// 12 significant digits, '.' decimal separator; bit-stable for a fixed seed.
std::string format_value(double v);

}  // namespace sshqt

#endif
