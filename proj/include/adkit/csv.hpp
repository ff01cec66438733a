#ifndef ADKIT_CSV_HPP
#define ADKIT_CSV_HPP

#include <cstdio>
#include <string>

namespace adkit::csv {

// 12 significant digits, shortest form; '.' decimal point regardless of
// locale (snprintf with the C locale is assumed, which the CLI enforces by
// never calling setlocale).
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace adkit::csv

#endif
