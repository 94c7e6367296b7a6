#include "nsb/admission/instance_io.h"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace nsb::admission {
namespace {

std::vector<std::int64_t> read_row(std::istringstream& ss, std::size_t n, std::size_t line) {
  std::vector<std::int64_t> row;
  std::int64_t v;
  while (ss >> v) row.push_back(v);
  if (!ss.eof()) throw InstanceFormatError(line, "expected an integer");
  if (row.size() != n) {
    throw InstanceFormatError(line, "expected " + std::to_string(n) + " values, got " +
                                        std::to_string(row.size()));
  }
  return row;
}

void write_row(std::ostream& out, const char* key, const std::vector<std::int64_t>& row) {
  out << key;
  for (std::int64_t v : row) out << ' ' << v;
  out << '\n';
}

}  // namespace

InstanceFormatError::InstanceFormatError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

AdmissionInstance read_instance(std::istream& in) {
  std::optional<std::size_t> I, J;
  std::vector<std::int64_t> r;
  bool have_r = false;
  Matrix pi, theta;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ss(raw);
    std::string key;
    if (!(ss >> key)) continue;
    if (key == "I" || key == "J") {
      long long n;
      if (!(ss >> n) || n < 0 || (key == "I" && n == 0)) {
        throw InstanceFormatError(line, "bad value for " + key);
      }
      (key == "I" ? I : J) = static_cast<std::size_t>(n);
      continue;
    }
    if (!I || !J) throw InstanceFormatError(line, "I and J must come first");
    if (key == "r") {
      if (have_r) throw InstanceFormatError(line, "duplicate r");
      r = read_row(ss, *I, line);
      have_r = true;
    } else if (key == "pi") {
      if (pi.size() == *J) throw InstanceFormatError(line, "too many pi rows");
      pi.push_back(read_row(ss, *I, line));
    } else if (key == "theta") {
      if (theta.size() == *J) throw InstanceFormatError(line, "too many theta rows");
      theta.push_back(read_row(ss, *I, line));
    } else {
      throw InstanceFormatError(line, "unknown keyword '" + key + "'");
    }
  }
  if (!I || !J || !have_r) throw InstanceFormatError(line, "missing I, J or r");
  if (pi.size() != *J || theta.size() != *J) {
    throw InstanceFormatError(line, "expected " + std::to_string(*J) + " pi and theta rows");
  }
  AdmissionInstance inst;
  inst.revenues = revenues_from_prices(theta);
  inst.demands = std::move(pi);
  inst.prices = std::move(theta);
  inst.capacity = std::move(r);
  if (auto err = inst.validate(); !err.empty()) throw InstanceFormatError(line, err);
  return inst;
}

void write_instance(std::ostream& out, const AdmissionInstance& inst) {
  out << "I " << inst.num_types() << '\n';
  out << "J " << inst.num_requests() << '\n';
  write_row(out, "r", inst.capacity);
  for (const auto& row : inst.demands) write_row(out, "pi", row);
  for (const auto& row : inst.prices) write_row(out, "theta", row);
}

}  // namespace nsb::admission
