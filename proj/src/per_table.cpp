#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "aoc/error.hpp"
#include "aoc/sweep.hpp"

namespace aoc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void parse_fail(const std::string& what, std::size_t line) {
  throw Error(Errc::Parse, what + " at line " + std::to_string(line));
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

struct DeviceEntry {
  double per;
  std::size_t line;
};

using Key = std::tuple<double, SchemeKind>;

}  // namespace

PerTable PerTable::parse(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::map<Key, std::map<std::size_t, DeviceEntry>> rows;
  std::map<Key, std::size_t> first_line;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (!header_seen) {
      if (split_csv(text) != std::vector<std::string_view>{"snr_db", "scheme", "device_id", "per"}) {
        parse_fail("expected header 'snr_db,scheme,device_id,per'", lineno);
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_csv(text);
    if (fields.size() != 4) parse_fail("expected 4 fields", lineno);

    double snr = 0.0;
    if (!parse_number(fields[0], snr) || !std::isfinite(snr)) parse_fail("bad snr_db", lineno);
    if (snr == 0.0) snr = 0.0;  // fold -0

    std::vector<SchemeKind> schemes;
    if (fields[1] == "tdma") {
      schemes = {SchemeKind::TdmaNr, SchemeKind::TdmaR};
    } else if (auto s = parse_scheme(fields[1])) {
      schemes = {*s};
    } else {
      parse_fail("unknown scheme token '" + std::string(fields[1]) + "'", lineno);
    }

    std::size_t device = 0;
    if (!parse_number(fields[2], device) || device < 1) parse_fail("bad device_id", lineno);

    double per = 0.0;
    if (!parse_number(fields[3], per)) parse_fail("bad per value", lineno);
    if (!(per >= 0.0 && per < 1.0)) parse_fail("per out of range [0,1)", lineno);

    for (SchemeKind s : schemes) {
      const Key key{snr, s};
      first_line.emplace(key, lineno);
      auto [it, inserted] = rows[key].emplace(device, DeviceEntry{per, lineno});
      if (!inserted) {
        parse_fail("duplicate device " + std::to_string(device) + " for (" + format_sig6(snr) +
                       " dB, " + std::string(to_token(s)) + ")",
                   lineno);
      }
    }
  }
  if (!header_seen) throw Error(Errc::Parse, "empty PER table: missing header at line 1");

  PerTable table;
  for (const auto& [key, devices] : rows) {
    const auto [snr, scheme] = key;
    std::vector<double> probs;
    std::size_t expect = 1;
    for (const auto& [id, entry] : devices) {
      if (id != expect++) {
        parse_fail("incomplete device set for (" + format_sig6(snr) + " dB, " +
                       std::string(to_token(scheme)) + ")",
                   first_line.at(key));
      }
      probs.push_back(entry.per);
    }
    table.entries_.push_back({snr, scheme, PerVector::make(std::move(probs))});
  }
  return table;
}

PerTable PerTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open PER table '" + path.string() + "'");
  return parse(in);
}

PerTable PerTable::uniform(const PerVector& p, double snr_db) {
  PerTable table;
  for (SchemeKind s : {SchemeKind::TdmaNr, SchemeKind::TdmaR, SchemeKind::Fdma}) {
    table.entries_.push_back({snr_db, s, p});
  }
  return table;
}

}  // namespace aoc
