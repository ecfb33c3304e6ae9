#include "growpop/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "growpop/error.hpp"

namespace growpop {

namespace {

void write_meta(std::ostream& out, const CsvMetadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_real(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::runtime_error("bad number in CSV: '" + s + "'");
  return v;
}

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::runtime_error("bad integer in CSV: '" + s + "'");
  return v;
}

Event parse_event(const std::string& s) {
  if (s == "record") return Event::Record;
  if (s == "pre_jump") return Event::PreJump;
  if (s == "post_jump") return Event::PostJump;
  throw std::runtime_error("unknown event '" + s + "' in CSV");
}

}  // namespace

std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

void write_series_csv(std::ostream& out, const MomentSeries& series, const CsvMetadata& meta) {
  write_meta(out, meta);
  out << "t,n";
  for (std::size_t c = 0; c < series.dim(); ++c) out << ",m1_" << c;
  out << ",m2,v,w,dissipation,event\n";
  for (const auto& e : series.entries()) {
    const auto& r = e.record;
    out << format_real(r.t) << ',' << r.n;
    for (double x : r.m1) out << ',' << format_real(x);
    out << ',' << format_real(r.m2) << ',' << format_real(r.v) << ',' << format_real(r.w) << ','
        << format_real(r.dissipation) << ',' << event_name(e.event) << '\n';
  }
}

void emit_series_csv(const MomentSeries& series, const std::filesystem::path& path, const CsvMetadata& meta) {
  auto out = open_for_write(path);
  write_series_csv(out, series, meta);
  finish(out, path);
}

void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats, const CsvMetadata& meta) {
  write_meta(out, meta);
  out << "t,mean_w,stderr_w,mean_v,stderr_v,mean_m1_dev,stderr_m1_dev,event\n";
  for (std::size_t i = 0; i < stats.grid.size(); ++i) {
    out << format_real(stats.grid[i].t) << ',' << format_real(stats.mean_w[i]) << ',' << format_real(stats.stderr_w[i])
        << ',' << format_real(stats.mean_v[i]) << ',' << format_real(stats.stderr_v[i]) << ','
        << format_real(stats.mean_m1_dev[i]) << ',' << format_real(stats.stderr_m1_dev[i]) << ','
        << event_name(stats.grid[i].event) << '\n';
  }
}

void emit_ensemble_csv(const EnsembleStats& stats, const std::filesystem::path& path, const CsvMetadata& meta) {
  auto out = open_for_write(path);
  write_ensemble_csv(out, stats, meta);
  finish(out, path);
}

MomentSeries read_series_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    header = split(line);
    break;
  }
  if (header.size() < 8) throw std::runtime_error("CSV header missing or too short");
  const std::size_t dim = header.size() - 7;
  MomentSeries series(dim);
  std::int64_t k = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw std::runtime_error("CSV row has the wrong number of columns");
    MomentRecord r;
    r.t = parse_real(cells[0]);
    r.n = parse_int(cells[1]);
    for (std::size_t c = 0; c < dim; ++c) r.m1.push_back(parse_real(cells[2 + c]));
    r.m2 = parse_real(cells[2 + dim]);
    r.v = parse_real(cells[3 + dim]);
    r.w = parse_real(cells[4 + dim]);
    r.dissipation = parse_real(cells[5 + dim]);
    const Event ev = parse_event(cells[6 + dim]);
    if (ev == Event::PostJump) ++k;
    series.add_entry(SeriesEntry{ev, k, std::move(r)});
  }
  return series;
}

MomentSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_series_csv(in);
}

}  // namespace growpop
