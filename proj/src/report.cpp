#include "bellrand/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bellrand/complexity.hpp"
#include "bellrand/encode.hpp"
#include "bellrand/error.hpp"

namespace bellrand {

std::string_view to_string(Encoding e) noexcept {
  switch (e) {
    case Encoding::Codes: return "codes";
    case Encoding::Joint: return "joint";
    case Encoding::Dt: return "dt";
  }
  return "joint";
}

Encoding parse_encoding(std::string_view text) {
  for (auto e : {Encoding::Codes, Encoding::Joint, Encoding::Dt}) {
    if (to_string(e) == text) return e;
  }
  throw Error(Errc::InvalidConfig, "unknown encoding '" + std::string(text) + "'");
}

namespace {

void fill_analysis(RunReport& row, const BinarySequence& seq, const AnalyzeConfig& config) {
  row.encoding = seq.encoding;
  row.bits = seq.size();
  const auto cx = complexity(seq.view());
  row.c = cx.c;
  row.k = cx.k;
  const auto verdict = nist::battery(seq.view(), config.alpha, config.block_size);
  row.nist_overall = verdict.overall;
  for (std::size_t i = 0; i < 6; ++i) {
    row.p_values[i] = verdict.results[i].p_value;
    row.statuses[i] = verdict.results[i].status;
  }
  row.random = row.k >= config.k_threshold && row.nist_overall;
}

RunReport failed_row(std::string name, std::string kind, Condition condition, std::string error) {
  RunReport row;
  row.name = std::move(name);
  row.kind = std::move(kind);
  row.condition = condition;
  row.ok = false;
  row.error = std::move(error);
  row.p_values.fill(std::numeric_limits<double>::quiet_NaN());
  row.statuses.fill(nist::Status::Fail);
  return row;
}

RunReport coincidence_row(const RunBundle& bundle, const AnalyzeConfig& config) {
  RunReport row;
  row.name = bundle.name;
  row.condition = bundle.condition;
  row.kind = "coincidences";
  row.t_w = config.t_w;
  row.delay = config.scan ? scan_delay(bundle.alice, bundle.bob, config.t_w, config.scan_grid).best_delay
                          : config.delay;
  auto seq = match(bundle.alice, bundle.bob, {config.t_w, row.delay, config.time_reference});
  if (config.subset) {
    const auto [a, b] = *config.subset;
    seq = subset(seq, a, b);
    row.kind = "subset " + std::to_string(a) + "," + std::to_string(b);
  }
  row.n = seq.size();
  if (seq.empty()) throw Error(Errc::EmptySequence, "no coincidences found");

  if (!config.subset) {
    try {
      const auto result = chsh(tally(seq, config.code_map), config.sign_mode);
      row.s_chsh = result.s;
      row.sign = result.sign.describe();
    } catch (const Error& e) {
      // Static runs populate fewer than four setting pairs.
      if (e.code() != Errc::NoDataForPair) throw;
    }
  }

  const auto encoding = config.encoding.value_or(Encoding::Joint);
  switch (encoding) {
    case Encoding::Codes: fill_analysis(row, encode_alice_codes(seq), config); break;
    case Encoding::Joint: fill_analysis(row, encode_joint(seq), config); break;
    case Encoding::Dt: fill_analysis(row, binarize_times(seq.times()), config); break;
  }
  return row;
}

RunReport singles_row(const RunBundle& bundle, const AnalyzeConfig& config) {
  RunReport row;
  row.name = bundle.name;
  row.condition = bundle.condition;
  row.kind = "singles";
  row.t_w = config.t_w;
  row.delay = 0.0;
  row.n = bundle.alice.size();
  if (config.encoding == Encoding::Dt) {
    fill_analysis(row, binarize_times(bundle.alice.times()), config);
  } else {
    auto seq = encode_codes(bundle.alice.codes());
    seq.encoding = "codes:2bit-msb(alice singles)";
    fill_analysis(row, seq, config);
  }
  return row;
}

template <typename Fn>
RunReport guarded(const RunBundle& bundle, std::string kind, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return failed_row(bundle.name, std::move(kind), bundle.condition, e.what());
  }
}

void validate(const AnalyzeConfig& config) {
  CoincidenceConfig{config.t_w, config.delay, config.time_reference}.validate();
  config.code_map.validate();
  if (config.scan) (void)config.scan_grid.points();
  if (config.subset && (config.subset->first > 3 || config.subset->second > 3)) {
    throw Error(Errc::InvalidConfig, "subset codes must be in 0..3");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw Error(Errc::InvalidConfig, "alpha must be in (0, 1)");
  if (config.block_size < 20) throw Error(Errc::BlockTooSmall, "block size must be >= 20");
}

}  // namespace

std::vector<RunReport> analyze_bundle(const RunBundle& bundle, const AnalyzeConfig& config) {
  validate(config);
  std::vector<RunReport> rows;
  rows.push_back(guarded(bundle, config.subset ? "subset" : "coincidences",
                         [&] { return coincidence_row(bundle, config); }));
  if (config.singles) rows.push_back(guarded(bundle, "singles", [&] { return singles_row(bundle, config); }));
  return rows;
}

std::vector<RunReport> analyze(std::span<const std::filesystem::path> prefixes,
                               const AnalyzeConfig& config) {
  validate(config);
  std::vector<std::vector<RunReport>> per_run(prefixes.size());
  const auto count = static_cast<std::ptrdiff_t>(prefixes.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& prefix = prefixes[static_cast<std::size_t>(i)];
    auto& out = per_run[static_cast<std::size_t>(i)];
    try {
      out = analyze_bundle(load_run(prefix, config.condition), config);
    } catch (const std::exception& e) {
      out.push_back(failed_row(prefix.filename().string(), "coincidences", config.condition, e.what()));
    }
  }
  std::vector<RunReport> rows;
  for (auto& r : per_run) std::move(r.begin(), r.end(), std::back_inserter(rows));
  return rows;
}

std::string format_k(double k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", k);
  return buf;
}

std::string format_p(double p) {
  if (std::isnan(p)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", p);
  return buf;
}

std::string format_s(const std::optional<double>& s) {
  if (!s) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", *s);
  return buf;
}

std::string format_seconds(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", t);
  return buf;
}

namespace {

const std::vector<std::string>& csv_header() {
  static const std::vector<std::string> h = {
      "name", "kind", "condition", "encoding", "n", "bits", "c", "k", "nist", "random",
      "p_monobit", "p_block_frequency", "p_runs", "p_longest_run", "p_matrix_rank", "p_dft_spectral",
      "tests", "s_chsh", "sign", "t_w", "delay", "status", "error"};
  return h;
}

std::string join_statuses(const std::array<nist::Status, 6>& statuses) {
  std::string out;
  for (std::size_t i = 0; i < statuses.size(); ++i) {
    if (i) out += '/';
    out += nist::to_string(statuses[i]);
  }
  return out;
}

std::vector<std::string> row_fields(const RunReport& r) {
  std::vector<std::string> f = {r.name,
                                r.kind,
                                std::string(to_string(r.condition)),
                                r.encoding,
                                std::to_string(r.n),
                                std::to_string(r.bits),
                                std::to_string(r.c),
                                r.ok ? format_k(r.k) : "n/a",
                                r.ok ? (r.nist_overall ? "yes" : "no") : "n/a",
                                r.ok ? (r.random ? "yes" : "no") : "n/a"};
  for (const double p : r.p_values) f.push_back(format_p(p));
  f.push_back(r.ok ? join_statuses(r.statuses) : "n/a");
  f.push_back(format_s(r.s_chsh));
  f.push_back(r.sign.empty() ? "n/a" : r.sign);
  f.push_back(format_seconds(r.t_w));
  f.push_back(format_seconds(r.delay));
  f.push_back(r.ok ? "ok" : "failed");
  f.push_back(r.error);
  return f;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      record.clear();
      field.clear();
      any = false;
    } else {
      field += ch;
      any = true;
    }
  }
  if (quoted) throw Error(Errc::MalformedLine, "unterminated quoted CSV field");
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

double parse_double(const std::string& s, std::size_t line) {
  if (s == "n/a") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::MalformedLine, "bad number '" + s + "' in report line " + std::to_string(line), line);
  }
  return v;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::MalformedLine, "bad count '" + s + "' in report line " + std::to_string(line), line);
  }
  return v;
}

nist::Status parse_status(std::string_view s, std::size_t line) {
  for (auto st : {nist::Status::Pass, nist::Status::Fail, nist::Status::TooShort,
                  nist::Status::PrerequisiteFailed}) {
    if (nist::to_string(st) == s) return st;
  }
  throw Error(Errc::MalformedLine, "bad test status in report line " + std::to_string(line), line);
}

}  // namespace

std::string format_csv(std::span<const RunReport> reports) {
  std::string out;
  const auto append = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(fields[i]);
    }
    out += '\n';
  };
  append(csv_header());
  for (const auto& r : reports) append(row_fields(r));
  return out;
}

std::string format_text(std::span<const RunReport> reports) {
  const std::vector<std::size_t> columns = {0, 1, 3, 7, 8, 9, 17, 4, 5, 10, 11, 12, 13, 14, 15, 19, 20, 21};
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header;
  for (const auto c : columns) header.push_back(csv_header()[c]);
  table.push_back(header);
  for (const auto& r : reports) {
    const auto fields = row_fields(r);
    std::vector<std::string> row;
    for (const auto c : columns) row.push_back(fields[c]);
    table.push_back(std::move(row));
  }
  std::vector<std::size_t> width(columns.size(), 0);
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += "  ";
      out += row[i];
      if (i + 1 < row.size()) out.append(width[i] - row[i].size(), ' ');
    }
    out += '\n';
  }
  for (const auto& r : reports) {
    if (!r.ok) out += "# " + r.name + " (" + r.kind + ") failed: " + r.error + '\n';
  }
  return out;
}

std::vector<RunReport> parse_csv(std::string_view csv) {
  const auto records = csv_records(csv);
  if (records.empty() || records.front() != csv_header()) {
    throw Error(Errc::MalformedLine, "report CSV header missing or unexpected", 1);
  }
  std::vector<RunReport> reports;
  for (std::size_t li = 1; li < records.size(); ++li) {
    const auto& f = records[li];
    const std::size_t line = li + 1;
    if (f.size() != csv_header().size()) {
      throw Error(Errc::MalformedLine, "report line " + std::to_string(line) + " has wrong field count", line);
    }
    RunReport r;
    r.name = f[0];
    r.kind = f[1];
    r.condition = parse_condition(f[2]);
    r.encoding = f[3];
    r.n = parse_count(f[4], line);
    r.bits = parse_count(f[5], line);
    r.c = parse_count(f[6], line);
    r.ok = f[21] == "ok";
    r.k = r.ok ? parse_double(f[7], line) : 0.0;
    r.nist_overall = f[8] == "yes";
    r.random = f[9] == "yes";
    for (std::size_t i = 0; i < 6; ++i) r.p_values[i] = parse_double(f[10 + i], line);
    r.statuses.fill(nist::Status::Fail);
    if (r.ok) {
      std::string_view s = f[16];
      for (std::size_t i = 0; i < 6; ++i) {
        const auto slash = s.find('/');
        r.statuses[i] = parse_status(s.substr(0, slash), line);
        s.remove_prefix(slash == std::string_view::npos ? s.size() : slash + 1);
      }
    }
    if (f[17] != "n/a") r.s_chsh = parse_double(f[17], line);
    r.sign = f[18] == "n/a" ? "" : f[18];
    r.t_w = parse_double(f[19], line);
    r.delay = parse_double(f[20], line);
    r.error = f[22];
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<ScatterPoint> scatter(std::span<const RunReport> reports) {
  std::vector<ScatterPoint> points;
  for (const auto& r : reports) {
    if (r.ok && r.s_chsh) points.push_back({r.name, r.k, *r.s_chsh, r.nist_overall});
  }
  if (points.empty()) throw Error(Errc::NoApplicableRuns, "no report row has an applicable S_CHSH");
  return points;
}

std::string format_scatter_csv(std::span<const ScatterPoint> points, double k_line,
                               double bell_limit) {
  std::string out = "# bell_limit=" + format_k(bell_limit) + "\n# k_line=" + format_k(k_line) + '\n';
  out += "name,k,s_chsh,nist_overall\n";
  for (const auto& p : points) {
    out += csv_escape(p.name) + ',' + format_k(p.k) + ',' + format_s(p.s_chsh) + ',' +
           (p.nist_overall ? "yes" : "no") + '\n';
  }
  return out;
}

}  // namespace bellrand
