#include "csr/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace csr::io {

namespace {

using nlohmann::json;

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_number(const std::string& field, const std::filesystem::path& path, int line_no) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                             ": not a number: '" + field + "'");
  }
  while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
  if (pos != field.size())
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                             ": not a number: '" + field + "'");
  return value;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

json certificate_json(const RecoveryCertificate& cert) {
  json j;
  j["commutation_ok"] = cert.commutation_ok;
  j["tight_frame_alpha"] =
      cert.tight_frame_alpha ? json(*cert.tight_frame_alpha) : json(nullptr);
  j["min_gap"] = cert.min_gap;
  j["delta_zv"] = cert.delta_zv ? json(*cert.delta_zv) : json(nullptr);
  j["noise_gap_2ev"] = cert.noise_gap_2ev ? json(*cert.noise_gap_2ev) : json(nullptr);
  j["verdict"] = to_string(cert.verdict);
  j["details"] = json::object();
  for (const auto& [key, value] : cert.details) j["details"][key] = value;
  return j;
}

}  // namespace

std::string format_g12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

Signal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<cplx> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 1 && fields.size() != 2)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 1 or 2 columns, got " +
                               std::to_string(fields.size()));
    const double re = parse_number(fields[0], path, line_no);
    const double im = fields.size() == 2 ? parse_number(fields[1], path, line_no) : 0.0;
    samples.emplace_back(re, im);
  }
  if (samples.empty()) throw std::runtime_error(path.string() + ": no samples");
  Eigen::VectorXcd values(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t t = 0; t < samples.size(); ++t) values[static_cast<Eigen::Index>(t)] = samples[t];
  return Signal(std::move(values));
}

void write_signal_csv(const std::filesystem::path& path, const Signal& x) {
  std::ofstream out = open_out(path);
  for (int t = 0; t < x.size(); ++t) {
    out << format_g12(x[t].real()) << "," << format_g12(x[t].imag()) << "\n";
  }
}

Eigen::MatrixXcd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<std::vector<cplx>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() % 2 != 0 || fields.empty())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected an even number of re,im columns");
    std::vector<cplx> row(fields.size() / 2);
    for (std::size_t c = 0; c < row.size(); ++c) {
      row[c] = cplx(parse_number(fields[2 * c], path, line_no),
                    parse_number(fields[2 * c + 1], path, line_no));
    }
    if (!rows.empty() && rows.front().size() != row.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path.string() + ": empty matrix");
  Eigen::MatrixXcd M(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows.front().size(); ++c)
      M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return M;
}

void write_scores_csv(const std::filesystem::path& path, const ScoreVector& scores) {
  std::ofstream out = open_out(path);
  out << "s,score\n";
  for (Eigen::Index s = 0; s < scores.size(); ++s) {
    out << s << "," << format_g12(scores[s]) << "\n";
  }
}

std::string certificate_to_json(const RecoveryCertificate& cert) {
  return certificate_json(cert).dump(2);
}

void write_suite_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
  std::ofstream out = open_out(path);
  out << "trial,m,l,s_hat,snr,verdict,delta_zv,min_gap,margin\n";
  long trial = 0;
  int current_m = records.empty() ? 0 : records.front().m;
  for (const TrialRecord& rec : records) {
    if (rec.m != current_m) {
      current_m = rec.m;
      trial = 0;  // trial index restarts per m block
    }
    out << trial << "," << rec.m << "," << rec.true_shift << "," << rec.estimated_shift << ",";
    if (!std::isnan(rec.snr_realized)) out << format_g12(rec.snr_realized);
    out << "," << to_string(rec.certificate.verdict) << ",";
    if (rec.certificate.delta_zv) out << format_g12(*rec.certificate.delta_zv);
    out << "," << format_g12(rec.certificate.min_gap) << "," << format_g12(rec.margin) << "\n";
    ++trial;
  }
}

void write_histogram_csv(const std::filesystem::path& path, const HistogramResult& hist) {
  std::ofstream out = open_out(path);
  out << "m,shift,count\n";
  for (std::size_t i = 0; i < hist.ms.size(); ++i) {
    for (int s = 0; s < hist.n; ++s) {
      out << hist.ms[i] << "," << s << "," << hist.counts[i][s] << "\n";
    }
  }
}

namespace {

json config_json(const TrialConfig& cfg, const char* mode) {
  json j;
  j["mode"] = mode;
  j["n"] = cfg.n;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["fs_policy"] = to_string(cfg.fs_policy);
  if (cfg.fixed_m) j["m"] = *cfg.fixed_m;
  else j["m_range"] = {cfg.m_lo, cfg.m_hi};
  if (cfg.fixed_l) j["l"] = *cfg.fixed_l;
  else j["l_range"] = {cfg.l_lo, cfg.l_hi};
  if (cfg.fixed_ks) j["ks"] = *cfg.fixed_ks;
  if (cfg.snr) {
    j["snr"] = *cfg.snr;
    j["noise_mode"] = to_string(cfg.noise_mode);
  }
  return j;
}

}  // namespace

std::string noise_free_summary_json(const TrialConfig& cfg, const NoiseFreeSuiteResult& result) {
  json j;
  j["config"] = config_json(cfg, "noise_free");
  j["success_rate"] = result.success_rate;
  j["failures"] = result.failure_indices.size();
  long guaranteed = 0;
  for (const TrialRecord& rec : result.records)
    if (rec.certificate.verdict == Verdict::noise_free_guaranteed) ++guaranteed;
  j["certificate_rate"] = static_cast<double>(guaranteed) / result.records.size();
  return j.dump(2);
}

std::string noisy_summary_json(const TrialConfig& cfg, const NoisySuiteResult& result) {
  json j;
  j["config"] = config_json(cfg, "noisy");
  j["per_m"] = json::array();
  for (std::size_t i = 0; i < result.success_rate_per_m.size(); ++i) {
    json row;
    row["m"] = static_cast<int>(i) + 1;
    row["success_rate"] = result.success_rate_per_m[i];
    row["certificate_rate"] = result.cert_rate_per_m[i];
    row["certificate_agreement"] = result.cert_agreement_per_m[i];
    j["per_m"].push_back(row);
  }
  return j.dump(2);
}

}  // namespace csr::io
