#pragma once

#include <filesystem>
#include <string>

#include "csr/montecarlo.hpp"

namespace csr::io {

// Formats with 12 significant digits so textual output is diffable.
std::string format_g12(double x);

// Signal CSV: one sample per line, `re,im`, imaginary column optional
// (defaults to 0), no header. Ragged or non-numeric rows are rejected.
Signal read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, const Signal& x);

// Generic sensing matrix CSV: m rows, 2n columns, interleaved re,im.
Eigen::MatrixXcd read_matrix_csv(const std::filesystem::path& path);

// Score CSV: header `s,score`, one row per candidate shift.
void write_scores_csv(const std::filesystem::path& path, const ScoreVector& scores);

// Stable-field JSON: commutation_ok, tight_frame_alpha, min_gap, delta_zv,
// noise_gap_2ev, verdict, details.
std::string certificate_to_json(const RecoveryCertificate& cert);

// Suite CSV: header `trial,m,l,s_hat,snr,verdict,delta_zv,min_gap,margin`.
// Optional fields print empty. Rows follow record order.
void write_suite_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records);

// Histogram CSV: header `m,shift,count`.
void write_histogram_csv(const std::filesystem::path& path, const HistogramResult& hist);

std::string noise_free_summary_json(const TrialConfig& cfg, const NoiseFreeSuiteResult& result);
std::string noisy_summary_json(const TrialConfig& cfg, const NoisySuiteResult& result);

}  // namespace csr::io
