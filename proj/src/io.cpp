#include "pivroots/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "pivroots/error.hpp"

namespace pivroots {

using mp::Real;

namespace {

std::string k_string(const mpq_class& k) {
  // k is an integer or a half-integer
  if (k.get_den() == 1) return k.get_num().get_str();
  return shortest(k.get_d());
}

}  // namespace

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_real(const Real& x, int digits) {
  if (digits <= 0) return shortest(x.to_double());
  return x.to_string(digits);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::InvalidArgument, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::string roots_csv(const RootSet& roots, int digits) {
  std::ostringstream out;
  out << "re,im,cert_radius\n";
  for (std::size_t i = 0; i < roots.size(); ++i) {
    out << format_real(roots.roots[i].re, digits) << ',' << format_real(roots.roots[i].im, digits) << ','
        << format_real(roots.cert_radius[i], digits) << '\n';
  }
  return out.str();
}

std::string lattice_csv(const std::vector<PredictedPoint>& entries, int digits) {
  std::ostringstream out;
  out << "j,k,re,im\n";
  for (const auto& e : entries) {
    out << e.j << ',' << k_string(e.k) << ',' << format_real(e.value.re, digits) << ',' << format_real(e.value.im, digits) << '\n';
  }
  return out.str();
}

std::string curves_csv(const std::vector<CurveSample>& samples, int digits) {
  std::ostringstream out;
  out << "j,x,g\n";
  for (const auto& s : samples) out << s.j << ',' << format_real(s.x, digits) << ',' << format_real(s.y, digits) << '\n';
  return out.str();
}

std::string betas_csv(const std::vector<NoLogBranch>& branches, int digits) {
  std::ostringstream out;
  out << "n,alpha,E,j,re_beta,im_beta\n";
  for (const auto& b : branches) {
    for (std::size_t i = 0; i < b.betas.size(); ++i) {
      int j = -b.n + 1 + 2 * static_cast<int>(i);
      out << b.n << ',' << format_real(b.alpha.re, digits) << ',' << (std::isinf(b.E) ? std::string("inf") : shortest(b.E)) << ','
          << j << ',' << format_real(b.betas[i].re, digits) << ',' << format_real(b.betas[i].im, digits) << '\n';
    }
  }
  return out.str();
}

std::string poly_json(const ExactPoly& p) {
  nlohmann::json j;
  j["family"] = std::string(to_string(p.family));
  j["m"] = p.m;
  j["n"] = p.n;
  nlohmann::json coeffs = nlohmann::json::array();
  if (p.scale == Scale::Sqrt2) {
    j["scale"] = "sqrt2";
    for (const auto& c : p.coeffs.coeffs()) coeffs.push_back(c.get_str());
  } else {
    j["scale"] = "1";
    RatPoly z = p.in_z();
    for (const auto& c : z.coeffs()) coeffs.push_back(c.get_str());
  }
  j["coeffs"] = coeffs;
  return j.dump(2) + "\n";
}

std::string report_json(const MatchReport& report, std::string_view regime, long precision_bits, std::uint64_t seed) {
  nlohmann::json j;
  j["regime"] = std::string(regime);
  j["radius"] = report.radius.to_double();
  j["satisfied"] = report.satisfied.size();
  j["ambiguous"] = report.ambiguous.size();
  j["unmatched"] = report.unmatched_predictions.size();
  j["max_distance"] = report.max_distance.to_double();
  j["seed"] = seed;
  j["precision_bits"] = precision_bits;
  return j.dump(2) + "\n";
}

std::string certificate_json(const QesCertificate& cert, int digits) {
  auto cx = [&](const mp::Complex& z) { return nlohmann::json::array({format_real(z.re, digits), format_real(z.im, digits)}); };
  nlohmann::json j;
  j["family"] = std::string(to_string(cert.family));
  j["m"] = cert.m;
  j["n"] = cert.n;
  j["a"] = cx(cert.a);
  j["b"] = cx(cert.b);
  j["residual"] = cert.residual.to_double();
  j["certified"] = cert.certified;
  nlohmann::json p = nlohmann::json::array();
  for (const auto& c : cert.p_coeffs) p.push_back(cx(c));
  j["p_coeffs"] = p;
  if (!cert.q_coeffs.empty()) {
    nlohmann::json q = nlohmann::json::array();
    for (const auto& c : cert.q_coeffs) q.push_back(cx(c));
    j["q_coeffs"] = q;
  }
  return j.dump(2) + "\n";
}

}  // namespace pivroots
