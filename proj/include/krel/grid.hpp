#pragma once

// Grids of spectral points: explicit lists ("i,-i,1+2i") or rectangles
// ("rect:re_min:re_max:im_min:im_max:step", upper half mirrored).

#include "krel/weyl.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace krel {

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i" (spaces ignored).
inline Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw DomainError("empty complex literal");
  auto number = [&](const std::string& part) -> double {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw DomainError("bad complex literal '" + text + "'");
    }
    if (used != part.size()) throw DomainError("bad complex literal '" + text + "'");
    return v;
  };
  if (s.back() != 'i') return {number(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, number(body)};
  return {number(body.substr(0, split)), number(body.substr(split))};
}

inline bool near(Complex a, Complex b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }

/// Reorders so that each point is followed by its conjugate; appends missing
/// conjugates when `close` is set.
inline std::vector<Complex> pair_conjugates(const std::vector<Complex>& pts, bool close) {
  std::vector<Complex> out;
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    out.push_back(pts[i]);
    bool found = false;
    for (std::size_t k = i + 1; k < pts.size(); ++k)
      if (!used[k] && near(pts[k], std::conj(pts[i]))) {
        used[k] = true;
        out.push_back(pts[k]);
        found = true;
        break;
      }
    if (!found && close) out.push_back(std::conj(pts[i]));
  }
  return out;
}

inline std::vector<Complex> parse_grid(const std::string& text, bool close = true) {
  std::vector<Complex> pts;
  if (text.rfind("rect:", 0) == 0) {
    std::vector<double> v;
    std::size_t start = 5;
    while (start <= text.size()) {
      const std::size_t end = text.find(':', start);
      const std::string tok = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
      try {
        v.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw DomainError("rect grid: bad number '" + tok + "'");
      }
      if (end == std::string::npos) break;
      start = end + 1;
    }
    if (v.size() != 5) throw DomainError("rect grid needs re_min:re_max:im_min:im_max:step");
    const double re0 = v[0], re1 = v[1], im0 = v[2], im1 = v[3], step = v[4];
    if (!(step > 0.0) || re1 < re0 || im1 < im0) throw DomainError("rect grid: bad bounds or step");
    if (im0 < kRealAxisGuard) throw DomainError("rect grid: im_min must be >= 1e-6 (real-axis band)");
    const auto nr = static_cast<long>(std::floor((re1 - re0) / step + 1e-9));
    const auto ni = static_cast<long>(std::floor((im1 - im0) / step + 1e-9));
    if ((nr + 1) * (ni + 1) > 100000) throw DomainError("rect grid: too many points");
    for (long a = 0; a <= ni; ++a)
      for (long b = 0; b <= nr; ++b) pts.emplace_back(re0 + b * step, im0 + a * step);
    close = true;
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = text.find(',', start);
      const std::string tok = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
      if (tok.find_first_not_of(" \t") != std::string::npos) pts.push_back(parse_complex(tok));
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  if (pts.empty()) throw DomainError("grid is empty");
  for (Complex z : pts) require_off_axis(z);
  return pair_conjugates(pts, close);
}

}  // namespace krel
