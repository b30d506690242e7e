#include "edgeflow/spectra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "edgeflow/errors.hpp"

namespace edgeflow::spectra {

namespace {

constexpr Kind kAllKinds[] = {Kind::ScalarLaplacian, Kind::EinsteinTT,
                              Kind::LichnerowiczTracefree};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string to_shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double binomial(int n, int k) {
  if (k < 0 || n < k) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::ScalarLaplacian:
      return "scalar-laplacian";
    case Kind::EinsteinTT:
      return "einstein-tt";
    case Kind::LichnerowiczTracefree:
      return "lichnerowicz-tracefree";
  }
  return "?";
}

std::optional<Kind> parse_kind(std::string_view text) {
  for (Kind k : kAllKinds) {
    if (kind_name(k) == text) return k;
  }
  return std::nullopt;
}

std::vector<SpectrumRecord> SpectrumTable::of_kind(Kind kind) const {
  std::vector<SpectrumRecord> out;
  for (const auto& r : records) {
    if (r.kind == kind) out.push_back(r);
  }
  return out;
}

bool SpectrumTable::has_kind(Kind kind) const {
  return std::any_of(records.begin(), records.end(),
                     [kind](const SpectrumRecord& r) { return r.kind == kind; });
}

void validate(const SpectrumTable& table) {
  std::map<Kind, double> last;
  bool scalar_zero = false;
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    const auto& r = table.records[i];
    const std::string where = "record " + std::to_string(i + 1) + " (" +
                              std::string(kind_name(r.kind)) + ")";
    if (!std::isfinite(r.eigenvalue)) {
      throw ValidationError(where + ": eigenvalue is not finite");
    }
    if (r.multiplicity < 1) {
      throw ValidationError(where + ": multiplicity " + std::to_string(r.multiplicity) +
                            " < 1");
    }
    if (r.kind == Kind::ScalarLaplacian) {
      if (r.eigenvalue < 0.0) {
        throw ValidationError(where + ": negative scalar eigenvalue " + fmt(r.eigenvalue));
      }
      if (r.eigenvalue == 0.0) scalar_zero = true;
    }
    auto it = last.find(r.kind);
    if (it != last.end() && !(r.eigenvalue > it->second)) {
      throw ValidationError(where + ": eigenvalue " + fmt(r.eigenvalue) +
                            " not strictly above previous " + fmt(it->second));
    }
    last[r.kind] = r.eigenvalue;
  }
  const bool needs_zero = table.records.empty() || table.has_kind(Kind::ScalarLaplacian);
  if (needs_zero && !scalar_zero) {
    throw ValidationError("missing zero eigenvalue in scalar-laplacian records");
  }
  if (table.fibre_dimension < 1) {
    throw ValidationError("fibre_dimension missing or < 1");
  }
}

SpectrumTable parse_spectrum(std::string_view text, int fibre_dimension_hint) {
  SpectrumTable table;
  bool have_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                    : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      if (body.rfind("source=", 0) == 0) table.source = std::string(body.substr(7));
      continue;
    }
    if (line.rfind("fibre_dimension", 0) == 0) {
      const auto eq = line.find('=');
      int f = 0;
      if (eq == std::string_view::npos || !parse_number(trim(line.substr(eq + 1)), f)) {
        throw ParseError("bad fibre_dimension header '" + std::string(line) + "'", line_no);
      }
      if (have_header) throw ParseError("duplicate fibre_dimension header", line_no);
      table.fibre_dimension = f;
      have_header = true;
      continue;
    }
    const auto fields = split_ws(line);
    if (fields.size() != 3) {
      throw ParseError("expected '<eigenvalue> <multiplicity> <kind>', got '" +
                           std::string(line) + "'",
                       line_no);
    }
    SpectrumRecord rec;
    if (!parse_number(fields[0], rec.eigenvalue)) {
      throw ParseError("bad eigenvalue '" + std::string(fields[0]) + "'", line_no);
    }
    if (!parse_number(fields[1], rec.multiplicity)) {
      throw ParseError("bad multiplicity '" + std::string(fields[1]) + "'", line_no);
    }
    const auto kind = parse_kind(fields[2]);
    if (!kind) throw ParseError("unknown kind '" + std::string(fields[2]) + "'", line_no);
    rec.kind = *kind;
    table.records.push_back(rec);
  }
  if (!have_header) table.fibre_dimension = fibre_dimension_hint;
  return table;
}

SpectrumTable load_spectrum(const std::string& path, int fibre_dimension_hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open spectrum file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto table = parse_spectrum(buf.str(), fibre_dimension_hint);
  validate(table);
  return table;
}

std::string format_spectrum(const SpectrumTable& table) {
  std::string out = "fibre_dimension=" + std::to_string(table.fibre_dimension) + "\n";
  if (!table.source.empty()) out += "# source=" + table.source + "\n";
  for (const auto& r : table.records) {
    out += to_shortest(r.eigenvalue);
    out += ' ';
    out += std::to_string(r.multiplicity);
    out += ' ';
    out += kind_name(r.kind);
    out += '\n';
  }
  return out;
}

void save_spectrum(const SpectrumTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write spectrum file '" + path + "'");
  out << format_spectrum(table);
}

SpectrumTable sphere_scalar_spectrum(int f, int k_max) {
  if (f < 1 || k_max < 1) throw DomainError("sphere_scalar_spectrum: need f >= 1, k_max >= 1");
  SpectrumTable table;
  table.fibre_dimension = f;
  table.source = "unit round S^" + std::to_string(f);
  for (int k = 0; k <= k_max; ++k) {
    const double mult = binomial(k + f, f) - binomial(k + f - 2, f);
    table.records.push_back(SpectrumRecord{static_cast<double>(k) * (k + f - 1),
                                           static_cast<int>(mult), Kind::ScalarLaplacian});
  }
  return table;
}

long long rotation_irrep_dimension(int n, const std::vector<int>& weight) {
  if (n < 3) throw DomainError("rotation_irrep_dimension: need n >= 3");
  const int r = n / 2;
  if (static_cast<int>(weight.size()) > r) throw DomainError("rotation_irrep_dimension: weight too long");
  std::vector<double> rho(r), l(r);
  for (int i = 0; i < r; ++i) {
    rho[i] = n % 2 ? r - i - 0.5 : r - i - 1.0;
    const int w = i < static_cast<int>(weight.size()) ? weight[i] : 0;
    if (w < 0 || (i > 0 && w > weight[i - 1])) throw DomainError("rotation_irrep_dimension: weight must be nonincreasing and >= 0");
    l[i] = w + rho[i];
  }
  double dim = 1.0;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) dim *= (l[i] * l[i] - l[j] * l[j]) / (rho[i] * rho[i] - rho[j] * rho[j]);
    if (n % 2) dim *= l[i] / rho[i];
  }
  long long d = std::llround(dim);
  if (n % 2 == 0 && static_cast<int>(weight.size()) == r && weight.back() > 0) d *= 2;
  return d;
}

SpectrumTable sphere_tt_spectrum(int f, int k_max) {
  if (f < 1 || k_max < 2) throw DomainError("sphere_tt_spectrum: need f >= 1, k_max >= 2");
  SpectrumTable table;
  table.fibre_dimension = f;
  table.source = "unit round S^" + std::to_string(f) + ", einstein operator on TT";
  if (f < 3) return table;
  for (int k = 2; k <= k_max; ++k) {
    table.records.push_back(SpectrumRecord{static_cast<double>(k) * (k + f - 1),
                                           static_cast<int>(rotation_irrep_dimension(f + 1, {k, 2})),
                                           Kind::EinsteinTT});
  }
  return table;
}

namespace {

struct Audit {
  StabilityReport base;
  std::vector<Violation> strict;
  std::vector<Violation> weak;
};

Audit audit(const SpectrumTable& einstein_tt, const SpectrumTable& scalar, int f,
            const SpectrumTable* lichnerowicz) {
  if (f < 1) throw DomainError("stability check: f must be >= 1");
  Audit a;
  const auto tt = einstein_tt.of_kind(Kind::EinsteinTT);
  const auto sc = scalar.of_kind(Kind::ScalarLaplacian);
  if (sc.empty()) throw ValidationError("stability check: scalar table has no scalar records");

  for (const auto& r : sc) {
    if (r.eigenvalue != 0.0 && (!a.base.u1 || r.eigenvalue < *a.base.u1)) a.base.u1 = r.eigenvalue;
  }
  if (lichnerowicz) {
    for (const auto& r : lichnerowicz->of_kind(Kind::LichnerowiczTracefree)) {
      if (!a.base.u0 || r.eigenvalue < *a.base.u0) a.base.u0 = r.eigenvalue;
    }
    std::optional<double> u = a.base.u1;
    for (const auto& r : lichnerowicz->of_kind(Kind::LichnerowiczTracefree)) {
      if (r.eigenvalue != 0.0 && (!u || r.eigenvalue < *u)) u = r.eigenvalue;
    }
    a.base.u = u;
  }

  const double lo = f;
  const double hi = 2.0 * (f + 1);
  for (const auto& r : tt) {
    if (r.eigenvalue <= 0.0) a.strict.push_back({r.eigenvalue, kRuleTTNonpositive});
    if (r.eigenvalue < 0.0) a.weak.push_back({r.eigenvalue, kRuleTTNegative});
  }
  for (const auto& r : sc) {
    if (r.eigenvalue == 0.0) continue;
    if (r.eigenvalue > lo && r.eigenvalue <= hi) a.strict.push_back({r.eigenvalue, kRuleScalarClosed});
    if (r.eigenvalue > lo && r.eigenvalue < hi) a.weak.push_back({r.eigenvalue, kRuleScalarOpen});
  }
  auto by_value = [](const Violation& x, const Violation& y) {
    return x.eigenvalue < y.eigenvalue || (x.eigenvalue == y.eigenvalue && x.rule < y.rule);
  };
  auto dedupe = [&](std::vector<Violation>& v) {
    std::sort(v.begin(), v.end(), by_value);
    v.erase(std::unique(v.begin(), v.end(),
                        [](const Violation& x, const Violation& y) {
                          return x.eigenvalue == y.eigenvalue && x.rule == y.rule;
                        }),
            v.end());
  };
  dedupe(a.strict);
  dedupe(a.weak);

  if (f < 3) {
    a.base.applicable = false;
    a.base.note = "outside theorem hypothesis (f < 3); no stability claim";
  } else {
    a.base.tangential = a.strict.empty();
    a.base.weak = a.weak.empty();
  }
  return a;
}

}  // namespace

StabilityReport check_tangential_stability(const SpectrumTable& einstein_tt,
                                           const SpectrumTable& scalar, int f,
                                           const SpectrumTable* lichnerowicz) {
  auto a = audit(einstein_tt, scalar, f, lichnerowicz);
  a.base.violations = std::move(a.strict);
  return a.base;
}

StabilityReport check_weak_tangential_stability(const SpectrumTable& einstein_tt,
                                                const SpectrumTable& scalar, int f,
                                                const SpectrumTable* lichnerowicz) {
  auto a = audit(einstein_tt, scalar, f, lichnerowicz);
  a.base.violations = std::move(a.weak);
  return a.base;
}

}  // namespace edgeflow::spectra
