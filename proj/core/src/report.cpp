#include <cvlab/report.hpp>

#include <cvlab/errors.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

namespace cvlab {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double number_from(const json& j) {
  if (j.is_null()) return kNaN;
  return j.get<double>();
}

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string describe_L(const LimitResult& L) {
  switch (L.kind) {
    case LimitResult::Kind::Finite:
      return format_human(L.value) + " +/- " + format_human(L.error_bound);
    case LimitResult::Kind::Divergent:
      return "divergent (" + to_string(L.direction) + ")";
    case LimitResult::Kind::Unavailable:
      return "unavailable";
  }
  return "?";
}

std::string describe_c(const TotalCurvature& c) {
  switch (c.kind) {
    case TotalCurvature::Kind::Finite:
      return format_human(c.value) + " +/- " + format_human(c.error);
    case TotalCurvature::Kind::PlusInfinity:
      return "+inf";
    case TotalCurvature::Kind::DoesNotConverge:
      return "does not converge (direction " + to_string(c.direction) + ")";
  }
  return "?";
}

}  // namespace

std::string format_human(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "human") return ReportFormat::Human;
  throw InvalidParameter("unknown format '" + s + "'");
}

std::string to_json(const SweepReport& r) {
  json j = json::object();
  j["surface"] = r.surface;
  j["chi"] = r.chi;
  j["h1"] = r.h1 ? json(*r.h1) : json("not found");
  switch (r.L.kind) {
    case LimitResult::Kind::Finite:
      j["L"] = r.L.value;
      j["L_error"] = number_or_null(r.L.error_bound);
      break;
    case LimitResult::Kind::Divergent:
      j["L"] = "divergent";
      j["L_error"] = nullptr;
      break;
    case LimitResult::Kind::Unavailable:
      j["L"] = "unavailable";
      j["L_error"] = nullptr;
      break;
  }
  switch (r.c_total.kind) {
    case TotalCurvature::Kind::Finite: j["c_total"] = r.c_total.value; break;
    case TotalCurvature::Kind::PlusInfinity: j["c_total"] = "+inf"; break;
    case TotalCurvature::Kind::DoesNotConverge:
      j["c_total"] = "does not converge";
      break;
  }
  json samples = json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"h", s.h},
                       {"mu", s.mu},
                       {"lambda", s.lambda},
                       {"c_trunc", s.c_trunc},
                       {"quad_error", s.quad_error},
                       {"gb_residual", s.gb_residual},
                       {"lambda_error", s.lambda_error},
                       {"c_error", s.c_error}});
  }
  j["samples"] = std::move(samples);
  json verdicts = json::object();
  for (const auto& [name, v] : r.verdicts) {
    verdicts[name] = {{"status", to_string(v.status)},
                      {"residual", number_or_null(v.residual)},
                      {"bound", number_or_null(v.bound)},
                      {"note", v.note}};
  }
  j["verdicts"] = std::move(verdicts);
  return j.dump(2) + "\n";
}

SweepReport parse_report_json(const std::string& text) {
  SweepReport r;
  try {
    const json j = json::parse(text);
    r.surface = j.at("surface").get<std::string>();
    r.chi = j.at("chi").get<int>();
    if (j.at("h1").is_number()) r.h1 = j.at("h1").get<double>();
    const json& L = j.at("L");
    if (L.is_number()) {
      r.L.kind = LimitResult::Kind::Finite;
      r.L.value = L.get<double>();
      r.L.error_bound = number_from(j.at("L_error"));
    } else {
      r.L.kind = L.get<std::string>() == "divergent"
                     ? LimitResult::Kind::Divergent
                     : LimitResult::Kind::Unavailable;
      r.L.error_bound = kNaN;
    }
    const json& c = j.at("c_total");
    if (c.is_number()) {
      r.c_total.kind = TotalCurvature::Kind::Finite;
      r.c_total.value = c.get<double>();
    } else if (c.get<std::string>() == "+inf") {
      r.c_total.kind = TotalCurvature::Kind::PlusInfinity;
    } else {
      r.c_total.kind = TotalCurvature::Kind::DoesNotConverge;
    }
    for (const json& s : j.at("samples")) {
      TruncationSample t;
      t.h = s.at("h").get<double>();
      t.mu = s.at("mu").get<double>();
      t.lambda = s.at("lambda").get<double>();
      t.c_trunc = s.at("c_trunc").get<double>();
      t.quad_error = s.at("quad_error").get<double>();
      t.gb_residual = s.at("gb_residual").get<double>();
      t.lambda_error = s.value("lambda_error", 0.0);
      t.c_error = s.value("c_error", 0.0);
      r.samples.push_back(t);
    }
    for (const auto& [name, v] : j.at("verdicts").items()) {
      Verdict out;
      out.status = verdict_status_from_string(v.at("status").get<std::string>());
      out.residual = number_from(v.at("residual"));
      out.bound = number_from(v.at("bound"));
      out.note = v.value("note", "");
      r.verdicts[name] = out;
    }
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("malformed report JSON: ") + e.what());
  }
  return r;
}

std::string to_csv(const SweepReport& r) {
  std::string out = "h,mu,lambda,c_trunc,quad_error,gb_residual\n";
  for (const auto& s : r.samples) {
    out += full(s.h) + ',' + full(s.mu) + ',' + full(s.lambda) + ',' +
           full(s.c_trunc) + ',' + full(s.quad_error) + ',' +
           full(s.gb_residual) + '\n';
  }
  return out;
}

std::string verdict_table(const SweepReport& r) {
  std::ostringstream os;
  for (const auto& [name, v] : r.verdicts) {
    os << name << ": " << to_string(v.status);
    if (!v.note.empty()) os << " (" << v.note << ")";
    if (std::isfinite(v.residual))
      os << "  residual " << format_human(v.residual) << "  bound "
         << format_human(v.bound);
    os << '\n';
  }
  return os.str();
}

std::string to_human(const SweepReport& r) {
  std::ostringstream os;
  os << "surface " << r.surface << "  chi = " << r.chi << '\n';
  os << "h1 = " << (r.h1 ? format_human(*r.h1) : std::string("not found"))
     << '\n';
  os << "L = " << describe_L(r.L) << '\n';
  os << "c_total = " << describe_c(r.c_total) << '\n';
  os << '\n';
  const int w = 14;
  os << std::setw(w) << "h" << std::setw(w) << "mu" << std::setw(w)
     << "lambda" << std::setw(w) << "c_trunc" << std::setw(w) << "quad_error"
     << std::setw(w) << "gb_residual" << '\n';
  for (const auto& s : r.samples) {
    os << std::setw(w) << format_human(s.h) << std::setw(w)
       << format_human(s.mu) << std::setw(w) << format_human(s.lambda)
       << std::setw(w) << format_human(s.c_trunc) << std::setw(w)
       << format_human(s.quad_error) << std::setw(w)
       << format_human(s.gb_residual) << '\n';
  }
  os << '\n' << verdict_table(r);
  if (!r.notes.empty()) {
    os << '\n';
    for (const auto& n : r.notes) os << "note: " << n << '\n';
  }
  return os.str();
}

std::string render(const SweepReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return to_json(r);
    case ReportFormat::Csv: return to_csv(r);
    case ReportFormat::Human: return to_human(r);
  }
  return {};
}

}  // namespace cvlab
