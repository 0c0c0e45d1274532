#include <sstream>

#include "loomalg/dsl/runner.hpp"

namespace loomalg::dsl {

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_value(std::ostringstream& os, const std::string& key, const Json& v, int indent) {
  const std::string pad(indent, ' ');
  if (v.is_object()) {
    os << pad << key << ":\n";
    for (const auto& [k, x] : v.items()) render_value(os, k, x, indent + 2);
  } else if (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array())) {
    os << pad << key << ":\n";
    for (const auto& x : v) {
      if (x.is_object()) {
        bool first = true;
        for (const auto& [k, y] : x.items()) {
          if (y.is_structured()) {
            render_value(os, k, y, indent + 4);
            first = false;
            continue;
          }
          os << pad << (first ? "  - " : "    ") << k << ": " << scalar_text(y) << "\n";
          first = false;
        }
      } else {
        os << pad << "  - " << x.dump() << "\n";
      }
    }
  } else if (v.is_array()) {
    os << pad << key << ":";
    if (v.empty()) os << " []";
    const bool strings = !v.empty() && v[0].is_string();
    if (strings && v.size() > 4) {
      os << "\n";
      for (const auto& x : v) os << pad << "  - " << x.get<std::string>() << "\n";
      return;
    }
    if (!v.empty()) {
      os << " ";
      for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
    }
    os << "\n";
  } else {
    os << pad << key << ": " << scalar_text(v) << "\n";
  }
}

std::string kind_label(const Json& d) { return d["kind"].get<std::string>(); }

}  // namespace

Json diagnostics_report(const std::vector<Diagnostic>& diags, const std::string& source_name) {
  Json r;
  r["schema_version"] = kSchemaVersion;
  r["tool"] = "loomalg";
  r["source"] = source_name;
  Json list = Json::array();
  for (const auto& d : diags)
    list.push_back({{"severity", d.severity == Diagnostic::Severity::Error ? "error" : "warning"},
                    {"code", d.code},
                    {"message", d.message},
                    {"line", d.span.line},
                    {"column", d.span.column},
                    {"end_line", d.span.end_line},
                    {"end_column", d.span.end_column}});
  r["diagnostics"] = std::move(list);
  r["ok"] = false;
  return r;
}

std::string render_text(const Json& report) {
  std::ostringstream os;
  if (report.contains("title")) os << report["title"].get<std::string>() << "\n";
  os << "field " << report["field"]["name"].get<std::string>() << ", seed " << report["seed"].dump() << "\n";
  for (const auto& d : report["declarations"]) {
    os << kind_label(d) << " " << d["name"].get<std::string>();
    if (d["ok"].get<bool>()) {
      os << ": ";
      bool first = true;
      for (const auto& [k, v] : d["summary"].items()) {
        if (k == "labels") continue;
        os << (first ? "" : ", ") << k << " ";
        if (v.is_array()) {
          os << "[";
          for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << scalar_text(v[i]);
          os << "]";
        } else {
          os << scalar_text(v);
        }
        first = false;
      }
      os << "\n";
    } else {
      os << ": error[" << d["error"]["code"].get<std::string>() << "] "
         << d["error"]["message"].get<std::string>() << "\n";
    }
  }
  for (const auto& c : report["commands"]) {
    const std::string status = c["status"].get<std::string>();
    os << "\n[" << c["index"].dump() << "] " << c["command"].get<std::string>() << " "
       << c["target"].get<std::string>() << ": " << status << "\n";
    if (c.contains("result"))
      for (const auto& [k, v] : c["result"].items()) render_value(os, k, v, 2);
    if (c.contains("error"))
      os << "  error[" << c["error"]["code"].get<std::string>() << "]: " << c["error"]["message"].get<std::string>()
         << "\n";
  }
  const auto& s = report["summary"];
  os << "\n"
     << s["passed"].dump() << " passed, " << s["failed"].dump() << " failed, " << s["skipped"].dump()
     << " skipped\n";
  return os.str();
}

std::string render_diagnostics(const std::vector<Diagnostic>& diags, std::string_view source,
                               const std::string& source_name) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= source.size()) {
    const size_t nl = source.find('\n', start);
    const size_t end = nl == std::string_view::npos ? source.size() : nl;
    lines.push_back(source.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  std::ostringstream os;
  for (const auto& d : diags) {
    os << source_name << ":" << d.span.line << ":" << d.span.column << ": "
       << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << "[" << d.code << "]: " << d.message
       << "\n";
    if (d.span.line == 0 || d.span.line > lines.size()) continue;
    const auto text = lines[d.span.line - 1];
    os << "  " << text << "\n  ";
    // columns count code points; pad with one space per code point
    size_t col = 1;
    for (size_t i = 0; i < text.size() && col < d.span.column; ++i)
      if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        os << (text[i] == '\t' ? '\t' : ' ');
        ++col;
      }
    size_t width = 1;
    if (d.span.end_line == d.span.line && d.span.end_column > d.span.column)
      width = d.span.end_column - d.span.column;
    os << std::string(width, '^') << "\n";
  }
  return os.str();
}

}  // namespace loomalg::dsl
