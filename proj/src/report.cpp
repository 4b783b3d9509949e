#include "lapgeo/report.hpp"

#include <cmath>
#include <cstdio>

namespace lapgeo {

Json Json::array() {
  Json j;
  j.kind_ = Kind::Arr;
  return j;
}

Json Json::object() {
  Json j;
  j.kind_ = Kind::Obj;
  return j;
}

Json& Json::push(Json v) {
  arr_.push_back(std::move(v));
  return *this;
}

Json& Json::set(const std::string& k, Json v) {
  for (auto& [key, val] : obj_)
    if (key == k) {
      val = std::move(v);
      return *this;
    }
  obj_.emplace_back(k, std::move(v));
  return *this;
}

namespace {
void escape(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}
}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
  auto newline = [&](int d) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<size_t>(indent) * d, ' ');
  };
  switch (kind_) {
    case Kind::Null: out += "null"; break;
    case Kind::Bool: out += b_ ? "true" : "false"; break;
    case Kind::Int: out += std::to_string(i_); break;
    case Kind::Real: {
      if (std::isfinite(d_)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d_);
        out += buf;
      } else {
        out += std::isnan(d_) ? "\"nan\"" : (d_ > 0 ? "\"inf\"" : "\"-inf\"");
      }
      break;
    }
    case Kind::Str: escape(out, s_); break;
    case Kind::Arr: {
      out += '[';
      for (size_t i = 0; i < arr_.size(); ++i) {
        if (i) out += ',';
        newline(depth + 1);
        arr_[i].write(out, indent, depth + 1);
      }
      if (!arr_.empty()) newline(depth);
      out += ']';
      break;
    }
    case Kind::Obj: {
      out += '{';
      for (size_t i = 0; i < obj_.size(); ++i) {
        if (i) out += ',';
        newline(depth + 1);
        escape(out, obj_[i].first);
        out += indent > 0 ? ": " : ":";
        obj_[i].second.write(out, indent, depth + 1);
      }
      if (!obj_.empty()) newline(depth);
      out += '}';
      break;
    }
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  return out;
}

}  // namespace lapgeo
