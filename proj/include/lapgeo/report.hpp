#pragma once
#include <memory>
#include <string>
#include <vector>

namespace lapgeo {

/// Minimal ordered JSON value for reports: keys keep insertion order and
/// floats print with 17 significant digits, so identical runs emit identical
/// bytes.
class Json {
public:
  enum class Kind { Null, Bool, Int, Real, Str, Arr, Obj };

  Json() : kind_(Kind::Null) {}
  Json(bool b) : kind_(Kind::Bool), b_(b) {}
  Json(int v) : kind_(Kind::Int), i_(v) {}
  Json(long long v) : kind_(Kind::Int), i_(v) {}
  Json(double v) : kind_(Kind::Real), d_(v) {}
  Json(const char* s) : kind_(Kind::Str), s_(s) {}
  Json(std::string s) : kind_(Kind::Str), s_(std::move(s)) {}

  static Json array();
  static Json object();

  Json& push(Json v);                       // array append
  Json& set(const std::string& k, Json v);  // object insert (ordered)

  std::string dump(int indent = 0) const;

private:
  Kind kind_;
  bool b_ = false;
  long long i_ = 0;
  double d_ = 0;
  std::string s_;
  std::vector<Json> arr_;
  std::vector<std::pair<std::string, Json>> obj_;
  void write(std::string& out, int indent, int depth) const;
};

}  // namespace lapgeo
