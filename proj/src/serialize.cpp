#include "pcurv/serialize.hpp"

namespace pcurv {
namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw SchemaError("schema error at " + (path.empty() ? "/" : path) + ": " + what);
}

const Json& member(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path + "/" + key, "missing");
  return *it;
}

long long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<long long>();
}

int small_int(const Json& j, const std::string& path) {
  const long long v = integer(j, path);
  if (v < -1'000'000 || v > 1'000'000) schema(path, "integer out of range");
  return static_cast<int>(v);
}

std::vector<int> int_array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(small_int(j[i], path + "/" + std::to_string(i)));
  return out;
}

Fq element(const Json& j, const GaloisField& f, const std::string& path) {
  const long long v = integer(j, path);
  if (v < 0 || v >= f.order()) schema(path, "field element outside [0, q)");
  return Fq::packed(f, static_cast<uint32_t>(v));
}

std::vector<Fq> points_from(const Json& j, const GaloisField& f, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  std::vector<Fq> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(element(j[i], f, path + "/" + std::to_string(i)));
  return out;
}

BundleParams params_from(const Json& j, int p) {
  return {p, small_int(member(j, "", "n"), "/n"), small_int(member(j, "", "d"), "/d"), small_int(member(j, "", "m"), "/m"),
          small_int(member(j, "", "delta"), "/delta")};
}

void put_params(Json& j, const BundleParams& bp) {
  j["n"] = bp.n;
  j["d"] = bp.d;
  j["m"] = bp.m;
  j["delta"] = bp.delta;
}

Json points_json(const std::vector<Fq>& pts) {
  Json a = Json::array();
  for (const Fq& x : pts) a.push_back(x.value());
  return a;
}

template <class F>
auto rethrow_as_schema(F&& f) {
  try {
    return f();
  } catch (const PreconditionError& e) {
    schema("", e.what());
  }
}

const char* kEntryKeys[4] = {"g11", "g12", "g21", "g22"};
const char* kSlopeKeys[4] = {"h11", "h12", "h21", "h22"};

}  // namespace

Json field_to_json(const GaloisField& f) {
  Json j;
  j["p"] = f.characteristic();
  j["k"] = f.degree();
  j["irreducible"] = f.modulus();
  return j;
}

const GaloisField& field_from_json(const Json& j) {
  const long long p = integer(member(j, "", "p"), "/p");
  const long long k = j.contains("k") ? integer(j["k"], "/k") : 1;
  if (p < 2 || p > 1000) schema("/p", "characteristic out of range");
  if (k < 1 || k > 20) schema("/k", "extension degree out of range");
  try {
    if (!j.contains("irreducible")) return GaloisField::get(static_cast<uint32_t>(p), static_cast<uint32_t>(k));
    const std::vector<int> mod = int_array(j["irreducible"], "/irreducible");
    if (static_cast<long long>(mod.size()) != k + 1) schema("/irreducible", "length must be k + 1");
    std::vector<uint32_t> m;
    for (size_t i = 0; i < mod.size(); ++i) {
      if (mod[i] < 0 || mod[i] >= p) schema("/irreducible/" + std::to_string(i), "coefficient outside [0, p)");
      m.push_back(static_cast<uint32_t>(mod[i]));
    }
    return GaloisField::get(static_cast<uint32_t>(p), m);
  } catch (const PreconditionError& e) {
    schema("/p", e.what());
  }
}

Json poly_to_json(const PolyF& a) {
  Json c = Json::array();
  for (int i = 0; i <= a.degree(); ++i) c.push_back(a[i].value());
  return c;
}

PolyF poly_from_json(const Json& j, const GaloisField& f, const std::string& path) {
  if (!j.is_array()) schema(path, "expected a coefficient array");
  std::vector<Fq> c;
  for (size_t i = 0; i < j.size(); ++i) c.push_back(element(j[i], f, path + "/" + std::to_string(i)));
  return PolyF(std::move(c));
}

Json point_to_json(const PointOnLine& a) { return a.is_infinity() ? Json(nullptr) : Json(a.value().value()); }

Json kernel_map_to_json(const KernelMap& s) {
  Json j = field_to_json(s.field());
  j["type"] = "kernel_map";
  put_params(j, s.params());
  j["points"] = points_json(s.points());
  for (int k = 0; k < 4; ++k) j[kEntryKeys[k]] = poly_to_json(s.g(k / 2, k % 2));
  return j;
}

KernelMap kernel_map_from_json(const Json& j) {
  if (!j.is_object()) schema("", "expected an object");
  if (j.contains("type") && j["type"] != "kernel_map" && j["type"] != "deformed_kernel_map")
    schema("/type", "expected kernel_map");
  const GaloisField& f = field_from_json(j);
  const BundleParams bp = params_from(j, static_cast<int>(f.characteristic()));
  std::vector<Fq> pts = points_from(member(j, "", "points"), f, "/points");
  std::array<PolyF, 4> g;
  for (int k = 0; k < 4; ++k) g[k] = poly_from_json(member(j, "", kEntryKeys[k]), f, std::string("/") + kEntryKeys[k]);
  return rethrow_as_schema([&] { return KernelMap(bp, f, std::move(pts), g); });
}

Json class_datum_to_json(const ClassDatum& d) {
  Json j = field_to_json(*d.field);
  j["type"] = "class_datum";
  put_params(j, d.params);
  j["points"] = points_json(d.points);
  j["alpha"] = d.alpha;
  j["beta"] = d.beta;
  j["f"] = {{"num", poly_to_json(d.f.num())}, {"den", poly_to_json(d.f.den())}};
  Json c = Json::array();
  for (const auto& x : d.c) c.push_back(x ? Json(x->value()) : Json(nullptr));
  j["c"] = c;
  return j;
}

// The datum is read as given; its hypotheses are checked by validate().
ClassDatum class_datum_from_json(const Json& j) {
  if (!j.is_object()) schema("", "expected an object");
  if (j.contains("type") && j["type"] != "class_datum") schema("/type", "expected class_datum");
  const GaloisField& f = field_from_json(j);
  ClassDatum d;
  d.field = &f;
  d.params = params_from(j, static_cast<int>(f.characteristic()));
  d.points = points_from(member(j, "", "points"), f, "/points");
  d.alpha = int_array(member(j, "", "alpha"), "/alpha");
  d.beta = j.contains("beta") ? int_array(j["beta"], "/beta") : std::vector<int>(d.alpha.size(), 0);
  const Json& fj = member(j, "", "f");
  const PolyF num = poly_from_json(member(fj, "/f", "num"), f, "/f/num");
  const PolyF den = poly_from_json(member(fj, "/f", "den"), f, "/f/den");
  if (den.is_zero()) schema("/f/den", "denominator is zero");
  d.f = RationalMap(num, den);
  if (j.contains("c")) {
    const Json& c = j["c"];
    if (!c.is_array()) schema("/c", "expected an array");
    for (size_t i = 0; i < c.size(); ++i)
      d.c.push_back(c[i].is_null() ? std::nullopt : std::optional<Fq>(element(c[i], f, "/c/" + std::to_string(i))));
  } else {
    d.c.assign(d.points.size(), std::nullopt);
  }
  return d;
}

Json deformed_to_json(const DeformedKernelMap& s) {
  Json j = kernel_map_to_json(s.body());
  j["type"] = "deformed_kernel_map";
  for (int k = 0; k < 4; ++k) j[kSlopeKeys[k]] = poly_to_json(s.h()[k]);
  return j;
}

DeformedKernelMap deformed_from_json(const Json& j) {
  KernelMap body = kernel_map_from_json(j);
  std::array<PolyF, 4> h;
  for (int k = 0; k < 4; ++k)
    if (j.contains(kSlopeKeys[k])) h[k] = poly_from_json(j[kSlopeKeys[k]], body.field(), std::string("/") + kSlopeKeys[k]);
  return rethrow_as_schema([&] { return DeformedKernelMap(std::move(body), h); });
}

}  // namespace pcurv
