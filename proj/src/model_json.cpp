#include "levywh/model_json.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

namespace levywh {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) throw ParameterError(prefix_, prefix_ + " must be an object");
  }

  double num(const char* key) {
    seen_.insert(key);
    const std::string field = prefix_ + "." + key;
    if (!obj_.contains(key)) throw ParameterError(field, "missing field " + field);
    const json& v = obj_.at(key);
    if (!v.is_number()) throw ParameterError(field, field + " must be a number");
    return v.get<double>();
  }

  const json& array(const char* key) {
    seen_.insert(key);
    const std::string field = prefix_ + "." + key;
    if (!obj_.contains(key)) throw ParameterError(field, "missing field " + field);
    const json& v = obj_.at(key);
    if (!v.is_array()) throw ParameterError(field, field + " must be an array");
    return v;
  }

  void finish() const {
    for (const auto& [k, v] : obj_.items())
      if (!seen_.count(k)) throw ParameterError(prefix_ + "." + k, "unknown field " + prefix_ + "." + k);
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

std::vector<HejdTerm> read_terms(const json& arr, const std::string& prefix) {
  std::vector<HejdTerm> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Reader r(arr[i], prefix + "[" + std::to_string(i) + "]");
    HejdTerm t;
    t.p = r.num("p");
    t.alpha = r.num("alpha");
    r.finish();
    out.push_back(t);
  }
  return out;
}

json write_terms(const std::vector<HejdTerm>& v) {
  json a = json::array();
  for (const auto& t : v) a.push_back({{"p", t.p}, {"alpha", t.alpha}});
  return a;
}

}  // namespace

LevyModel model_from_json(const json& j) {
  if (!j.is_object()) throw ParameterError("model", "model must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "family" && k != "params") throw ParameterError(k, "unknown field " + k);
  if (!j.contains("family") || !j.at("family").is_string())
    throw ParameterError("family", "family must be a string");
  if (!j.contains("params")) throw ParameterError("params", "missing field params");
  const std::string fam = j.at("family").get<std::string>();
  Reader r(j.at("params"), "params");
  LevyModel::Params p;
  if (fam == "bm") {
    BrownianDrift b;
    b.sigma2 = r.num("sigma2");
    b.mu = r.num("mu");
    p = b;
  } else if (fam == "merton") {
    Merton m;
    m.sigma = r.num("sigma");
    m.lambda = r.num("lambda");
    m.m = r.num("m");
    m.s = r.num("s");
    m.mu = r.num("mu");
    p = m;
  } else if (fam == "hejd") {
    Hejd h;
    h.sigma = r.num("sigma");
    h.mu = r.num("mu");
    h.pos_terms = read_terms(r.array("pos_terms"), "params.pos_terms");
    h.neg_terms = read_terms(r.array("neg_terms"), "params.neg_terms");
    p = h;
  } else if (fam == "vg") {
    VarianceGamma v;
    v.c = r.num("c");
    v.alpha = r.num("alpha");
    v.beta = r.num("beta");
    v.mu = r.num("mu");
    p = v;
  } else if (fam == "nts") {
    NormalTemperedStable n;
    n.delta = r.num("delta");
    n.nu = r.num("nu");
    n.alpha = r.num("alpha");
    n.beta = r.num("beta");
    n.mu = r.num("mu");
    p = n;
  } else if (fam == "kobol") {
    KoBoL k;
    k.nu_plus = r.num("nu_plus");
    k.nu_minus = r.num("nu_minus");
    k.c_plus = r.num("c_plus");
    k.c_minus = r.num("c_minus");
    k.lambda_minus = r.num("lambda_minus");
    k.lambda_plus = r.num("lambda_plus");
    k.mu = r.num("mu");
    p = k;
  } else if (fam == "meixner") {
    Meixner m;
    m.delta = r.num("delta");
    m.a = r.num("a");
    m.b = r.num("b");
    m.mu = r.num("mu");
    p = m;
  } else {
    throw ParameterError("family", "unknown family '" + fam + "'");
  }
  r.finish();
  try {
    return LevyModel(std::move(p));
  } catch (const ParameterError& e) {
    throw ParameterError("params." + e.field(), e.what());
  }
}

json model_to_json(const LevyModel& m) {
  json params;
  std::string fam;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BrownianDrift>) {
          fam = "bm";
          params = {{"sigma2", v.sigma2}, {"mu", v.mu}};
        } else if constexpr (std::is_same_v<T, Merton>) {
          fam = "merton";
          params = {{"sigma", v.sigma}, {"lambda", v.lambda}, {"m", v.m}, {"s", v.s}, {"mu", v.mu}};
        } else if constexpr (std::is_same_v<T, Hejd>) {
          fam = "hejd";
          params = {{"sigma", v.sigma},
                    {"mu", v.mu},
                    {"pos_terms", write_terms(v.pos_terms)},
                    {"neg_terms", write_terms(v.neg_terms)}};
        } else if constexpr (std::is_same_v<T, VarianceGamma>) {
          fam = "vg";
          params = {{"c", v.c}, {"alpha", v.alpha}, {"beta", v.beta}, {"mu", v.mu}};
        } else if constexpr (std::is_same_v<T, NormalTemperedStable>) {
          fam = "nts";
          params = {{"delta", v.delta}, {"nu", v.nu}, {"alpha", v.alpha}, {"beta", v.beta}, {"mu", v.mu}};
        } else if constexpr (std::is_same_v<T, KoBoL>) {
          fam = "kobol";
          params = {{"nu_plus", v.nu_plus},       {"nu_minus", v.nu_minus},
                    {"c_plus", v.c_plus},         {"c_minus", v.c_minus},
                    {"lambda_minus", v.lambda_minus}, {"lambda_plus", v.lambda_plus},
                    {"mu", v.mu}};
        } else {
          fam = "meixner";
          params = {{"delta", v.delta}, {"a", v.a}, {"b", v.b}, {"mu", v.mu}};
        }
      },
      m.params());
  return {{"family", fam}, {"params", params}};
}

LevyModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("model", "cannot read model file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError("model", std::string("model file is not valid JSON: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace levywh
