#include "idemsum/manifest.hpp"

#include <fstream>

#include "idemsum/error.hpp"
#include "idemsum/matrix_io.hpp"

namespace idemsum {

namespace fs = std::filesystem;

nlohmann::ordered_json manifest_json(const IdempotentFamily& fam) {
  nlohmann::ordered_json j;
  j["kind"] = fam.kind;
  j["n"] = fam.n;
  j["lambda"] = {fam.lambda.real(), fam.lambda.imag()};
  j["dim"] = fam.dim;
  if (fam.interior)
    j["interior"] = *fam.interior;
  else
    j["interior"] = nullptr;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fam.params) params[k] = v;
  j["params"] = std::move(params);
  j["star_orthogonal"] = fam.star_orthogonal;
  j["sum_relation"] = fam.sum_relation;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (int i = 1; i <= fam.n; ++i) files.push_back("q" + std::to_string(i) + ".txt");
  j["files"] = std::move(files);
  return j;
}

void save_family(const fs::path& dir, const IdempotentFamily& fam, const nlohmann::ordered_json& extra) {
  fs::create_directories(dir);
  for (int i = 0; i < fam.n; ++i)
    save_matrix(dir / ("q" + std::to_string(i + 1) + ".txt"), fam.q[static_cast<std::size_t>(i)]);
  auto j = manifest_json(fam);
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  std::ofstream f(dir / "manifest.json", std::ios::binary);
  if (!f) throw Error(Errc::Parse, "cannot write " + (dir / "manifest.json").string());
  f << j.dump(2) << '\n';
}

IdempotentFamily load_family(const fs::path& path) {
  const fs::path file = fs::is_directory(path) ? path / "manifest.json" : path;
  std::ifstream f(file, std::ios::binary);
  if (!f) throw Error(Errc::Parse, "cannot open manifest " + file.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("manifest: ") + e.what());
  }
  try {
    const fs::path dir = file.parent_path();
    std::vector<CMat> q;
    for (const auto& name : j.at("files")) q.push_back(load_matrix(dir / name.get<std::string>()));
    const cplx lambda(j.at("lambda").at(0).get<double>(), j.at("lambda").at(1).get<double>());
    std::optional<std::vector<Index>> interior;
    if (j.contains("interior") && !j["interior"].is_null()) interior = j["interior"].get<std::vector<Index>>();
    Params params;
    if (j.contains("params"))
      for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
        params.emplace_back(it.key(), it.value().get<std::string>());
    FamilyFlags flags;
    flags.star_orthogonal = j.value("star_orthogonal", false);
    flags.sum_relation = j.value("sum_relation", true);
    flags.validate = false;
    auto fam = make_family(j.at("kind").get<std::string>(), std::move(params), lambda, std::move(q),
                           std::move(interior), flags);
    if (j.contains("n") && j["n"].get<int>() != fam.n)
      throw Error(Errc::Parse, "manifest: n does not match the number of files");
    if (j.contains("dim") && j["dim"].get<Index>() != fam.dim)
      throw Error(Errc::Parse, "manifest: dim does not match the matrices");
    return fam;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("manifest: ") + e.what());
  }
}

}  // namespace idemsum
